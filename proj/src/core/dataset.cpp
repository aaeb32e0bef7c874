#include "core/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "container format assumes a little-endian host");

namespace foapinn {

using nlohmann::json;

FoaRir Dataset::rir_at(std::int64_t d) const {
  FoaRir rir;
  rir.position = positions[static_cast<std::size_t>(d)];
  rir.sample_rate = scene.sample_rate;
  rir.samples.assign(channel(d, 0), channel(d, 0) + 4 * length_);
  return rir;
}

void Dataset::validate() const {
  scene.validate();
  constants.validate();
  require(grid_spacing > 0.0, "grid spacing must be positive");
  require(length_ > 0, "dataset must contain samples");
  const std::size_t d = positions.size();
  require(d > 0, "dataset must contain positions");
  require(tensor.size() == d * 4 * static_cast<std::size_t>(length_),
          "tensor size disagrees with positions and length");
  require(std::isfinite(amplitude_scale) && amplitude_scale > 0.0,
          "amplitude scale must be positive");

  std::vector<bool> seen(d, false);
  auto mark = [&](const std::vector<std::uint32_t>& idx) {
    for (std::uint32_t i : idx) {
      require(i < d, "split index out of range");
      require(!seen[i], "split lists must be disjoint");
      seen[i] = true;
    }
  };
  mark(split.train);
  mark(split.validation);
  mark(split.evaluation);
  require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }),
          "split lists must cover all grid positions");
  for (const Position& p : positions)
    require(scene.region.contains(p), "grid position outside the target region");
}

Dataset simulate_dataset(const Scene& scene, double grid_spacing, std::uint32_t n_train,
                         std::uint32_t n_val, std::uint64_t split_seed,
                         const PhysicalConstants& constants, ThreadPool& pool,
                         std::uint64_t scene_seed) {
  scene.validate();
  Dataset ds;
  ds.scene = scene;
  ds.constants = constants;
  ds.grid_spacing = grid_spacing;
  ds.scene_seed = scene_seed;
  ds.positions = make_grid(scene.region, grid_spacing);
  ds.length_ = scene.num_samples();
  ds.split = split_dataset(static_cast<std::uint32_t>(ds.positions.size()), n_train,
                           n_val, split_seed);

  const std::vector<ImageSource> images = enumerate_images(scene);
  const std::size_t d_total = ds.positions.size();
  const std::size_t stride = 4 * static_cast<std::size_t>(ds.length_);
  std::vector<float> raw(d_total * stride);

  const auto chunks = make_chunks(d_total, 8);
  pool.run_chunks(chunks.size(), [&](std::size_t c) {
    for (std::size_t d = chunks[c].first; d < chunks[c].second; ++d) {
      FoaRir rir = render_foa_rir(scene, images, ds.positions[d], constants);
      std::copy(rir.samples.begin(), rir.samples.end(), raw.begin() + d * stride);
    }
  });

  // Normalize so the train split has unit peak |W|.
  double peak = 0.0;
  for (std::uint32_t d : ds.split.train) {
    const float* w = raw.data() + d * stride;
    for (std::int64_t l = 0; l < ds.length_; ++l)
      peak = std::max(peak, std::abs(static_cast<double>(w[l])));
  }
  require(peak > 0.0, "train split has an all-zero W channel; cannot normalize");
  ds.amplitude_scale = peak;
  ds.tensor.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    ds.tensor[i] = static_cast<float>(static_cast<double>(raw[i]) / peak);

  ds.validate();
  return ds;
}

namespace {
constexpr const char* kFormatName = "foapinn-dataset";
constexpr int kFormatVersion = 1;

json position_to_json(const Position& p) { return json::array({p.x, p.y, p.z}); }

Position position_from_json(const json& j) {
  require(j.is_array() && j.size() == 3, "expected a 3-element position");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
}  // namespace

void write_dataset(const Dataset& dataset, const std::string& dir) {
  dataset.validate();
  std::filesystem::create_directories(dir);

  json scene_j{
      {"room_dims", dataset.scene.room_dims},
      {"source", position_to_json(dataset.scene.source)},
      {"region_min", position_to_json(dataset.scene.region.min_corner)},
      {"region_max", position_to_json(dataset.scene.region.max_corner)},
      {"time_horizon", dataset.scene.region.time_horizon},
      {"wall_absorption", dataset.scene.wall_absorption},
      {"max_reflection_order", dataset.scene.max_reflection_order},
      {"sample_rate", dataset.scene.sample_rate},
      {"duration", dataset.scene.duration},
  };
  json manifest{
      {"format", kFormatName},
      {"version", kFormatVersion},
      {"scene_seed", dataset.scene_seed},
      {"scene", scene_j},
      {"constants", {{"c0", dataset.constants.c0}, {"rho0", dataset.constants.rho0}}},
      {"grid_spacing", dataset.grid_spacing},
      {"positions", dataset.num_positions()},
      {"samples_per_channel", dataset.length()},
      {"amplitude_scale", dataset.amplitude_scale},
      {"split",
       {{"train", dataset.split.train},
        {"validation", dataset.split.validation},
        {"evaluation", dataset.split.evaluation}}},
  };

  const std::filesystem::path base(dir);
  {
    std::ofstream out(base / "manifest.json");
    if (!out) throw IoError("cannot write " + (base / "manifest.json").string());
    out << manifest.dump(2) << '\n';
  }
  {
    std::ofstream out(base / "rirs.f32le", std::ios::binary);
    if (!out) throw IoError("cannot write " + (base / "rirs.f32le").string());
    out.write(reinterpret_cast<const char*>(dataset.tensor.data()),
              static_cast<std::streamsize>(dataset.tensor.size() * sizeof(float)));
    if (!out) throw IoError("short write to rirs.f32le");
  }
}

Dataset read_dataset(const std::string& dir) {
  const std::filesystem::path base(dir);
  std::ifstream in(base / "manifest.json");
  if (!in) throw IoError("cannot open " + (base / "manifest.json").string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }

  try {
    if (manifest.value("format", "") != kFormatName)
      throw IoError("manifest format magic mismatch");
    if (manifest.value("version", -1) != kFormatVersion)
      throw IoError("unsupported container version");

    Dataset ds;
    const json& scene_j = manifest.at("scene");
    ds.scene.room_dims = scene_j.at("room_dims").get<std::array<double, 3>>();
    ds.scene.source = position_from_json(scene_j.at("source"));
    ds.scene.region.min_corner = position_from_json(scene_j.at("region_min"));
    ds.scene.region.max_corner = position_from_json(scene_j.at("region_max"));
    ds.scene.region.time_horizon = scene_j.at("time_horizon").get<double>();
    ds.scene.wall_absorption = scene_j.at("wall_absorption").get<std::array<double, 6>>();
    ds.scene.max_reflection_order = scene_j.at("max_reflection_order").get<int>();
    ds.scene.sample_rate = scene_j.at("sample_rate").get<double>();
    ds.scene.duration = scene_j.at("duration").get<double>();
    ds.scene_seed = manifest.value("scene_seed", 0ULL);
    ds.constants.c0 = manifest.at("constants").at("c0").get<double>();
    ds.constants.rho0 = manifest.at("constants").at("rho0").get<double>();
    ds.grid_spacing = manifest.at("grid_spacing").get<double>();
    ds.length_ = manifest.at("samples_per_channel").get<std::int64_t>();
    ds.amplitude_scale = manifest.at("amplitude_scale").get<double>();
    ds.split.train = manifest.at("split").at("train").get<std::vector<std::uint32_t>>();
    ds.split.validation =
        manifest.at("split").at("validation").get<std::vector<std::uint32_t>>();
    ds.split.evaluation =
        manifest.at("split").at("evaluation").get<std::vector<std::uint32_t>>();

    ds.positions = make_grid(ds.scene.region, ds.grid_spacing);
    const auto declared = manifest.at("positions").get<std::int64_t>();
    if (declared != ds.num_positions())
      throw IoError("manifest position count disagrees with the grid");
    if (ds.length_ <= 0) throw IoError("manifest declares a non-positive length");

    const std::size_t expected_bytes =
        ds.positions.size() * 4 * static_cast<std::size_t>(ds.length_) * sizeof(float);
    const auto tensor_path = base / "rirs.f32le";
    std::error_code ec;
    const auto actual_bytes = std::filesystem::file_size(tensor_path, ec);
    if (ec) throw IoError("cannot stat " + tensor_path.string());
    if (actual_bytes != expected_bytes)
      throw IoError("tensor size disagrees with the manifest shape");

    std::ifstream tin(tensor_path, std::ios::binary);
    if (!tin) throw IoError("cannot open " + tensor_path.string());
    ds.tensor.resize(expected_bytes / sizeof(float));
    tin.read(reinterpret_cast<char*>(ds.tensor.data()),
             static_cast<std::streamsize>(expected_bytes));
    if (tin.gcount() != static_cast<std::streamsize>(expected_bytes))
      throw IoError("short read from rirs.f32le");

    ds.validate();
    return ds;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace foapinn
