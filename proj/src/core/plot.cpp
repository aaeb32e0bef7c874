#include "core/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace foapinn {

std::array<std::uint8_t, 3> diverging_rgb(double value, double vmax) {
  double u = vmax > 0.0 ? value / vmax : 0.0;
  u = std::clamp(u, -1.0, 1.0);
  const auto level = [](double x) {
    return static_cast<std::uint8_t>(std::lround(255.0 * x));
  };
  if (u >= 0.0) return {255, level(1.0 - u), level(1.0 - u)};
  return {level(1.0 + u), level(1.0 + u), 255};
}

namespace {
void write_ppm(const std::string& path, const Eigen::MatrixXd& values, double vmax) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  const Eigen::Index nx = values.rows(), ny = values.cols();
  out << "P6\n" << nx << ' ' << ny << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<std::size_t>(nx) * 3);
  for (Eigen::Index iy = ny - 1; iy >= 0; --iy) {  // top row = max y
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      const auto rgb = diverging_rgb(values(ix, iy), vmax);
      row[static_cast<std::size_t>(ix) * 3 + 0] = rgb[0];
      row[static_cast<std::size_t>(ix) * 3 + 1] = rgb[1];
      row[static_cast<std::size_t>(ix) * 3 + 2] = rgb[2];
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("short write to " + path);
}
}  // namespace

SliceInfo plot_slice(const Checkpoint& checkpoint, const Dataset& dataset, double height_m,
                     double time_s, const std::string& out_dir, const std::string& tag,
                     ThreadPool& pool) {
  dataset.validate();
  const TargetRegion& region = dataset.scene.region;
  require(height_m >= region.min_corner.z && height_m <= region.max_corner.z,
          "slice height outside the target region");
  require(time_s >= 0.0 && time_s <= dataset.scene.duration,
          "slice time outside the rendered window");

  const auto shape = grid_shape(region, dataset.grid_spacing);
  const std::int64_t nx = shape[0], ny = shape[1], nz = shape[2];
  std::int64_t iz = std::llround((height_m - region.min_corner.z) / dataset.grid_spacing);
  iz = std::clamp<std::int64_t>(iz, 0, nz - 1);
  const double plane_z = region.min_corner.z + static_cast<double>(iz) * dataset.grid_spacing;

  std::int64_t sample = std::llround(time_s * dataset.sample_rate());
  sample = std::clamp<std::int64_t>(sample, 0, dataset.length() - 1);
  const double snapped_t = static_cast<double>(sample) / dataset.sample_rate();

  Eigen::MatrixXd truth(nx, ny), pred(nx, ny);
  const Predictor predictor = make_checkpoint_predictor(checkpoint, dataset);
  const double ref_scale = dataset.amplitude_scale;

  const auto chunks = make_chunks(static_cast<std::size_t>(ny), 4);
  pool.run_chunks(chunks.size(), [&](std::size_t c) {
    Eigen::Matrix4Xd coords(4, nx);
    Eigen::Matrix4Xd out(4, nx);
    for (std::size_t iy = chunks[c].first; iy < chunks[c].second; ++iy) {
      for (std::int64_t ix = 0; ix < nx; ++ix) {
        const std::int64_t d = (iz * ny + static_cast<std::int64_t>(iy)) * nx + ix;
        truth(ix, static_cast<Eigen::Index>(iy)) =
            static_cast<double>(dataset.channel(d, 0)[sample]) * ref_scale;
        const Position& p = dataset.positions[static_cast<std::size_t>(d)];
        coords.col(ix) << p.x, p.y, p.z, snapped_t;
      }
      predictor(coords, out);
      for (std::int64_t ix = 0; ix < nx; ++ix)
        pred(ix, static_cast<Eigen::Index>(iy)) = out(0, ix);
    }
  });

  double vmax = std::max(truth.cwiseAbs().maxCoeff(), pred.cwiseAbs().maxCoeff());
  if (vmax == 0.0) vmax = 1.0;

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path base(out_dir);
  SliceInfo info;
  info.plane_z = plane_z;
  info.sample_index = sample;
  info.vmax = vmax;
  info.truth_ppm = (base / (tag + "_truth.ppm")).string();
  info.pred_ppm = (base / (tag + "_pred.ppm")).string();
  info.csv = (base / (tag + ".csv")).string();

  write_ppm(info.truth_ppm, truth, vmax);
  write_ppm(info.pred_ppm, pred, vmax);

  std::ofstream csv(info.csv);
  if (!csv) throw IoError("cannot write " + info.csv);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "# slice plane_z=%.17g time_s=%.17g sample_index=%lld vmax=%.17g\n",
                plane_z, snapped_t, static_cast<long long>(sample), vmax);
  csv << buf << "x,y,truth,pred\n";
  for (Eigen::Index iy = 0; iy < ny; ++iy) {
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      const double x = region.min_corner.x + static_cast<double>(ix) * dataset.grid_spacing;
      const double y = region.min_corner.y + static_cast<double>(iy) * dataset.grid_spacing;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", x, y, truth(ix, iy),
                    pred(ix, iy));
      csv << buf;
    }
  }
  if (!csv) throw IoError("short write to " + info.csv);
  return info;
}

}  // namespace foapinn
