#include "core/config.hpp"

#include <json.hpp>

namespace foapinn {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config JSON: ") + e.what());
  }
}

Position position_from(const json& j, const char* what) {
  require(j.is_array() && j.size() == 3, std::string(what) + " must be a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <std::size_t N>
std::array<double, N> array_from(const json& j, const char* what) {
  require(j.is_array() && j.size() == N,
          std::string(what) + " must have " + std::to_string(N) + " elements");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<double>();
  return out;
}

}  // namespace

SimulationSpec parse_simulation_spec(const std::string& json_text) {
  const json j = parse_text(json_text);
  SimulationSpec spec;
  try {
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();

    SceneSampling& s = spec.sampling;
    if (j.contains("sampling")) {
      const json& sj = j.at("sampling");
      if (sj.contains("floor_range")) s.floor_range = array_from<2>(sj.at("floor_range"), "floor_range");
      if (sj.contains("height_range"))
        s.height_range = array_from<2>(sj.at("height_range"), "height_range");
      if (sj.contains("absorption_range"))
        s.absorption_range = array_from<2>(sj.at("absorption_range"), "absorption_range");
      if (sj.contains("region_edge")) s.region_edge = sj.at("region_edge").get<double>();
      if (sj.contains("wall_margin")) s.wall_margin = sj.at("wall_margin").get<double>();
      if (sj.contains("source_region_clearance"))
        s.source_region_clearance = sj.at("source_region_clearance").get<double>();
    }
    s.sample_rate = j.value("sample_rate", s.sample_rate);
    s.duration = j.value("duration", s.duration);
    s.max_reflection_order = j.value("max_reflection_order", s.max_reflection_order);

    if (j.contains("room")) {
      Scene scene;
      scene.room_dims = array_from<3>(j.at("room"), "room");
      scene.source = position_from(j.at("source"), "source");
      scene.region.min_corner = position_from(j.at("region_min"), "region_min");
      scene.region.max_corner = position_from(j.at("region_max"), "region_max");
      scene.wall_absorption = array_from<6>(j.at("absorption"), "absorption");
      scene.sample_rate = s.sample_rate;
      scene.duration = s.duration;
      scene.region.time_horizon = s.duration;
      scene.max_reflection_order = s.max_reflection_order;
      spec.explicit_scene = scene;
    }
    require(spec.seed.has_value() || spec.explicit_scene.has_value(),
            "simulation needs either a scene seed or an explicit room");

    spec.grid_spacing = j.value("grid_spacing", spec.grid_spacing);
    if (j.contains("split")) {
      const json& sp = j.at("split");
      spec.n_train = sp.value("train", spec.n_train);
      spec.n_val = sp.value("val", spec.n_val);
      spec.split_seed = sp.value("seed", spec.split_seed);
    }
    if (j.contains("constants")) {
      spec.constants.c0 = j.at("constants").value("c0", spec.constants.c0);
      spec.constants.rho0 = j.at("constants").value("rho0", spec.constants.rho0);
    }
    spec.threads = j.value("threads", spec.threads);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid simulation config: ") + e.what());
  }
  spec.constants.validate();
  return spec;
}

Scene realize_scene(const SimulationSpec& spec) {
  if (spec.explicit_scene) {
    Scene scene = *spec.explicit_scene;
    scene.validate();
    return scene;
  }
  return sample_random_scene(*spec.seed, spec.sampling);
}

Dataset run_simulation(const SimulationSpec& spec, ThreadPool& pool) {
  const Scene scene = realize_scene(spec);
  return simulate_dataset(scene, spec.grid_spacing, spec.n_train, spec.n_val,
                          spec.split_seed, spec.constants, pool,
                          spec.seed.value_or(0));
}

TrainSpec parse_train_spec(const std::string& json_text) {
  const json j = parse_text(json_text);
  TrainSpec spec;
  TrainConfig& c = spec.config;
  try {
    c.prior_mode = prior_mode_from_name(j.value("prior_mode", "foa"));
    c.iterations = j.value("iterations", c.iterations);
    c.times_per_iter = j.value("times_per_iter", c.times_per_iter);
    c.collocation_per_iter = j.value("collocation_per_iter", c.collocation_per_iter);
    c.lr_max = j.value("lr_max", c.lr_max);
    c.lr_min = j.value("lr_min", c.lr_min);
    c.adam_beta1 = j.value("adam_beta1", c.adam_beta1);
    c.adam_beta2 = j.value("adam_beta2", c.adam_beta2);
    c.adam_eps = j.value("adam_eps", c.adam_eps);
    c.seed = j.value("seed", c.seed);
    c.validation_interval = j.value("validation_interval", c.validation_interval);
    if (j.contains("network")) {
      const json& n = j.at("network");
      c.network.hidden_layers = n.value("hidden_layers", c.network.hidden_layers);
      c.network.width = n.value("width", c.network.width);
      c.network.omega0 = n.value("omega0", c.network.omega0);
    }
    spec.threads = j.value("threads", spec.threads);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid train config: ") + e.what());
  }
  c.validate();
  return spec;
}

}  // namespace foapinn
