#pragma once

#include <optional>
#include <string>

#include "core/dataset.hpp"
#include "core/trainer.hpp"

namespace foapinn {

// Scene/simulation request parsed from JSON. Either a sampling seed
// (randomized geometry) or an explicit scene must be present; every other
// field has the experiment defaults baked in.
struct SimulationSpec {
  std::optional<std::uint64_t> seed;
  SceneSampling sampling;
  std::optional<Scene> explicit_scene;
  double grid_spacing = 0.05;
  std::uint32_t n_train = 250;
  std::uint32_t n_val = 50;
  std::uint64_t split_seed = 0;
  PhysicalConstants constants;
  unsigned threads = 0;
};

SimulationSpec parse_simulation_spec(const std::string& json_text);
Scene realize_scene(const SimulationSpec& spec);
Dataset run_simulation(const SimulationSpec& spec, ThreadPool& pool);

struct TrainSpec {
  TrainConfig config;
  unsigned threads = 0;
};

TrainSpec parse_train_spec(const std::string& json_text);

}  // namespace foapinn
