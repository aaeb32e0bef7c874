#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/ism.hpp"
#include "core/types.hpp"

namespace foapinn {

// Grid dataset of FOA RIRs for one scene. Samples are stored normalized so
// that max |W| over the train split is 1; amplitude_scale restores original
// units (original = stored * amplitude_scale).
struct Dataset {
  Scene scene;
  PhysicalConstants constants;
  double grid_spacing = 0.0;
  std::uint64_t scene_seed = 0;

  std::vector<Position> positions;  // grid order, x fastest
  std::int64_t length_ = 0;         // L, samples per channel
  std::vector<float> tensor;        // [D, 4, L] row-major
  Split split;
  double amplitude_scale = 1.0;

  std::int64_t num_positions() const { return static_cast<std::int64_t>(positions.size()); }
  std::int64_t length() const { return length_; }
  double sample_rate() const { return scene.sample_rate; }

  const float* channel(std::int64_t d, int c) const {
    return tensor.data() + (static_cast<std::size_t>(d) * 4 + c) * length_;
  }
  FoaRir rir_at(std::int64_t d) const;  // in stored (normalized) units

  void validate() const;
};

// Renders the full grid for a scene and assembles the normalized container.
Dataset simulate_dataset(const Scene& scene, double grid_spacing, std::uint32_t n_train,
                         std::uint32_t n_val, std::uint64_t split_seed,
                         const PhysicalConstants& constants, ThreadPool& pool,
                         std::uint64_t scene_seed = 0);

// Container format: <dir>/manifest.json + <dir>/rirs.f32le (little-endian
// float32, [D, 4, L] row-major). Round-trips are bit-exact.
void write_dataset(const Dataset& dataset, const std::string& dir);
Dataset read_dataset(const std::string& dir);

}  // namespace foapinn
