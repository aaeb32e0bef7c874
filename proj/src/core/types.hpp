#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/common.hpp"

namespace foapinn {

struct PhysicalConstants {
  double c0 = 343.0;   // sound speed, m/s
  double rho0 = 1.2;   // air density, kg/m^3

  void validate() const {
    require(std::isfinite(c0) && c0 > 0.0, "c0 must be positive");
    require(std::isfinite(rho0) && rho0 > 0.0, "rho0 must be positive");
  }
};

struct Position {
  double x = 0.0, y = 0.0, z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Position operator-(const Position& a, const Position& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline double norm(const Position& p) {
  return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}

// Axis-aligned cuboid Omega plus the reconstruction time horizon T.
struct TargetRegion {
  Position min_corner;
  Position max_corner;
  double time_horizon = 0.0;  // seconds

  void validate() const {
    require(min_corner.finite() && max_corner.finite(), "region corners must be finite");
    require(min_corner.x < max_corner.x && min_corner.y < max_corner.y &&
                min_corner.z < max_corner.z,
            "region min_corner must be strictly below max_corner");
    require(std::isfinite(time_horizon) && time_horizon > 0.0,
            "time horizon must be positive");
  }

  bool contains(const Position& p) const {
    return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y &&
           p.y <= max_corner.y && p.z >= min_corner.z && p.z <= max_corner.z;
  }

  std::array<double, 3> edges() const {
    return {max_corner.x - min_corner.x, max_corner.y - min_corner.y,
            max_corner.z - min_corner.z};
  }
};

// One first-order Ambisonic impulse response, channels (W, X, Y, Z).
struct FoaRir {
  Position position;
  double sample_rate = 0.0;
  std::vector<float> samples;  // 4 x L, channel-major

  std::int64_t length() const {
    return static_cast<std::int64_t>(samples.size() / 4);
  }
  float* channel(int c) { return samples.data() + static_cast<std::size_t>(c) * length(); }
  const float* channel(int c) const {
    return samples.data() + static_cast<std::size_t>(c) * length();
  }

  void validate() const {
    require(sample_rate > 0.0, "sample_rate must be positive");
    require(!samples.empty() && samples.size() % 4 == 0, "samples must be 4 x L, L > 0");
    for (float s : samples) require(std::isfinite(s), "samples must be finite");
  }
};

struct Split {
  std::vector<std::uint32_t> train, validation, evaluation;
};

// Grid enumeration over the region, row-major with x fastest.
// Point count per axis is floor(edge / spacing) + 1 (single point when the
// spacing exceeds the edge), so endpoints land on both corners whenever the
// spacing divides the edge.
std::vector<Position> make_grid(const TargetRegion& region, double spacing);

// Per-axis point counts for the same grid (nx, ny, nz).
std::array<std::int64_t, 3> grid_shape(const TargetRegion& region, double spacing);

// Uniform sampling without replacement: n_train train indices, n_val
// validation indices, the complement becomes the evaluation set. All three
// lists are sorted ascending. Deterministic per seed.
Split split_dataset(std::uint32_t n_total, std::uint32_t n_train, std::uint32_t n_val,
                    std::uint64_t seed);

}  // namespace foapinn
