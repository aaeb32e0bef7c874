#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/threading.hpp"
#include "core/types.hpp"

namespace foapinn {

// Shoebox room with one monopole source and a cuboid target region.
struct Scene {
  std::array<double, 3> room_dims{};     // (Lx, Ly, Lz) meters, walls at 0 and L
  Position source;
  TargetRegion region;
  std::array<double, 6> wall_absorption{};  // x0, x1, y0, y1, z0, z1
  int max_reflection_order = -1;            // -1 resolves from the duration
  double sample_rate = 8000.0;
  double duration = 0.1;

  void validate() const;
  std::int64_t num_samples() const;
  // Reflection order covering every image whose arrival can land inside the
  // rendered window (longest in-window path plus the kernel tail).
  int resolved_max_order() const;
};

struct ImageSource {
  Position position;   // mirrored source, absolute coordinates
  double amplitude;    // product of per-bounce reflection coefficients
  int order;           // total wall bounces
};

// All image sources with total reflection order <= scene's resolved order.
// Reflection coefficient per wall is sqrt(1 - absorption).
std::vector<ImageSource> enumerate_images(const Scene& scene);

// Sums windowed-sinc arrivals into the four FOA channels under SN3D:
// W gets g*h(t - d/c0), (X,Y,Z) get the direction cosines (microphone toward
// image) times the same signal, with g = amplitude / (4 pi d).
FoaRir render_foa_rir(const Scene& scene, const std::vector<ImageSource>& images,
                      const Position& mic, const PhysicalConstants& constants);
FoaRir render_foa_rir(const Scene& scene, const Position& mic,
                      const PhysicalConstants& constants);

// Fractional-delay kernel: Hann-windowed sinc, 81 taps, unit peak.
// Exposed so tests can build kernel-summed oracles.
constexpr int kFracDelayHalfTaps = 40;
double frac_delay_kernel(double t_samples);

// Knobs for random scene generation. The floor ranges and per-wall
// absorption range are sampling defaults recorded in the experiment config;
// the wall margin is the source/region exclusion zone near walls.
struct SceneSampling {
  std::array<double, 2> floor_range{5.0, 8.0};    // Lx, Ly ~ U(range), meters
  std::array<double, 2> height_range{2.5, 4.0};   // Lz ~ U(range)
  std::array<double, 2> absorption_range{0.2, 0.6};
  double region_edge = 1.0;                       // cuboid side, meters
  double wall_margin = 0.5;
  double source_region_clearance = 0.25;
  double sample_rate = 8000.0;
  double duration = 0.1;
  int max_reflection_order = -1;
};

Scene sample_random_scene(std::uint64_t seed, const SceneSampling& sampling);

}  // namespace foapinn
