#include "core/ism.hpp"

#include <algorithm>
#include <cmath>

namespace foapinn {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateDistance = 1e-3;  // meters

// Mirror position along one axis for lattice index a: even a keeps the
// source offset, odd a reflects it. Covers both wall reflections.
inline double mirror_coord(int a, double source, double wall) {
  return static_cast<double>(a) * wall + ((a % 2 == 0) ? source : wall - source);
}

// Bounce counts for lattice index a: (hits on the 0-wall, hits on the L-wall).
inline std::pair<int, int> bounce_counts(int a) {
  // a = 2n - q with q in {0,1}: wall0 hits |n - q|, wall1 hits |n|.
  int q = ((a % 2) + 2) % 2;
  int n = (a + q) / 2;
  return {std::abs(n - q), std::abs(n)};
}
}  // namespace

void Scene::validate() const {
  for (double d : room_dims)
    require(std::isfinite(d) && d > 0.0, "room dimensions must be positive");
  require(source.finite(), "source position must be finite");
  for (int a = 0; a < 3; ++a)
    require(source[a] > 0.0 && source[a] < room_dims[a], "source must lie inside the room");
  region.validate();
  for (int a = 0; a < 3; ++a) {
    require(region.min_corner[a] > 0.0 && region.max_corner[a] < room_dims[a],
            "target region must lie strictly inside the room");
  }
  require(!region.contains(source), "source must lie outside the target region");
  for (double alpha : wall_absorption)
    require(alpha >= 0.0 && alpha < 1.0, "wall absorption must be in [0, 1)");
  require(std::isfinite(sample_rate) && sample_rate > 0.0, "sample_rate must be positive");
  require(std::isfinite(duration) && duration > 0.0, "duration must be positive");
}

std::int64_t Scene::num_samples() const {
  return std::llround(duration * sample_rate);
}

int Scene::resolved_max_order() const {
  if (max_reflection_order >= 0) return max_reflection_order;
  const PhysicalConstants constants;  // order bound only needs a sound speed
  const double horizon =
      duration + static_cast<double>(kFracDelayHalfTaps + 2) / sample_rate;
  const double d_max = constants.c0 * horizon;
  int order = 0;
  for (double dim : room_dims)
    order += static_cast<int>(std::ceil(d_max / dim)) + 2;
  return order;
}

std::vector<ImageSource> enumerate_images(const Scene& scene) {
  scene.validate();
  const int max_order = scene.resolved_max_order();
  std::vector<ImageSource> images;

  std::array<double, 6> beta{};
  for (int w = 0; w < 6; ++w) beta[w] = std::sqrt(1.0 - scene.wall_absorption[w]);

  for (int ax = -max_order; ax <= max_order; ++ax) {
    const int rem_x = max_order - std::abs(ax);
    for (int ay = -rem_x; ay <= rem_x; ++ay) {
      const int rem_y = rem_x - std::abs(ay);
      for (int az = -rem_y; az <= rem_y; ++az) {
        const std::array<int, 3> lattice{ax, ay, az};
        ImageSource img;
        img.order = std::abs(ax) + std::abs(ay) + std::abs(az);
        img.amplitude = 1.0;
        double coords[3];
        for (int axis = 0; axis < 3; ++axis) {
          coords[axis] =
              mirror_coord(lattice[axis], scene.source[axis], scene.room_dims[axis]);
          auto [hits0, hits1] = bounce_counts(lattice[axis]);
          img.amplitude *= std::pow(beta[2 * axis], hits0) * std::pow(beta[2 * axis + 1], hits1);
        }
        img.position = {coords[0], coords[1], coords[2]};
        images.push_back(img);
      }
    }
  }
  return images;
}

double frac_delay_kernel(double t) {
  const double half = kFracDelayHalfTaps + 0.5;
  if (std::abs(t) >= half) return 0.0;
  const double window = 0.5 * (1.0 + std::cos(kPi * t / half));
  if (t == 0.0) return window;
  return window * std::sin(kPi * t) / (kPi * t);
}

FoaRir render_foa_rir(const Scene& scene, const std::vector<ImageSource>& images,
                      const Position& mic, const PhysicalConstants& constants) {
  scene.validate();
  constants.validate();
  require(mic.finite() && scene.region.contains(mic),
          "microphone must lie inside the target region");

  const std::int64_t length = scene.num_samples();
  require(length > 0, "duration too short for one sample");
  std::vector<double> acc(4 * static_cast<std::size_t>(length), 0.0);

  for (const ImageSource& img : images) {
    const Position delta = img.position - mic;
    const double dist = norm(delta);
    if (dist < kDegenerateDistance)
      throw ValidationError("microphone coincides with an image source");

    const double delay = dist / constants.c0 * scene.sample_rate;  // samples
    const std::int64_t center = std::llround(delay);
    if (center - kFracDelayHalfTaps >= length) continue;  // arrives after the window

    const double gain = img.amplitude / (4.0 * kPi * dist);
    const double ux = delta.x / dist, uy = delta.y / dist, uz = delta.z / dist;
    const std::int64_t lo = std::max<std::int64_t>(0, center - kFracDelayHalfTaps);
    const std::int64_t hi = std::min<std::int64_t>(length - 1, center + kFracDelayHalfTaps);
    for (std::int64_t n = lo; n <= hi; ++n) {
      const double v = gain * frac_delay_kernel(static_cast<double>(n) - delay);
      acc[static_cast<std::size_t>(n)] += v;
      acc[static_cast<std::size_t>(length + n)] += ux * v;
      acc[static_cast<std::size_t>(2 * length + n)] += uy * v;
      acc[static_cast<std::size_t>(3 * length + n)] += uz * v;
    }
  }

  FoaRir rir;
  rir.position = mic;
  rir.sample_rate = scene.sample_rate;
  rir.samples.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) rir.samples[i] = static_cast<float>(acc[i]);
  return rir;
}

FoaRir render_foa_rir(const Scene& scene, const Position& mic,
                      const PhysicalConstants& constants) {
  return render_foa_rir(scene, enumerate_images(scene), mic, constants);
}

Scene sample_random_scene(std::uint64_t seed, const SceneSampling& sampling) {
  require(sampling.region_edge > 0.0, "region edge must be positive");
  require(sampling.wall_margin >= 0.0, "wall margin must be non-negative");
  Rng rng(seed);

  Scene scene;
  scene.room_dims[0] = rng.uniform(sampling.floor_range[0], sampling.floor_range[1]);
  scene.room_dims[1] = rng.uniform(sampling.floor_range[0], sampling.floor_range[1]);
  scene.room_dims[2] = rng.uniform(sampling.height_range[0], sampling.height_range[1]);
  for (int w = 0; w < 6; ++w)
    scene.wall_absorption[w] =
        rng.uniform(sampling.absorption_range[0], sampling.absorption_range[1]);
  scene.sample_rate = sampling.sample_rate;
  scene.duration = sampling.duration;
  scene.max_reflection_order = sampling.max_reflection_order;

  const double margin = sampling.wall_margin;
  const double edge = sampling.region_edge;
  for (int a = 0; a < 3; ++a) {
    require(scene.room_dims[a] - 2.0 * margin - edge > 0.0,
            "room too small for the target region and wall margin");
  }
  Position region_min{rng.uniform(margin, scene.room_dims[0] - margin - edge),
                      rng.uniform(margin, scene.room_dims[1] - margin - edge),
                      rng.uniform(margin, scene.room_dims[2] - margin - edge)};
  scene.region.min_corner = region_min;
  scene.region.max_corner = {region_min.x + edge, region_min.y + edge, region_min.z + edge};
  scene.region.time_horizon = sampling.duration;

  TargetRegion exclusion = scene.region;
  const double clear = sampling.source_region_clearance;
  exclusion.min_corner = {region_min.x - clear, region_min.y - clear, region_min.z - clear};
  exclusion.max_corner = {scene.region.max_corner.x + clear,
                          scene.region.max_corner.y + clear,
                          scene.region.max_corner.z + clear};

  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Position candidate{rng.uniform(margin, scene.room_dims[0] - margin),
                       rng.uniform(margin, scene.room_dims[1] - margin),
                       rng.uniform(margin, scene.room_dims[2] - margin)};
    if (exclusion.contains(candidate)) continue;
    scene.source = candidate;
    scene.validate();
    return scene;
  }
  throw ValidationError("scene generation failed: no admissible source position found");
}

}  // namespace foapinn
