#include "core/types.hpp"

#include <algorithm>

namespace foapinn {

std::array<std::int64_t, 3> grid_shape(const TargetRegion& region, double spacing) {
  region.validate();
  require(std::isfinite(spacing) && spacing > 0.0, "grid spacing must be positive");
  auto edges = region.edges();
  std::array<std::int64_t, 3> shape{};
  for (int a = 0; a < 3; ++a) {
    // Tolerance so that e.g. 1.0 / 0.05 counts as 20 intervals exactly.
    shape[a] = static_cast<std::int64_t>(std::floor(edges[a] / spacing + 1e-9)) + 1;
  }
  return shape;
}

std::vector<Position> make_grid(const TargetRegion& region, double spacing) {
  auto shape = grid_shape(region, spacing);
  std::vector<Position> grid;
  grid.reserve(static_cast<std::size_t>(shape[0] * shape[1] * shape[2]));
  for (std::int64_t iz = 0; iz < shape[2]; ++iz) {
    for (std::int64_t iy = 0; iy < shape[1]; ++iy) {
      for (std::int64_t ix = 0; ix < shape[0]; ++ix) {
        grid.push_back({region.min_corner.x + static_cast<double>(ix) * spacing,
                        region.min_corner.y + static_cast<double>(iy) * spacing,
                        region.min_corner.z + static_cast<double>(iz) * spacing});
      }
    }
  }
  return grid;
}

Split split_dataset(std::uint32_t n_total, std::uint32_t n_train, std::uint32_t n_val,
                    std::uint64_t seed) {
  require(static_cast<std::uint64_t>(n_train) + n_val <= n_total,
          "train + validation counts exceed the total");
  Rng rng(seed);
  std::vector<std::uint32_t> perm = rng.permutation(n_total);

  Split split;
  split.train.assign(perm.begin(), perm.begin() + n_train);
  split.validation.assign(perm.begin() + n_train, perm.begin() + n_train + n_val);
  split.evaluation.assign(perm.begin() + n_train + n_val, perm.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.evaluation.begin(), split.evaluation.end());
  return split;
}

}  // namespace foapinn
