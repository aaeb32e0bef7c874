#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "core/dataset.hpp"
#include "core/metrics.hpp"

namespace foapinn {

// Diverging blue-white-red map, symmetric about zero:
//   u = clamp(v / vmax, -1, 1)
//   u >= 0: (255, round(255 (1-u)), round(255 (1-u)))
//   u <  0: (round(255 (1+u)), round(255 (1+u)), 255)
std::array<std::uint8_t, 3> diverging_rgb(double value, double vmax);

struct SliceInfo {
  double plane_z = 0.0;        // grid plane actually used
  std::int64_t sample_index = 0;
  double vmax = 0.0;           // shared color range of both images
  std::string truth_ppm, pred_ppm, csv;
};

// Renders ground truth and prediction of the W channel over the region slice
// nearest to height_m at the sample nearest time_s. Writes
// <out_dir>/<tag>_truth.ppm, <tag>_pred.ppm (binary PPM, one pixel per grid
// point, top row = max y) and <tag>.csv with columns x,y,truth,pred.
SliceInfo plot_slice(const Checkpoint& checkpoint, const Dataset& dataset, double height_m,
                     double time_s, const std::string& out_dir, const std::string& tag,
                     ThreadPool& pool);

}  // namespace foapinn
