#pragma once

#include <Eigen/Dense>
#include <functional>

#include "core/dataset.hpp"
#include "core/siren.hpp"
#include "core/threading.hpp"

namespace foapinn {

enum class SplitKind { validation, evaluation };
SplitKind split_kind_from_name(const std::string& name);

struct MetricsReport {
  double nmse_w_db = 0.0;
  double nmse_xyz_db = 0.0;  // mean of the per-channel dB values
  double pcc_w = 0.0;
  double pcc_xyz = 0.0;
  std::array<double, 4> nmse_channel_db{};  // W, X, Y, Z
  std::array<double, 4> pcc_channel{};
  std::uint64_t skipped_zero_variance = 0;
};

// 10 log10( sum_d ||pred_d - ref_d||^2 / sum_d ||ref_d||^2 ); rows index
// positions. Exact matches report the -300 dB floor.
double nmse_db(const Eigen::Ref<const Eigen::MatrixXd>& reference,
               const Eigen::Ref<const Eigen::MatrixXd>& predicted);

// Mean over rows of the per-row Pearson correlation between time series
// (time means removed). Rows where either side has zero variance are skipped
// and counted in *skipped when given.
double pcc(const Eigen::Ref<const Eigen::MatrixXd>& reference,
           const Eigen::Ref<const Eigen::MatrixXd>& predicted,
           std::uint64_t* skipped = nullptr);

// Fills a 4 x N block of (W, X, Y, Z) predictions in original amplitude
// units for the given physical coordinates. Must be thread-safe.
using Predictor =
    std::function<void(const Eigen::Ref<const Eigen::Matrix4Xd>& coords,
                       Eigen::Matrix4Xd& out)>;

MetricsReport evaluate_with_predictor(const Predictor& predictor, const Dataset& dataset,
                                      SplitKind split, ThreadPool& pool);

// Queries the checkpointed network over every position/time of the split and
// aggregates the channel metrics in original amplitude units.
MetricsReport evaluate(const Checkpoint& checkpoint, const Dataset& dataset,
                       SplitKind split, ThreadPool& pool);

// Predictor backed by a checkpoint (normalized net output times the stored
// amplitude scale); validates that the checkpoint's normalization map covers
// the dataset region.
Predictor make_checkpoint_predictor(const Checkpoint& checkpoint, const Dataset& dataset);

}  // namespace foapinn
