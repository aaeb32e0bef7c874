#pragma once

#include <cstdint>
#include <limits>
#include <ostream>

#include "core/dataset.hpp"
#include "core/losses.hpp"
#include "core/siren.hpp"
#include "core/threading.hpp"

namespace foapinn {

struct TrainConfig {
  std::uint64_t iterations = 100000;
  std::int64_t times_per_iter = 250;        // time indices per data batch
  std::int64_t collocation_per_iter = 25000;
  double lr_max = 1e-4;
  double lr_min = 1e-6;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  PriorMode prior_mode = PriorMode::foa;
  std::uint64_t seed = 11;
  std::uint64_t validation_interval = 500;
  NetworkConfig network;  // norm map is overwritten from the dataset region

  void validate() const;
};

// Cosine annealing from lr_max at step 0 to lr_min at step == iterations.
double lr_schedule(std::uint64_t step, const TrainConfig& config);

constexpr const char* kHistoryHeader =
    "step,loss_total,loss_data,loss_momentum,loss_continuity,loss_wave,"
    "eps_data,eps_prior,lr,val_nmse_w";

template <class S>
class TrainerT {
 public:
  struct Result {
    Checkpoint best;
    double best_val_nmse_w = std::numeric_limits<double>::infinity();
    std::uint64_t best_step = 0;
  };

  TrainerT(const Dataset& dataset, const TrainConfig& config, ThreadPool& pool);

  // One optimization iteration: data batch + collocation batch -> adaptive
  // total loss -> one Adam step for the network weights and both log-eps.
  LossBreakdown step();

  // Full run with best-checkpoint retention; history rows go to *history
  // (one per iteration) when non-null.
  Result train(std::ostream* history);

  double validation_nmse_w();

  // Batches and raw gradients for one iteration, exposed for verification.
  void assemble_data_batch(std::uint64_t step, Eigen::Matrix4Xd& coords,
                           Eigen::Matrix<float, 4, Eigen::Dynamic>& targets) const;
  CollocationBatch assemble_collocation_batch(std::uint64_t step) const;
  void compute_gradients(const Eigen::Matrix4Xd& data_coords,
                         const Eigen::Matrix<float, 4, Eigen::Dynamic>& data_targets,
                         const CollocationBatch& colloc, NetworkParamsT<S>& grads,
                         LossBreakdown& losses);

  const NetworkParamsT<S>& params() const { return params_; }
  NetworkParamsT<S>& mutable_params() { return params_; }
  const NetworkConfig& network_config() const { return engine_.config(); }
  std::uint64_t current_step() const { return step_; }

 private:
  void adam_update(NetworkParamsT<S>& grads, double lr);

  const Dataset& dataset_;
  TrainConfig config_;
  ThreadPool& pool_;
  SirenEngine<S> engine_;
  NetworkParamsT<S> params_, adam_m_, adam_v_;
  std::uint64_t step_ = 0;

  // per-chunk gradient and loss slots, reduced in chunk order so results do
  // not depend on the worker count
  std::vector<NetworkParamsT<S>> grad_slots_;
  std::vector<std::array<double, 4>> loss_slots_;
};

using Trainer = TrainerT<float>;

}  // namespace foapinn
