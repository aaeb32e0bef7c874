#include "core/trainer.hpp"

#include <cstdio>

namespace foapinn {

namespace {
constexpr std::size_t kDataChunk = 2048;
constexpr std::size_t kCollocChunk = 512;
constexpr double kNmseFloorDb = -300.0;

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void TrainConfig::validate() const {
  require(iterations >= 1, "iterations must be at least 1");
  require(times_per_iter >= 1, "times_per_iter must be at least 1");
  require(prior_mode == PriorMode::none || collocation_per_iter >= 1,
          "collocation_per_iter must be at least 1");
  require(std::isfinite(lr_max) && std::isfinite(lr_min) && lr_max >= lr_min && lr_min >= 0.0,
          "learning rates must satisfy lr_max >= lr_min >= 0");
  require(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0,
          "adam betas must be in [0, 1)");
  require(adam_eps > 0.0, "adam epsilon must be positive");
  require(validation_interval >= 1, "validation interval must be at least 1");
  NetworkConfig check = network;
  check.norm = NormMap{};
  check.validate();
}

double lr_schedule(std::uint64_t step, const TrainConfig& config) {
  require(step <= config.iterations, "step outside the schedule range");
  const double progress = static_cast<double>(step) / static_cast<double>(config.iterations);
  return config.lr_min +
         0.5 * (config.lr_max - config.lr_min) * (1.0 + std::cos(progress * M_PI));
}

template <class S>
TrainerT<S>::TrainerT(const Dataset& dataset, const TrainConfig& config, ThreadPool& pool)
    : dataset_(dataset),
      config_(config),
      pool_(pool),
      engine_([&] {
        config.validate();
        dataset.validate();
        require(!dataset.split.train.empty(), "train split is empty");
        NetworkConfig net = config.network;
        net.norm = NormMap::from_region(dataset.scene.region);
        return net;
      }()) {
  config_.network = engine_.config();
  params_ = init_params<S>(engine_.config(), mix_seed(config_.seed, 0));
  adam_m_.set_zero(engine_.config());
  adam_v_.set_zero(engine_.config());
}

template <class S>
void TrainerT<S>::assemble_data_batch(std::uint64_t step, Eigen::Matrix4Xd& coords,
                                      Eigen::Matrix<float, 4, Eigen::Dynamic>& targets) const {
  const std::int64_t length = dataset_.length();
  const std::int64_t m = std::min<std::int64_t>(config_.times_per_iter, length);

  // m distinct time indices, shared by every train position this iteration.
  std::vector<std::uint32_t> times(static_cast<std::size_t>(length));
  for (std::int64_t l = 0; l < length; ++l) times[static_cast<std::size_t>(l)] = static_cast<std::uint32_t>(l);
  if (m < length) {
    Rng rng(mix_seed(config_.seed, 2 * step + 1));
    for (std::int64_t i = 0; i < m; ++i) {
      const std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(length - i)));
      std::swap(times[static_cast<std::size_t>(i)], times[j]);
    }
    times.resize(static_cast<std::size_t>(m));
  }

  const auto& train = dataset_.split.train;
  const Eigen::Index n = static_cast<Eigen::Index>(train.size()) * m;
  coords.resize(4, n);
  targets.resize(4, n);
  const double dt = 1.0 / dataset_.sample_rate();
  Eigen::Index col = 0;
  for (std::uint32_t d : train) {
    const Position& p = dataset_.positions[d];
    for (std::int64_t i = 0; i < m; ++i, ++col) {
      const std::uint32_t l = times[static_cast<std::size_t>(i)];
      coords.col(col) << p.x, p.y, p.z, static_cast<double>(l) * dt;
      for (int c = 0; c < 4; ++c) targets(c, col) = dataset_.channel(d, c)[l];
    }
  }
}

template <class S>
CollocationBatch TrainerT<S>::assemble_collocation_batch(std::uint64_t step) const {
  return lhs_sample(static_cast<std::size_t>(config_.collocation_per_iter),
                    dataset_.scene.region, mix_seed(config_.seed, 2 * step + 2));
}

template <class S>
void TrainerT<S>::compute_gradients(const Eigen::Matrix4Xd& data_coords,
                                    const Eigen::Matrix<float, 4, Eigen::Dynamic>& data_targets,
                                    const CollocationBatch& colloc, NetworkParamsT<S>& grads,
                                    LossBreakdown& losses) {
  const double c0 = dataset_.constants.c0;
  const double eps_d = static_cast<double>(params_.eps_data());
  const double eps_p = static_cast<double>(params_.eps_prior());
  const double w_data = 1.0 / (2.0 * eps_d * eps_d);
  const double w_prior = 1.0 / (2.0 * eps_p * eps_p);

  const auto data_chunks = make_chunks(static_cast<std::size_t>(data_coords.cols()), kDataChunk);
  const bool with_prior = config_.prior_mode != PriorMode::none;
  const auto colloc_chunks =
      with_prior ? make_chunks(static_cast<std::size_t>(colloc.coords.cols()), kCollocChunk)
                 : std::vector<std::pair<std::size_t, std::size_t>>{};
  const std::size_t n_slots = data_chunks.size() + colloc_chunks.size();

  grad_slots_.resize(n_slots);
  loss_slots_.assign(n_slots, {0.0, 0.0, 0.0, 0.0});
  for (auto& slot : grad_slots_) slot.set_zero(engine_.config());

  const double data_count = static_cast<double>(data_coords.cols());
  const double colloc_count = with_prior ? static_cast<double>(colloc.coords.cols()) : 1.0;
  const S data_seed_scale = static_cast<S>(w_data / data_count);
  const S prior_seed_scale = static_cast<S>(w_prior / colloc_count);

  pool_.run_chunks(n_slots, [&](std::size_t slot) {
    static thread_local typename SirenEngine<S>::Workspace data_ws, colloc_ws;
    static thread_local typename SirenEngine<S>::Outputs out;
    typename SirenEngine<S>::Adjoints adj;

    if (slot < data_chunks.size()) {
      const auto [begin, end] = data_chunks[slot];
      const Eigen::Index b = static_cast<Eigen::Index>(end - begin);
      engine_.forward(params_, data_coords.middleCols(static_cast<Eigen::Index>(begin), b),
                      Deriv::none, data_ws, out);
      typename SirenEngine<S>::Mat err =
          out.value - data_targets.middleCols(static_cast<Eigen::Index>(begin), b)
                          .template cast<S>();
      double partial = 0.0;
      for (Eigen::Index i = 0; i < b; ++i)
        partial += static_cast<double>(err.col(i).template lpNorm<1>());
      loss_slots_[slot][0] = partial;
      adj.value = err.array().sign().matrix() * data_seed_scale;
      engine_.backward(params_, data_ws, adj, grad_slots_[slot]);
      return;
    }

    const auto [begin, end] = colloc_chunks[slot - data_chunks.size()];
    const Eigen::Index b = static_cast<Eigen::Index>(end - begin);
    const auto coords = colloc.coords.middleCols(static_cast<Eigen::Index>(begin), b);
    if (config_.prior_mode == PriorMode::foa) {
      engine_.forward(params_, coords, Deriv::first, colloc_ws, out);
      for (int a = 0; a < 4; ++a) adj.jac[a].setZero(4, b);
      double mom_sum = 0.0, cont_sum = 0.0;
      const S inv_c0 = static_cast<S>(1.0 / c0);
      for (Eigen::Index i = 0; i < b; ++i) {
        for (int axis = 0; axis < 3; ++axis) {
          const S m = out.jac[axis](0, i) - out.jac[3](1 + axis, i) * inv_c0;
          mom_sum += std::abs(static_cast<double>(m));
          const S sg = m > S(0) ? S(1) : (m < S(0) ? S(-1) : S(0));
          adj.jac[axis](0, i) = prior_seed_scale * sg;
          adj.jac[3](1 + axis, i) = -prior_seed_scale * sg * inv_c0;
        }
        const S cres = out.jac[0](1, i) + out.jac[1](2, i) + out.jac[2](3, i) -
                       out.jac[3](0, i) * inv_c0;
        cont_sum += std::abs(static_cast<double>(cres));
        const S sg = cres > S(0) ? S(1) : (cres < S(0) ? S(-1) : S(0));
        adj.jac[0](1, i) = prior_seed_scale * sg;
        adj.jac[1](2, i) = prior_seed_scale * sg;
        adj.jac[2](3, i) = prior_seed_scale * sg;
        adj.jac[3](0, i) -= prior_seed_scale * sg * inv_c0;
      }
      loss_slots_[slot][1] = mom_sum;
      loss_slots_[slot][2] = cont_sum;
      engine_.backward(params_, colloc_ws, adj, grad_slots_[slot]);
    } else {
      engine_.forward(params_, coords, Deriv::second, colloc_ws, out);
      for (int a = 0; a < 4; ++a) adj.second[a].setZero(4, b);
      double wave_sum = 0.0;
      const S inv_c0sq = static_cast<S>(1.0 / (c0 * c0));
      for (Eigen::Index i = 0; i < b; ++i) {
        const S r = out.second[0](0, i) + out.second[1](0, i) + out.second[2](0, i) -
                    out.second[3](0, i) * inv_c0sq;
        wave_sum += std::abs(static_cast<double>(r));
        const S sg = r > S(0) ? S(1) : (r < S(0) ? S(-1) : S(0));
        for (int axis = 0; axis < 3; ++axis) adj.second[axis](0, i) = prior_seed_scale * sg;
        adj.second[3](0, i) = -prior_seed_scale * sg * inv_c0sq;
      }
      loss_slots_[slot][3] = wave_sum;
      engine_.backward(params_, colloc_ws, adj, grad_slots_[slot]);
    }
  });

  // deterministic reduction in chunk order
  grads.set_zero(engine_.config());
  for (auto& slot : grad_slots_) {
    grads.zip(slot, slot, slot, [](auto& acc, auto& s, auto&, auto&) { acc += s; });
  }
  std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};
  for (const auto& slot : loss_slots_)
    for (int i = 0; i < 4; ++i) sums[i] += slot[i];

  losses.data = sums[0] / data_count;
  losses.momentum = sums[1] / colloc_count;
  losses.continuity = sums[2] / colloc_count;
  losses.wave = sums[3] / colloc_count;
  losses.eps_data = eps_d;
  losses.eps_prior = eps_p;
  const double prior_sum = losses.momentum + losses.continuity + losses.wave;
  losses.total = total_loss(losses.data, prior_sum, 0.0, eps_d, eps_p);

  // Closed-form gradients of the adaptive weighting with respect to the
  // log-eps parameters: d/d log(e) of L/(2 e^2) + log(e) = 1 - L/e^2.
  grads.log_eps_data = static_cast<S>(1.0 - losses.data / (eps_d * eps_d));
  grads.log_eps_prior = static_cast<S>(1.0 - prior_sum / (eps_p * eps_p));
}

template <class S>
void TrainerT<S>::adam_update(NetworkParamsT<S>& grads, double lr) {
  const double t = static_cast<double>(step_ + 1);
  const S b1 = static_cast<S>(config_.adam_beta1);
  const S b2 = static_cast<S>(config_.adam_beta2);
  const S bc1 = static_cast<S>(1.0 - std::pow(config_.adam_beta1, t));
  const S bc2 = static_cast<S>(1.0 - std::pow(config_.adam_beta2, t));
  const S eps = static_cast<S>(config_.adam_eps);
  const S rate = static_cast<S>(lr);

  params_.zip(grads, adam_m_, adam_v_, [&](auto& p, auto& g, auto& m, auto& v) {
    m.array() = b1 * m.array() + (S(1) - b1) * g.array();
    v.array() = b2 * v.array() + (S(1) - b2) * g.array().square();
    p.array() -= rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps);
  });

  auto scalar_update = [&](S& p, S g, S& m, S& v) {
    m = b1 * m + (S(1) - b1) * g;
    v = b2 * v + (S(1) - b2) * g * g;
    p -= rate * (m / bc1) / (std::sqrt(v / bc2) + eps);
  };
  scalar_update(params_.log_eps_data, grads.log_eps_data, adam_m_.log_eps_data,
                adam_v_.log_eps_data);
  scalar_update(params_.log_eps_prior, grads.log_eps_prior, adam_m_.log_eps_prior,
                adam_v_.log_eps_prior);
}

template <class S>
LossBreakdown TrainerT<S>::step() {
  Eigen::Matrix4Xd data_coords;
  Eigen::Matrix<float, 4, Eigen::Dynamic> data_targets;
  assemble_data_batch(step_, data_coords, data_targets);
  CollocationBatch colloc;
  if (config_.prior_mode != PriorMode::none) colloc = assemble_collocation_batch(step_);

  NetworkParamsT<S> grads;
  LossBreakdown losses;
  compute_gradients(data_coords, data_targets, colloc, grads, losses);

  if (!std::isfinite(losses.total) || !std::isfinite(losses.data)) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "training diverged at step %llu: total=%g data=%g momentum=%g "
                  "continuity=%g wave=%g eps_data=%g eps_prior=%g",
                  static_cast<unsigned long long>(step_ + 1), losses.total, losses.data,
                  losses.momentum, losses.continuity, losses.wave, losses.eps_data,
                  losses.eps_prior);
    throw DivergenceError(buf);
  }

  adam_update(grads, lr_schedule(step_, config_));
  ++step_;
  return losses;
}

template <class S>
double TrainerT<S>::validation_nmse_w() {
  const auto& val = dataset_.split.validation;
  require(!val.empty(), "validation split is empty");
  const std::int64_t length = dataset_.length();
  const double dt = 1.0 / dataset_.sample_rate();

  const auto chunks = make_chunks(val.size(), 4);
  std::vector<std::array<double, 2>> partials(chunks.size(), {0.0, 0.0});
  pool_.run_chunks(chunks.size(), [&](std::size_t c) {
    static thread_local typename SirenEngine<S>::Workspace ws;
    static thread_local typename SirenEngine<S>::Outputs out;
    Eigen::Matrix4Xd coords(4, static_cast<Eigen::Index>(chunks[c].second - chunks[c].first) * length);
    Eigen::Index col = 0;
    for (std::size_t i = chunks[c].first; i < chunks[c].second; ++i) {
      const Position& p = dataset_.positions[val[i]];
      for (std::int64_t l = 0; l < length; ++l, ++col)
        coords.col(col) << p.x, p.y, p.z, static_cast<double>(l) * dt;
    }
    engine_.forward(params_, coords, Deriv::none, ws, out);
    double num = 0.0, den = 0.0;
    col = 0;
    for (std::size_t i = chunks[c].first; i < chunks[c].second; ++i) {
      const float* w = dataset_.channel(val[i], 0);
      for (std::int64_t l = 0; l < length; ++l, ++col) {
        const double ref = static_cast<double>(w[l]);
        const double err = static_cast<double>(out.value(0, col)) - ref;
        num += err * err;
        den += ref * ref;
      }
    }
    partials[c] = {num, den};
  });

  double num = 0.0, den = 0.0;
  for (const auto& p : partials) {
    num += p[0];
    den += p[1];
  }
  require(den > 0.0, "validation split has zero W-channel energy");
  if (num == 0.0) return kNmseFloorDb;
  return std::max(kNmseFloorDb, 10.0 * std::log10(num / den));
}

template <class S>
typename TrainerT<S>::Result TrainerT<S>::train(std::ostream* history) {
  if (history) *history << kHistoryHeader << '\n';

  Result result;
  NetworkParamsT<S> best_params = params_;
  bool validated = false;

  for (std::uint64_t it = 0; it < config_.iterations; ++it) {
    const double lr = lr_schedule(step_, config_);
    const LossBreakdown lb = step();

    std::string val_field;
    if (step_ % config_.validation_interval == 0) {
      const double val = validation_nmse_w();
      validated = true;
      val_field = format_g17(val);
      if (val < result.best_val_nmse_w) {
        result.best_val_nmse_w = val;
        result.best_step = step_;
        best_params = params_;
      }
    }
    if (history) {
      *history << step_ << ',' << format_g17(lb.total) << ',' << format_g17(lb.data) << ','
               << format_g17(lb.momentum) << ',' << format_g17(lb.continuity) << ','
               << format_g17(lb.wave) << ',' << format_g17(lb.eps_data) << ','
               << format_g17(lb.eps_prior) << ',' << format_g17(lr) << ',' << val_field
               << '\n';
      history->flush();
    }
  }

  if (!validated) {
    result.best_val_nmse_w = validation_nmse_w();
    result.best_step = step_;
    best_params = params_;
  }

  result.best.config = engine_.config();
  result.best.params = best_params.template cast<float>();
  result.best.step = result.best_step;
  result.best.amplitude_scale = dataset_.amplitude_scale;
  return result;
}

template class TrainerT<float>;
template class TrainerT<double>;

}  // namespace foapinn
