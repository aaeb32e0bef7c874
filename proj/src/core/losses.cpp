#include "core/losses.hpp"

namespace foapinn {

const char* prior_mode_name(PriorMode mode) {
  switch (mode) {
    case PriorMode::none: return "none";
    case PriorMode::wave: return "wave";
    case PriorMode::foa: return "foa";
  }
  return "?";
}

PriorMode prior_mode_from_name(const std::string& name) {
  if (name == "none") return PriorMode::none;
  if (name == "wave") return PriorMode::wave;
  if (name == "foa") return PriorMode::foa;
  throw ValidationError("unknown prior mode '" + name + "' (expected none|wave|foa)");
}

Eigen::Vector3d momentum_residual(const FieldEval& eval, double c0) {
  Eigen::Vector3d res;
  for (int i = 0; i < 3; ++i) res(i) = eval.jac(0, i) - eval.jac(1 + i, 3) / c0;
  return res;
}

double continuity_residual(const FieldEval& eval, double c0) {
  return eval.jac(1, 0) + eval.jac(2, 1) + eval.jac(3, 2) - eval.jac(0, 3) / c0;
}

double wave_residual(const FieldEval& eval, double c0) {
  if (!eval.has_second)
    throw StateError("wave residual needs second derivatives of the pressure channel");
  return eval.second_w(0) + eval.second_w(1) + eval.second_w(2) -
         eval.second_w(3) / (c0 * c0);
}

double data_loss(const Eigen::Ref<const Eigen::Matrix4Xd>& predictions,
                 const Eigen::Ref<const Eigen::Matrix4Xd>& measurements) {
  require(predictions.cols() > 0, "data loss needs a non-empty batch");
  require(predictions.cols() == measurements.cols(),
          "prediction and measurement batches must match");
  std::vector<double> terms(static_cast<std::size_t>(predictions.cols()));
  for (Eigen::Index i = 0; i < predictions.cols(); ++i)
    terms[static_cast<std::size_t>(i)] =
        (predictions.col(i) - measurements.col(i)).template lpNorm<1>();
  return pairwise_sum(terms) / static_cast<double>(predictions.cols());
}

double total_loss(double data, double momentum, double continuity, double eps_data,
                  double eps_prior) {
  require(eps_data > 0.0 && eps_prior > 0.0, "loss weights must be positive");
  require(std::isfinite(data) && std::isfinite(momentum) && std::isfinite(continuity),
          "loss components must be finite");
  return data / (2.0 * eps_data * eps_data) +
         (momentum + continuity) / (2.0 * eps_prior * eps_prior) +
         std::log(eps_data * eps_prior);
}

CollocationBatch lhs_sample(std::size_t n, const TargetRegion& region,
                            std::uint64_t seed) {
  require(n >= 1, "latin hypercube sample needs n >= 1");
  region.validate();
  Rng rng(seed);
  CollocationBatch batch;
  batch.coords.resize(4, static_cast<Eigen::Index>(n));

  const std::array<double, 2> spans[4] = {
      {region.min_corner.x, region.max_corner.x},
      {region.min_corner.y, region.max_corner.y},
      {region.min_corner.z, region.max_corner.z},
      {0.0, region.time_horizon},
  };
  for (int a = 0; a < 4; ++a) {
    const double lo = spans[a][0], width = spans[a][1] - spans[a][0];
    const std::vector<std::uint32_t> strata = rng.permutation(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double jitter = rng.next_double();
      batch.coords(a, static_cast<Eigen::Index>(i)) =
          lo + width * ((static_cast<double>(strata[i]) + jitter) / static_cast<double>(n));
    }
  }
  return batch;
}

template <class S>
PriorLossValue prior_loss(const CollocationBatch& batch, const SirenEngine<S>& engine,
                          const NetworkParamsT<S>& params, PriorMode mode, double c0) {
  const Eigen::Index n = batch.coords.cols();
  require(n > 0, "prior loss needs a non-empty collocation batch");
  require(c0 > 0.0, "sound speed must be positive");
  PriorLossValue value;
  if (mode == PriorMode::none) return value;

  typename SirenEngine<S>::Workspace ws;
  typename SirenEngine<S>::Outputs out;
  engine.forward(params, batch.coords, mode == PriorMode::wave ? Deriv::second : Deriv::first,
                 ws, out);

  const std::size_t count = static_cast<std::size_t>(n);
  if (mode == PriorMode::foa) {
    std::vector<double> mom(count), cont(count);
    for (Eigen::Index i = 0; i < n; ++i) {
      double m = 0.0;
      for (int axis = 0; axis < 3; ++axis) {
        m += std::abs(static_cast<double>(out.jac[axis](0, i)) -
                      static_cast<double>(out.jac[3](1 + axis, i)) / c0);
      }
      mom[static_cast<std::size_t>(i)] = m;
      cont[static_cast<std::size_t>(i)] =
          std::abs(static_cast<double>(out.jac[0](1, i)) +
                   static_cast<double>(out.jac[1](2, i)) +
                   static_cast<double>(out.jac[2](3, i)) -
                   static_cast<double>(out.jac[3](0, i)) / c0);
    }
    value.momentum = pairwise_sum(mom) / static_cast<double>(n);
    value.continuity = pairwise_sum(cont) / static_cast<double>(n);
  } else {
    std::vector<double> wave(count);
    for (Eigen::Index i = 0; i < n; ++i) {
      wave[static_cast<std::size_t>(i)] =
          std::abs(static_cast<double>(out.second[0](0, i)) +
                   static_cast<double>(out.second[1](0, i)) +
                   static_cast<double>(out.second[2](0, i)) -
                   static_cast<double>(out.second[3](0, i)) / (c0 * c0));
    }
    value.wave = pairwise_sum(wave) / static_cast<double>(n);
  }
  return value;
}

template PriorLossValue prior_loss<float>(const CollocationBatch&, const SirenEngine<float>&,
                                          const NetworkParamsT<float>&, PriorMode, double);
template PriorLossValue prior_loss<double>(const CollocationBatch&,
                                           const SirenEngine<double>&,
                                           const NetworkParamsT<double>&, PriorMode, double);

}  // namespace foapinn
