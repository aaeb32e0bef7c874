#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "core/siren.hpp"
#include "core/types.hpp"

namespace foapinn {

enum class PriorMode { none, wave, foa };

const char* prior_mode_name(PriorMode mode);
PriorMode prior_mode_from_name(const std::string& name);

// Residual of the linearized momentum equation written in FOA variables:
// grad(w) - (1/c0) d v/dt, componentwise, physical units.
Eigen::Vector3d momentum_residual(const FieldEval& eval, double c0);

// Residual of the continuity equation in FOA variables:
// div(v) - (1/c0) d w/dt.
double continuity_residual(const FieldEval& eval, double c0);

// Wave-equation residual on the pressure channel:
// laplacian(w) - (1/c0^2) d2 w/dt2. Needs second derivatives.
double wave_residual(const FieldEval& eval, double c0);

// Mean over columns of |w_err| + l1(v_err); pred and target are 4 x N.
double data_loss(const Eigen::Ref<const Eigen::Matrix4Xd>& predictions,
                 const Eigen::Ref<const Eigen::Matrix4Xd>& measurements);

// Adaptive total: data/(2 e_d^2) + (momentum + continuity)/(2 e_p^2)
// + log(e_d * e_p). The wave-prior mode passes its single term through the
// same prior slot.
double total_loss(double data, double momentum, double continuity, double eps_data,
                  double eps_prior);

struct CollocationBatch {
  Eigen::Matrix4Xd coords;  // columns (x, y, z, t) in Omega x [0, T]
};

// Latin hypercube sample: per axis the n points occupy the n equal strata
// exactly once. Deterministic per seed.
CollocationBatch lhs_sample(std::size_t n, const TargetRegion& region, std::uint64_t seed);

struct PriorLossValue {
  double momentum = 0.0;
  double continuity = 0.0;
  double wave = 0.0;
};

// Batch means of the residual magnitudes at the collocation points.
// Mode foa fills momentum/continuity, mode wave fills wave.
template <class S>
PriorLossValue prior_loss(const CollocationBatch& batch, const SirenEngine<S>& engine,
                          const NetworkParamsT<S>& params, PriorMode mode, double c0);

struct LossBreakdown {
  double data = 0.0;
  double momentum = 0.0;
  double continuity = 0.0;
  double wave = 0.0;
  double total = 0.0;
  double eps_data = 1.0;
  double eps_prior = 1.0;
};

}  // namespace foapinn
