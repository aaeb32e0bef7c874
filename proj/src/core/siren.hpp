#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace foapinn {

// Per-axis affine map from physical (x, y, z, t) to normalized [-1, 1]^4:
// u_a = scale_a * p_a + offset_a. Derivatives returned by the engine are in
// physical units; the chain-rule factors come from this map.
struct NormMap {
  std::array<double, 4> scale{1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> offset{0.0, 0.0, 0.0, 0.0};

  static NormMap from_region(const TargetRegion& region);
  void validate() const;
};

struct NetworkConfig {
  int hidden_layers = 3;  // K
  int width = 512;
  double omega0 = 30.0;
  NormMap norm;

  void validate() const;
};

// Two sine encoders, K sine hidden layers combined with the encoder blend,
// and a linear 4-channel projection. The two loss weights live here as log
// values so gradient steps keep them positive.
template <class S>
struct NetworkParamsT {
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

  Mat enc_f_w, enc_g_w;        // width x 4
  Vec enc_f_b, enc_g_b;        // width
  std::vector<Mat> hidden_w;   // [K]; width x 4 for k=0, else width x width
  std::vector<Vec> hidden_b;   // [K]; width
  Mat proj_w;                  // 4 x width
  Vec proj_b;                  // 4
  S log_eps_data = S(0);
  S log_eps_prior = S(0);

  S eps_data() const { return std::exp(log_eps_data); }
  S eps_prior() const { return std::exp(log_eps_prior); }

  void set_zero(const NetworkConfig& config);
  template <class T>
  NetworkParamsT<T> cast() const;

  // Applies f to every weight tensor of *this and of the companions, in a
  // fixed order; used for the optimizer update and gradient reductions.
  template <class F>
  void zip(NetworkParamsT& a, NetworkParamsT& b, NetworkParamsT& c, F&& f) {
    f(enc_f_w, a.enc_f_w, b.enc_f_w, c.enc_f_w);
    f(enc_f_b, a.enc_f_b, b.enc_f_b, c.enc_f_b);
    f(enc_g_w, a.enc_g_w, b.enc_g_w, c.enc_g_w);
    f(enc_g_b, a.enc_g_b, b.enc_g_b, c.enc_g_b);
    for (std::size_t k = 0; k < hidden_w.size(); ++k) {
      f(hidden_w[k], a.hidden_w[k], b.hidden_w[k], c.hidden_w[k]);
      f(hidden_b[k], a.hidden_b[k], b.hidden_b[k], c.hidden_b[k]);
    }
    f(proj_w, a.proj_w, b.proj_w, c.proj_w);
    f(proj_b, a.proj_b, b.proj_b, c.proj_b);
  }
};

using NetworkParams = NetworkParamsT<double>;

// SIREN-style initialization: layers reading the raw coordinate use
// U(-1/n_in, 1/n_in); deeper sine layers and the projection use
// U(+-sqrt(6/n_in)/omega0). eps_data starts at 1.0, eps_prior at 0.1.
template <class S>
NetworkParamsT<S> init_params(const NetworkConfig& config, std::uint64_t seed);

// Network outputs and their exact coordinate derivatives at one point,
// everything in physical units.
struct FieldEval {
  double w = 0.0;
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();  // rows (w,x,y,z) x cols (x,y,z,t)
  bool has_second = false;
  Eigen::Vector4d second_w = Eigen::Vector4d::Zero();  // d2w/dx2, dy2, dz2, dt2
};

enum class Deriv { none, first, second };

template <class S>
class SirenEngine {
 public:
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  using Params = NetworkParamsT<S>;

  // Saved forward state for one batch. Column layout packs derivative
  // streams side by side: [value | d/dx | d/dy | d/dz | d/dt | d2...]
  // with B columns per stream.
  struct Workspace {
    Deriv mode = Deriv::none;
    Eigen::Index batch = 0;
    int streams = 1;
    Mat h0;
    struct Stage {
      Mat z;        // pre-activation streams
      Mat act;      // sine output streams
      Mat cos_val;  // cos(omega0 * z) on the value block only
    };
    Stage enc_f, enc_g;
    std::vector<Stage> hidden;
    std::vector<Mat> blend;  // blend outputs per hidden layer
    Mat out;

    // scratch for backward
    Mat bar_a, bar_b, bar_f, bar_g;
  };

  struct Outputs {
    // value(4 x B); jac[a](4 x B) = d(out)/d p_a; second[a](4 x B)
    Mat value;
    std::array<Mat, 4> jac;
    std::array<Mat, 4> second;
  };

  // Upstream gradients with the same shapes as Outputs. Unused pieces may be
  // left empty (treated as zero).
  struct Adjoints {
    Mat value;
    std::array<Mat, 4> jac;
    std::array<Mat, 4> second;
  };

  explicit SirenEngine(const NetworkConfig& config);

  const NetworkConfig& config() const { return config_; }

  // coords: 4 x B physical (x, y, z, t) columns.
  void forward(const Params& params, const Eigen::Ref<const Eigen::Matrix4Xd>& coords,
               Deriv mode, Workspace& ws, Outputs& out) const;

  // Accumulates dLoss/dparams into grads for any loss whose adjoints with
  // respect to the outputs (values, Jacobians, second derivatives) are given.
  // Requires the workspace produced by forward for the same batch.
  void backward(const Params& params, Workspace& ws, const Adjoints& adj,
                Params& grads) const;

  std::pair<double, Eigen::Vector3d> forward_one(const Params& params,
                                                 const Position& r, double t) const;
  FieldEval forward_with_derivatives(const Params& params, const Position& r, double t,
                                     bool need_second) const;

 private:
  NetworkConfig config_;
};

using SirenEngineF = SirenEngine<float>;
using SirenEngineD = SirenEngine<double>;

// Checkpoint: versioned binary with the network config, normalization map,
// amplitude scale, training step, and all tensors as little-endian float32.
struct Checkpoint {
  NetworkConfig config;
  NetworkParamsT<float> params;
  std::uint64_t step = 0;
  double amplitude_scale = 1.0;
};

void write_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace foapinn
