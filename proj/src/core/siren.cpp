#include "core/siren.hpp"

#include <cstring>
#include <fstream>

namespace foapinn {

NormMap NormMap::from_region(const TargetRegion& region) {
  region.validate();
  NormMap map;
  const std::array<double, 2> spans[4] = {
      {region.min_corner.x, region.max_corner.x},
      {region.min_corner.y, region.max_corner.y},
      {region.min_corner.z, region.max_corner.z},
      {0.0, region.time_horizon},
  };
  for (int a = 0; a < 4; ++a) {
    const double lo = spans[a][0], hi = spans[a][1];
    map.scale[a] = 2.0 / (hi - lo);
    map.offset[a] = -(hi + lo) / (hi - lo);
  }
  return map;
}

void NormMap::validate() const {
  for (int a = 0; a < 4; ++a) {
    require(std::isfinite(scale[a]) && scale[a] != 0.0 && std::isfinite(offset[a]),
            "normalization map must be an invertible affine map");
  }
}

void NetworkConfig::validate() const {
  require(hidden_layers >= 1, "need at least one hidden layer");
  require(width >= 1, "width must be at least 1");
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be positive");
  norm.validate();
}

template <class S>
void NetworkParamsT<S>::set_zero(const NetworkConfig& config) {
  const int w = config.width;
  const int k = config.hidden_layers;
  enc_f_w = Mat::Zero(w, 4);
  enc_g_w = Mat::Zero(w, 4);
  enc_f_b = Vec::Zero(w);
  enc_g_b = Vec::Zero(w);
  hidden_w.assign(static_cast<std::size_t>(k), Mat());
  hidden_b.assign(static_cast<std::size_t>(k), Vec());
  for (int i = 0; i < k; ++i) {
    hidden_w[i] = Mat::Zero(w, i == 0 ? 4 : w);
    hidden_b[i] = Vec::Zero(w);
  }
  proj_w = Mat::Zero(4, w);
  proj_b = Vec::Zero(4);
  log_eps_data = S(0);
  log_eps_prior = S(0);
}

template <class S>
template <class T>
NetworkParamsT<T> NetworkParamsT<S>::cast() const {
  NetworkParamsT<T> out;
  out.enc_f_w = enc_f_w.template cast<T>();
  out.enc_g_w = enc_g_w.template cast<T>();
  out.enc_f_b = enc_f_b.template cast<T>();
  out.enc_g_b = enc_g_b.template cast<T>();
  out.hidden_w.resize(hidden_w.size());
  out.hidden_b.resize(hidden_b.size());
  for (std::size_t i = 0; i < hidden_w.size(); ++i) {
    out.hidden_w[i] = hidden_w[i].template cast<T>();
    out.hidden_b[i] = hidden_b[i].template cast<T>();
  }
  out.proj_w = proj_w.template cast<T>();
  out.proj_b = proj_b.template cast<T>();
  out.log_eps_data = static_cast<T>(log_eps_data);
  out.log_eps_prior = static_cast<T>(log_eps_prior);
  return out;
}

template <class S>
NetworkParamsT<S> init_params(const NetworkConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  NetworkParamsT<S> p;
  p.set_zero(config);

  auto fill = [&rng](auto& m, double bound) {
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m.data()[i] = static_cast<S>(rng.uniform(-bound, bound));
  };

  const double first_w = 1.0 / 4.0;              // layers reading the coordinate
  const double deep_w = std::sqrt(6.0 / config.width) / config.omega0;

  fill(p.enc_f_w, first_w);
  fill(p.enc_f_b, 1.0 / std::sqrt(4.0));
  fill(p.enc_g_w, first_w);
  fill(p.enc_g_b, 1.0 / std::sqrt(4.0));
  for (int k = 0; k < config.hidden_layers; ++k) {
    const int n_in = k == 0 ? 4 : config.width;
    fill(p.hidden_w[static_cast<std::size_t>(k)], k == 0 ? first_w : deep_w);
    fill(p.hidden_b[static_cast<std::size_t>(k)], 1.0 / std::sqrt(n_in));
  }
  fill(p.proj_w, deep_w);
  fill(p.proj_b, 1.0 / std::sqrt(config.width));

  p.log_eps_data = static_cast<S>(std::log(1.0));
  p.log_eps_prior = static_cast<S>(std::log(0.1));
  return p;
}

template <class S>
SirenEngine<S>::SirenEngine(const NetworkConfig& config) : config_(config) {
  config_.validate();
}

namespace {

template <class Mat>
void affine_forward(const Mat& w, const Eigen::Matrix<typename Mat::Scalar, Eigen::Dynamic, 1>& b,
                    const Mat& x, Eigen::Index batch, Mat& z) {
  z.noalias() = w * x;
  z.leftCols(batch).colwise() += b;  // bias feeds the value stream only
}

// act = sin(omega0 * z) on the value block; derivative streams follow from
// d sin(w z) = w cos(w z) dz and d2 sin(w z) = w cos(w z) d2z - w^2 sin(w z) dz^2.
template <class Stage, class S>
void sine_forward(S w0, Eigen::Index batch, int streams, Stage& st) {
  const Eigen::Index b = batch;
  st.act.resize(st.z.rows(), st.z.cols());
  st.cos_val = (w0 * st.z.leftCols(b).array()).cos().matrix();
  st.act.leftCols(b) = (w0 * st.z.leftCols(b).array()).sin().matrix();
  if (streams == 1) return;
  const auto c = st.cos_val.array();
  const auto s_val = st.act.leftCols(b).array();
  for (int a = 0; a < 4; ++a) {
    const auto zt = st.z.middleCols((1 + a) * b, b).array();
    st.act.middleCols((1 + a) * b, b) = (w0 * c * zt).matrix();
  }
  if (streams < 9) return;
  for (int a = 0; a < 4; ++a) {
    const auto zt = st.z.middleCols((1 + a) * b, b).array();
    const auto zs = st.z.middleCols((5 + a) * b, b).array();
    st.act.middleCols((5 + a) * b, b) =
        (w0 * c * zs - w0 * w0 * s_val * zt.square()).matrix();
  }
}

// h = f + t.(g - f), plus the product-rule expansions for the streams.
template <class Mat>
void blend_forward(Eigen::Index b, int streams, const Mat& f, const Mat& g, const Mat& t,
                   Mat& h) {
  using Scalar = typename Mat::Scalar;
  h.resize(f.rows(), f.cols());
  const auto fv = f.leftCols(b).array();
  const auto gv = g.leftCols(b).array();
  const auto tv = t.leftCols(b).array();
  h.leftCols(b) = (fv + tv * (gv - fv)).matrix();
  if (streams == 1) return;
  for (int a = 0; a < 4; ++a) {
    const auto ft = f.middleCols((1 + a) * b, b).array();
    const auto gt = g.middleCols((1 + a) * b, b).array();
    const auto tt = t.middleCols((1 + a) * b, b).array();
    h.middleCols((1 + a) * b, b) = (ft + tt * (gv - fv) + tv * (gt - ft)).matrix();
  }
  if (streams < 9) return;
  for (int a = 0; a < 4; ++a) {
    const auto ft = f.middleCols((1 + a) * b, b).array();
    const auto gt = g.middleCols((1 + a) * b, b).array();
    const auto tt = t.middleCols((1 + a) * b, b).array();
    const auto fs = f.middleCols((5 + a) * b, b).array();
    const auto gs = g.middleCols((5 + a) * b, b).array();
    const auto ts = t.middleCols((5 + a) * b, b).array();
    h.middleCols((5 + a) * b, b) =
        (fs + ts * (gv - fv) + Scalar(2) * tt * (gt - ft) + tv * (gs - fs)).matrix();
  }
}

}  // namespace

template <class S>
void SirenEngine<S>::forward(const Params& params,
                             const Eigen::Ref<const Eigen::Matrix4Xd>& coords, Deriv mode,
                             Workspace& ws, Outputs& out) const {
  const Eigen::Index batch = coords.cols();
  require(batch > 0, "empty batch");
  const int streams = mode == Deriv::none ? 1 : (mode == Deriv::first ? 5 : 9);
  const Eigen::Index sb = streams * batch;
  const int k_layers = config_.hidden_layers;
  const S w0 = static_cast<S>(config_.omega0);
  require(static_cast<int>(params.hidden_w.size()) == k_layers &&
              params.proj_w.cols() == config_.width,
          "parameter shapes disagree with the network config");

  ws.mode = mode;
  ws.batch = batch;
  ws.streams = streams;
  ws.h0.setZero(4, sb);
  for (int a = 0; a < 4; ++a) {
    const double scale = config_.norm.scale[a];
    const double offset = config_.norm.offset[a];
    for (Eigen::Index col = 0; col < batch; ++col) {
      const double u = scale * coords(a, col) + offset;
      if (!std::isfinite(u)) throw ValidationError("non-finite network input coordinate");
      ws.h0(a, col) = static_cast<S>(u);
    }
    // Tangents are seeded with the chain factor, so every derivative the
    // engine emits is already per meter / per second.
    if (streams > 1)
      ws.h0.block(a, (1 + a) * batch, 1, batch).setConstant(static_cast<S>(scale));
  }

  affine_forward(params.enc_f_w, params.enc_f_b, ws.h0, batch, ws.enc_f.z);
  sine_forward(w0, batch, streams, ws.enc_f);
  affine_forward(params.enc_g_w, params.enc_g_b, ws.h0, batch, ws.enc_g.z);
  sine_forward(w0, batch, streams, ws.enc_g);

  ws.hidden.resize(static_cast<std::size_t>(k_layers));
  ws.blend.resize(static_cast<std::size_t>(k_layers));
  for (int k = 0; k < k_layers; ++k) {
    const Mat& input = k == 0 ? ws.h0 : ws.blend[static_cast<std::size_t>(k - 1)];
    auto& st = ws.hidden[static_cast<std::size_t>(k)];
    affine_forward(params.hidden_w[static_cast<std::size_t>(k)],
                   params.hidden_b[static_cast<std::size_t>(k)], input, batch, st.z);
    sine_forward(w0, batch, streams, st);
    blend_forward(batch, streams, ws.enc_f.act, ws.enc_g.act, st.act,
                  ws.blend[static_cast<std::size_t>(k)]);
  }

  affine_forward(params.proj_w, params.proj_b, ws.blend.back(), batch, ws.out);

  out.value = ws.out.leftCols(batch);
  for (int a = 0; a < 4; ++a) {
    if (streams > 1) out.jac[a] = ws.out.middleCols((1 + a) * batch, batch);
    else out.jac[a].resize(0, 0);
    if (streams == 9) out.second[a] = ws.out.middleCols((5 + a) * batch, batch);
    else out.second[a].resize(0, 0);
  }
}

namespace {

// Reverse of sine_forward: maps the adjoint of act onto the adjoint of z.
template <class Stage, class Mat, class S>
void sine_backward(S w0, Eigen::Index b, int streams, const Stage& st, const Mat& act_bar,
                   Mat& z_bar) {
  z_bar.resize(st.z.rows(), st.z.cols());
  const auto c = st.cos_val.array();
  const auto s_val = st.act.leftCols(b).array();
  z_bar.leftCols(b) = (w0 * c * act_bar.leftCols(b).array()).matrix();
  if (streams == 1) return;
  for (int a = 0; a < 4; ++a) {
    const auto zt = st.z.middleCols((1 + a) * b, b).array();
    const auto ab_t = act_bar.middleCols((1 + a) * b, b).array();
    z_bar.middleCols((1 + a) * b, b) = (w0 * c * ab_t).matrix();
    z_bar.leftCols(b) -= (w0 * w0 * s_val * zt * ab_t).matrix();
  }
  if (streams < 9) return;
  for (int a = 0; a < 4; ++a) {
    const auto zt = st.z.middleCols((1 + a) * b, b).array();
    const auto zs = st.z.middleCols((5 + a) * b, b).array();
    const auto ab_s = act_bar.middleCols((5 + a) * b, b).array();
    z_bar.middleCols((5 + a) * b, b) = (w0 * c * ab_s).matrix();
    z_bar.leftCols(b) -=
        ((w0 * w0 * s_val * zs + w0 * w0 * w0 * c * zt.square()) * ab_s).matrix();
    z_bar.middleCols((1 + a) * b, b) -= (S(2) * w0 * w0 * s_val * zt * ab_s).matrix();
  }
}

// Reverse of blend_forward. t_bar is written, f_bar and g_bar accumulate
// because the encoders feed every hidden layer.
template <class Mat>
void blend_backward(Eigen::Index b, int streams, const Mat& f, const Mat& g, const Mat& t,
                    const Mat& h_bar, Mat& f_bar, Mat& g_bar, Mat& t_bar) {
  using Scalar = typename Mat::Scalar;
  t_bar.resize(t.rows(), t.cols());
  const auto fv = f.leftCols(b).array();
  const auto gv = g.leftCols(b).array();
  const auto tv = t.leftCols(b).array();
  const auto hb_v = h_bar.leftCols(b).array();
  f_bar.leftCols(b) += ((Scalar(1) - tv) * hb_v).matrix();
  g_bar.leftCols(b) += (tv * hb_v).matrix();
  t_bar.leftCols(b) = ((gv - fv) * hb_v).matrix();
  if (streams == 1) return;
  for (int a = 0; a < 4; ++a) {
    const auto ft = f.middleCols((1 + a) * b, b).array();
    const auto gt = g.middleCols((1 + a) * b, b).array();
    const auto tt = t.middleCols((1 + a) * b, b).array();
    const auto hb_t = h_bar.middleCols((1 + a) * b, b).array();
    f_bar.middleCols((1 + a) * b, b) += ((Scalar(1) - tv) * hb_t).matrix();
    g_bar.middleCols((1 + a) * b, b) += (tv * hb_t).matrix();
    t_bar.middleCols((1 + a) * b, b) = ((gv - fv) * hb_t).matrix();
    t_bar.leftCols(b) += ((gt - ft) * hb_t).matrix();
    g_bar.leftCols(b) += (tt * hb_t).matrix();
    f_bar.leftCols(b) -= (tt * hb_t).matrix();
  }
  if (streams < 9) return;
  for (int a = 0; a < 4; ++a) {
    const auto ft = f.middleCols((1 + a) * b, b).array();
    const auto gt = g.middleCols((1 + a) * b, b).array();
    const auto tt = t.middleCols((1 + a) * b, b).array();
    const auto fs = f.middleCols((5 + a) * b, b).array();
    const auto gs = g.middleCols((5 + a) * b, b).array();
    const auto ts = t.middleCols((5 + a) * b, b).array();
    const auto hb_s = h_bar.middleCols((5 + a) * b, b).array();
    f_bar.middleCols((5 + a) * b, b) += ((Scalar(1) - tv) * hb_s).matrix();
    g_bar.middleCols((5 + a) * b, b) += (tv * hb_s).matrix();
    t_bar.middleCols((5 + a) * b, b) = ((gv - fv) * hb_s).matrix();
    t_bar.middleCols((1 + a) * b, b) += (Scalar(2) * (gt - ft) * hb_s).matrix();
    g_bar.middleCols((1 + a) * b, b) += (Scalar(2) * tt * hb_s).matrix();
    f_bar.middleCols((1 + a) * b, b) -= (Scalar(2) * tt * hb_s).matrix();
    t_bar.leftCols(b) += ((gs - fs) * hb_s).matrix();
    g_bar.leftCols(b) += (ts * hb_s).matrix();
    f_bar.leftCols(b) -= (ts * hb_s).matrix();
  }
}

}  // namespace

template <class S>
void SirenEngine<S>::backward(const Params& params, Workspace& ws, const Adjoints& adj,
                              Params& grads) const {
  const Eigen::Index batch = ws.batch;
  if (batch == 0 || ws.out.size() == 0)
    throw StateError("backward requires intermediates from a prior forward call");
  const int streams = ws.streams;
  const Eigen::Index sb = streams * batch;
  const int k_layers = config_.hidden_layers;
  const S w0 = static_cast<S>(config_.omega0);

  Mat out_bar = Mat::Zero(4, sb);
  if (adj.value.size() > 0) out_bar.leftCols(batch) = adj.value;
  for (int a = 0; a < 4; ++a) {
    if (adj.jac[a].size() > 0) {
      if (streams <= 1)
        throw StateError("jacobian adjoints require first-order intermediates");
      out_bar.middleCols((1 + a) * batch, batch) = adj.jac[a];
    }
    if (adj.second[a].size() > 0) {
      if (streams != 9)
        throw StateError("second-order adjoints require second-order intermediates");
      out_bar.middleCols((5 + a) * batch, batch) = adj.second[a];
    }
  }

  grads.proj_w.noalias() += out_bar * ws.blend.back().transpose();
  grads.proj_b += out_bar.leftCols(batch).rowwise().sum();
  Mat h_bar = params.proj_w.transpose() * out_bar;

  ws.bar_f.setZero(config_.width, sb);
  ws.bar_g.setZero(config_.width, sb);
  Mat& t_bar = ws.bar_a;
  Mat& z_bar = ws.bar_b;

  for (int k = k_layers - 1; k >= 0; --k) {
    auto& st = ws.hidden[static_cast<std::size_t>(k)];
    blend_backward(batch, streams, ws.enc_f.act, ws.enc_g.act, st.act, h_bar, ws.bar_f,
                   ws.bar_g, t_bar);
    sine_backward(w0, batch, streams, st, t_bar, z_bar);
    const Mat& input = k == 0 ? ws.h0 : ws.blend[static_cast<std::size_t>(k - 1)];
    grads.hidden_w[static_cast<std::size_t>(k)].noalias() += z_bar * input.transpose();
    grads.hidden_b[static_cast<std::size_t>(k)] += z_bar.leftCols(batch).rowwise().sum();
    if (k > 0) h_bar.noalias() = params.hidden_w[static_cast<std::size_t>(k)].transpose() * z_bar;
  }

  sine_backward(w0, batch, streams, ws.enc_f, ws.bar_f, z_bar);
  grads.enc_f_w.noalias() += z_bar * ws.h0.transpose();
  grads.enc_f_b += z_bar.leftCols(batch).rowwise().sum();
  sine_backward(w0, batch, streams, ws.enc_g, ws.bar_g, z_bar);
  grads.enc_g_w.noalias() += z_bar * ws.h0.transpose();
  grads.enc_g_b += z_bar.leftCols(batch).rowwise().sum();
}

template <class S>
std::pair<double, Eigen::Vector3d> SirenEngine<S>::forward_one(const Params& params,
                                                               const Position& r,
                                                               double t) const {
  Eigen::Matrix4Xd coords(4, 1);
  coords << r.x, r.y, r.z, t;
  Workspace ws;
  Outputs out;
  forward(params, coords, Deriv::none, ws, out);
  Eigen::Vector3d v(static_cast<double>(out.value(1, 0)), static_cast<double>(out.value(2, 0)),
                    static_cast<double>(out.value(3, 0)));
  return {static_cast<double>(out.value(0, 0)), v};
}

template <class S>
FieldEval SirenEngine<S>::forward_with_derivatives(const Params& params, const Position& r,
                                                   double t, bool need_second) const {
  Eigen::Matrix4Xd coords(4, 1);
  coords << r.x, r.y, r.z, t;
  Workspace ws;
  Outputs out;
  forward(params, coords, need_second ? Deriv::second : Deriv::first, ws, out);

  FieldEval eval;
  eval.w = static_cast<double>(out.value(0, 0));
  eval.v = Eigen::Vector3d(static_cast<double>(out.value(1, 0)),
                           static_cast<double>(out.value(2, 0)),
                           static_cast<double>(out.value(3, 0)));
  for (int a = 0; a < 4; ++a)
    for (int o = 0; o < 4; ++o)
      eval.jac(o, a) = static_cast<double>(out.jac[a](o, 0));
  if (need_second) {
    eval.has_second = true;
    for (int a = 0; a < 4; ++a)
      eval.second_w(a) = static_cast<double>(out.second[a](0, 0));
  }
  return eval;
}

// ---------------------------------------------------------------------------
// checkpoint io

namespace {
constexpr char kCkptMagic[8] = {'F', 'P', 'N', 'N', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kCkptVersion = 1;

void write_raw(std::ofstream& out, const void* data, std::size_t bytes) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw IoError("short write to checkpoint");
}

void read_raw(std::ifstream& in, void* data, std::size_t bytes) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(bytes));
  if (in.gcount() != static_cast<std::streamsize>(bytes))
    throw IoError("truncated checkpoint");
}

template <class M>
void write_tensor(std::ofstream& out, const M& m) {
  write_raw(out, m.data(), static_cast<std::size_t>(m.size()) * sizeof(float));
}

template <class M>
void read_tensor(std::ifstream& in, M& m) {
  read_raw(in, m.data(), static_cast<std::size_t>(m.size()) * sizeof(float));
}
}  // namespace

void write_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  ckpt.config.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint " + path);

  write_raw(out, kCkptMagic, sizeof(kCkptMagic));
  write_raw(out, &kCkptVersion, sizeof(kCkptVersion));
  const std::int32_t k = ckpt.config.hidden_layers;
  const std::int32_t width = ckpt.config.width;
  write_raw(out, &k, sizeof(k));
  write_raw(out, &width, sizeof(width));
  write_raw(out, &ckpt.config.omega0, sizeof(double));
  write_raw(out, ckpt.config.norm.scale.data(), 4 * sizeof(double));
  write_raw(out, ckpt.config.norm.offset.data(), 4 * sizeof(double));
  write_raw(out, &ckpt.amplitude_scale, sizeof(double));
  write_raw(out, &ckpt.step, sizeof(std::uint64_t));

  const auto& p = ckpt.params;
  write_tensor(out, p.enc_f_w);
  write_tensor(out, p.enc_f_b);
  write_tensor(out, p.enc_g_w);
  write_tensor(out, p.enc_g_b);
  for (std::size_t i = 0; i < p.hidden_w.size(); ++i) {
    write_tensor(out, p.hidden_w[i]);
    write_tensor(out, p.hidden_b[i]);
  }
  write_tensor(out, p.proj_w);
  write_tensor(out, p.proj_b);
  write_raw(out, &p.log_eps_data, sizeof(float));
  write_raw(out, &p.log_eps_prior, sizeof(float));
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path);

  char magic[8];
  read_raw(in, magic, sizeof(magic));
  if (std::memcmp(magic, kCkptMagic, sizeof(magic)) != 0)
    throw IoError("checkpoint magic mismatch");
  std::uint32_t version = 0;
  read_raw(in, &version, sizeof(version));
  if (version != kCkptVersion) throw IoError("unsupported checkpoint version");

  Checkpoint ckpt;
  std::int32_t k = 0, width = 0;
  read_raw(in, &k, sizeof(k));
  read_raw(in, &width, sizeof(width));
  if (k < 1 || width < 1) throw IoError("checkpoint declares invalid dimensions");
  ckpt.config.hidden_layers = k;
  ckpt.config.width = width;
  read_raw(in, &ckpt.config.omega0, sizeof(double));
  read_raw(in, ckpt.config.norm.scale.data(), 4 * sizeof(double));
  read_raw(in, ckpt.config.norm.offset.data(), 4 * sizeof(double));
  read_raw(in, &ckpt.amplitude_scale, sizeof(double));
  read_raw(in, &ckpt.step, sizeof(std::uint64_t));
  ckpt.config.validate();

  auto& p = ckpt.params;
  p.set_zero(ckpt.config);
  read_tensor(in, p.enc_f_w);
  read_tensor(in, p.enc_f_b);
  read_tensor(in, p.enc_g_w);
  read_tensor(in, p.enc_g_b);
  for (std::size_t i = 0; i < p.hidden_w.size(); ++i) {
    read_tensor(in, p.hidden_w[i]);
    read_tensor(in, p.hidden_b[i]);
  }
  read_tensor(in, p.proj_w);
  read_tensor(in, p.proj_b);
  read_raw(in, &p.log_eps_data, sizeof(float));
  read_raw(in, &p.log_eps_prior, sizeof(float));

  char extra;
  in.read(&extra, 1);
  if (in.gcount() != 0) throw IoError("checkpoint has trailing bytes");
  return ckpt;
}

// explicit instantiations
template struct NetworkParamsT<float>;
template struct NetworkParamsT<double>;
template NetworkParamsT<float> NetworkParamsT<float>::cast<float>() const;
template NetworkParamsT<double> NetworkParamsT<float>::cast<double>() const;
template NetworkParamsT<float> NetworkParamsT<double>::cast<float>() const;
template NetworkParamsT<double> NetworkParamsT<double>::cast<double>() const;
template NetworkParamsT<float> init_params<float>(const NetworkConfig&, std::uint64_t);
template NetworkParamsT<double> init_params<double>(const NetworkConfig&, std::uint64_t);
template class SirenEngine<float>;
template class SirenEngine<double>;

}  // namespace foapinn
