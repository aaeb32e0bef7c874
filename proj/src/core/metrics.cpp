#include "core/metrics.hpp"

#include <memory>

namespace foapinn {

namespace {
constexpr double kNmseFloorDb = -300.0;
}

SplitKind split_kind_from_name(const std::string& name) {
  if (name == "validation") return SplitKind::validation;
  if (name == "evaluation") return SplitKind::evaluation;
  throw ValidationError("unknown split '" + name + "' (expected validation|evaluation)");
}

double nmse_db(const Eigen::Ref<const Eigen::MatrixXd>& reference,
               const Eigen::Ref<const Eigen::MatrixXd>& predicted) {
  require(reference.rows() == predicted.rows() && reference.cols() == predicted.cols(),
          "reference and predicted shapes must match");
  require(reference.size() > 0, "nmse needs at least one position");
  const double den = reference.squaredNorm();
  require(den > 0.0, "nmse undefined: reference has zero energy");
  const double num = (predicted - reference).squaredNorm();
  if (num == 0.0) return kNmseFloorDb;
  return std::max(kNmseFloorDb, 10.0 * std::log10(num / den));
}

double pcc(const Eigen::Ref<const Eigen::MatrixXd>& reference,
           const Eigen::Ref<const Eigen::MatrixXd>& predicted, std::uint64_t* skipped) {
  require(reference.rows() == predicted.rows() && reference.cols() == predicted.cols(),
          "reference and predicted shapes must match");
  require(reference.rows() > 0, "pcc needs at least one position");
  double sum = 0.0;
  std::int64_t used = 0;
  std::uint64_t skip_count = 0;
  for (Eigen::Index d = 0; d < reference.rows(); ++d) {
    const Eigen::RowVectorXd r = reference.row(d).array() - reference.row(d).mean();
    const Eigen::RowVectorXd p = predicted.row(d).array() - predicted.row(d).mean();
    const double rn = r.norm(), pn = p.norm();
    if (rn == 0.0 || pn == 0.0) {
      ++skip_count;
      continue;
    }
    sum += r.dot(p) / (rn * pn);
    ++used;
  }
  if (skipped) *skipped = skip_count;
  if (used == 0) return std::numeric_limits<double>::quiet_NaN();
  return sum / static_cast<double>(used);
}

Predictor make_checkpoint_predictor(const Checkpoint& checkpoint, const Dataset& dataset) {
  checkpoint.config.validate();
  // The normalization map must cover the dataset region; querying far outside
  // the trained range is a configuration mistake, not an extrapolation.
  const auto& norm = checkpoint.config.norm;
  const TargetRegion& region = dataset.scene.region;
  const double corners[4][2] = {{region.min_corner.x, region.max_corner.x},
                                {region.min_corner.y, region.max_corner.y},
                                {region.min_corner.z, region.max_corner.z},
                                {0.0, region.time_horizon}};
  for (int a = 0; a < 4; ++a) {
    for (double p : corners[a]) {
      const double u = norm.scale[a] * p + norm.offset[a];
      require(std::abs(u) <= 1.0 + 1e-6,
              "checkpoint normalization map does not cover the dataset region");
    }
  }

  auto engine = std::make_shared<SirenEngine<float>>(checkpoint.config);
  auto params = std::make_shared<NetworkParamsT<float>>(checkpoint.params);
  const double scale = checkpoint.amplitude_scale;
  return [engine, params, scale](const Eigen::Ref<const Eigen::Matrix4Xd>& coords,
                                 Eigen::Matrix4Xd& out) {
    thread_local SirenEngine<float>::Workspace ws;
    thread_local SirenEngine<float>::Outputs raw;
    engine->forward(*params, coords, Deriv::none, ws, raw);
    out = raw.value.cast<double>() * scale;
  };
}

MetricsReport evaluate_with_predictor(const Predictor& predictor, const Dataset& dataset,
                                      SplitKind split, ThreadPool& pool) {
  dataset.validate();
  const auto& indices = split == SplitKind::validation ? dataset.split.validation
                                                       : dataset.split.evaluation;
  require(!indices.empty(), "requested split is empty");
  const std::int64_t length = dataset.length();
  const double dt = 1.0 / dataset.sample_rate();
  const double ref_scale = dataset.amplitude_scale;

  struct Partial {
    std::array<double, 4> num{}, den{};
    std::array<double, 4> pcc_sum{};
    std::array<std::int64_t, 4> pcc_used{};
    std::uint64_t skipped = 0;
  };
  const auto chunks = make_chunks(indices.size(), 8);
  std::vector<Partial> partials(chunks.size());

  pool.run_chunks(chunks.size(), [&](std::size_t c) {
    Partial& part = partials[c];
    Eigen::Matrix4Xd coords(4, length);
    Eigen::Matrix4Xd pred(4, length);
    for (std::size_t i = chunks[c].first; i < chunks[c].second; ++i) {
      const std::uint32_t d = indices[i];
      const Position& pos = dataset.positions[d];
      for (std::int64_t l = 0; l < length; ++l)
        coords.col(l) << pos.x, pos.y, pos.z, static_cast<double>(l) * dt;
      predictor(coords, pred);
      for (int ch = 0; ch < 4; ++ch) {
        const float* stored = dataset.channel(d, ch);
        double num = 0.0, den = 0.0, r_sum = 0.0, p_sum = 0.0;
        for (std::int64_t l = 0; l < length; ++l) {
          const double r = static_cast<double>(stored[l]) * ref_scale;
          const double p = pred(ch, l);
          const double e = p - r;
          num += e * e;
          den += r * r;
          r_sum += r;
          p_sum += p;
        }
        part.num[ch] += num;
        part.den[ch] += den;

        const double r_mean = r_sum / static_cast<double>(length);
        const double p_mean = p_sum / static_cast<double>(length);
        double rr = 0.0, pp = 0.0, rp = 0.0;
        for (std::int64_t l = 0; l < length; ++l) {
          const double r = static_cast<double>(stored[l]) * ref_scale - r_mean;
          const double p = pred(ch, l) - p_mean;
          rr += r * r;
          pp += p * p;
          rp += r * p;
        }
        if (rr == 0.0 || pp == 0.0) {
          ++part.skipped;
        } else {
          part.pcc_sum[ch] += rp / std::sqrt(rr * pp);
          ++part.pcc_used[ch];
        }
      }
    }
  });

  Partial total;
  for (const Partial& p : partials) {
    for (int ch = 0; ch < 4; ++ch) {
      total.num[ch] += p.num[ch];
      total.den[ch] += p.den[ch];
      total.pcc_sum[ch] += p.pcc_sum[ch];
      total.pcc_used[ch] += p.pcc_used[ch];
    }
    total.skipped += p.skipped;
  }

  MetricsReport report;
  report.skipped_zero_variance = total.skipped;
  for (int ch = 0; ch < 4; ++ch) {
    require(total.den[ch] > 0.0, "nmse undefined: reference channel has zero energy");
    report.nmse_channel_db[ch] =
        total.num[ch] == 0.0
            ? kNmseFloorDb
            : std::max(kNmseFloorDb, 10.0 * std::log10(total.num[ch] / total.den[ch]));
    report.pcc_channel[ch] = total.pcc_used[ch] == 0
                                 ? std::numeric_limits<double>::quiet_NaN()
                                 : total.pcc_sum[ch] / static_cast<double>(total.pcc_used[ch]);
  }
  report.nmse_w_db = report.nmse_channel_db[0];
  report.nmse_xyz_db = (report.nmse_channel_db[1] + report.nmse_channel_db[2] +
                        report.nmse_channel_db[3]) /
                       3.0;
  report.pcc_w = report.pcc_channel[0];
  report.pcc_xyz =
      (report.pcc_channel[1] + report.pcc_channel[2] + report.pcc_channel[3]) / 3.0;
  return report;
}

MetricsReport evaluate(const Checkpoint& checkpoint, const Dataset& dataset, SplitKind split,
                       ThreadPool& pool) {
  return evaluate_with_predictor(make_checkpoint_predictor(checkpoint, dataset), dataset,
                                 split, pool);
}

}  // namespace foapinn
