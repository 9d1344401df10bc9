#include "trajkit/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajkit {

namespace {

PredictionSet rollout(const AgentState& last, int t_f, double dt,
                      bool with_accel) {
  if (t_f < 1) throw InvalidInputError("rollout: t_f must be >= 1");
  if (!(dt > 0.0)) throw InvalidInputError("rollout: dt must be positive");
  PredictionSet out;
  out.t_f = t_f;
  out.modes.resize(1);
  out.modes[0].reserve(static_cast<size_t>(t_f));
  CaState s = last.ca();
  if (!with_accel) s.acceleration = {0.0, 0.0};
  for (int k = 1; k <= t_f; ++k) {
    out.modes[0].push_back(ca_propagate(s, k * dt));
  }
  return out;
}

double mode_sum_error(const std::vector<Vec2>& mode,
                      const std::vector<Vec2>& gt) {
  double sum = 0.0;
  for (size_t t = 0; t < gt.size(); ++t) {
    sum += (mode[t] - gt[t]).norm();
  }
  return sum;
}

void check_shapes(const PredictionSet& pred, const std::vector<Vec2>& gt) {
  if (pred.k() < 1) throw InvalidInputError("prediction set has no modes");
  if (gt.size() != static_cast<size_t>(pred.t_f)) {
    throw InvalidInputError("ground truth length != T_f");
  }
  for (const auto& m : pred.modes) {
    if (m.size() != static_cast<size_t>(pred.t_f)) {
      throw InvalidInputError("mode length != T_f");
    }
  }
}

}  // namespace

PredictionSet predict_cv(const std::vector<AgentState>& history, int t_f,
                         double dt) {
  if (history.empty()) throw InvalidInputError("predict_cv: empty history");
  return rollout(history.back(), t_f, dt, /*with_accel=*/false);
}

PredictionSet predict_ca(const std::vector<AgentState>& history, int t_f,
                         double dt) {
  if (history.empty()) throw InvalidInputError("predict_ca: empty history");
  return rollout(history.back(), t_f, dt, /*with_accel=*/true);
}

PredictionSet reparameterize(const GaussianParams& g) {
  PredictionSet out;
  out.t_f = g.t_f;
  out.modes.resize(static_cast<size_t>(g.k));
  for (int k = 0; k < g.k; ++k) {
    const auto& mu = g.mu.at(static_cast<size_t>(k));
    const auto& sigma = g.sigma.at(static_cast<size_t>(k));
    const auto& z = g.z.at(static_cast<size_t>(k));
    auto& mode = out.modes[static_cast<size_t>(k)];
    mode.resize(static_cast<size_t>(g.t_f));
    for (int t = 0; t < g.t_f; ++t) {
      const size_t i = static_cast<size_t>(t);
      if (!(sigma[i] >= 0.0)) {
        throw InvalidInputError("reparameterize: negative sigma");
      }
      mode[i] = mu[i] + sigma[i] * z[i];
    }
  }
  return out;
}

double loss_distance(const PredictionSet& pred, const std::vector<Vec2>& gt) {
  check_shapes(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mode : pred.modes) {
    best = std::min(best, mode_sum_error(mode, gt));
  }
  return best / static_cast<double>(pred.t_f);
}

double loss_diversity(const PredictionSet& pred, const std::vector<Vec2>& gt,
                      double sigma_scalar) {
  check_shapes(pred, gt);
  if (!(sigma_scalar > 0.0)) {
    throw InvalidInputError("loss_diversity: sigma must be positive");
  }
  double sum = 0.0;
  for (const auto& mode : pred.modes) {
    sum += mode_sum_error(mode, gt);
  }
  const double var = sigma_scalar * sigma_scalar;
  return sum / (var * pred.k() * pred.t_f) + std::log(var);
}

double min_ade(const PredictionSet& pred, const std::vector<Vec2>& gt) {
  check_shapes(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mode : pred.modes) {
    best = std::min(best, mode_sum_error(mode, gt) / pred.t_f);
  }
  return best;
}

double min_fde(const PredictionSet& pred, const std::vector<Vec2>& gt) {
  check_shapes(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mode : pred.modes) {
    best = std::min(best, (mode.back() - gt.back()).norm());
  }
  return best;
}

double rmse(const std::vector<PredictionSet>& preds,
            const std::vector<std::vector<Vec2>>& gts) {
  if (preds.size() != gts.size() || preds.empty()) {
    throw InvalidInputError("rmse: mismatched or empty sample lists");
  }
  double sum_sq = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    check_shapes(preds[i], gts[i]);
    if (preds[i].k() != 1) {
      throw InvalidInputError("rmse: unimodal predictions required");
    }
    for (size_t t = 0; t < gts[i].size(); ++t) {
      sum_sq += (preds[i].modes[0][t] - gts[i][t]).norm_sq();
      ++count;
    }
  }
  return std::sqrt(sum_sq / static_cast<double>(count));
}

std::vector<double> rmse_bucketed(const std::vector<PredictionSet>& preds,
                                  const std::vector<std::vector<Vec2>>& gts,
                                  double dt) {
  if (preds.size() != gts.size() || preds.empty()) {
    throw InvalidInputError("rmse_bucketed: mismatched or empty sample lists");
  }
  if (!(dt > 0.0)) throw InvalidInputError("rmse_bucketed: dt must be positive");
  const int t_f = preds[0].t_f;
  const int n_buckets =
      static_cast<int>(std::floor(t_f * dt + 1e-9));
  std::vector<double> sum_sq(static_cast<size_t>(n_buckets), 0.0);
  std::vector<size_t> count(static_cast<size_t>(n_buckets), 0);
  for (size_t i = 0; i < preds.size(); ++i) {
    check_shapes(preds[i], gts[i]);
    for (int t = 0; t < preds[i].t_f; ++t) {
      // Step t covers time (t+1)*dt; bucket b holds ((b)s, (b+1)s].
      const double time = (t + 1) * dt;
      const int b = static_cast<int>(std::ceil(time - 1e-9)) - 1;
      if (b < 0 || b >= n_buckets) continue;
      sum_sq[static_cast<size_t>(b)] +=
          (preds[i].modes[0][static_cast<size_t>(t)] -
           gts[i][static_cast<size_t>(t)]).norm_sq();
      ++count[static_cast<size_t>(b)];
    }
  }
  std::vector<double> out(static_cast<size_t>(n_buckets), 0.0);
  for (int b = 0; b < n_buckets; ++b) {
    if (count[static_cast<size_t>(b)] > 0) {
      out[static_cast<size_t>(b)] = std::sqrt(
          sum_sq[static_cast<size_t>(b)] /
          static_cast<double>(count[static_cast<size_t>(b)]));
    }
  }
  return out;
}

}  // namespace trajkit
