#include "trajkit/attention.hpp"

#include <cmath>
#include <sstream>

namespace trajkit {

double closeness_index(const CaState& target, const CaState& other,
                       const CoefficientConfig& cfg) {
  if (!target.finite() || !other.finite()) {
    throw InvalidInputError("closeness_index: non-finite state");
  }
  const double d_now = (other.position - target.position).norm();
  if (d_now == 0.0) {
    throw DegenerateGeometryError("closeness_index: collocated agents");
  }
  if (cfg.variant == CoefficientVariant::kDistanceOnly) {
    return 1.0 / d_now;
  }
  const double tau = closest_approach_time(target, other);
  const double tau_bar = clamp_tau(tau, cfg.horizon_T);
  const double d_plus = closest_distance(target, other, tau_bar);
  const double approach =
      (d_now - d_plus + cfg.epsilon) / (tau_bar + cfg.epsilon);
  if (cfg.variant == CoefficientVariant::kApproachOnly) return approach;
  return approach / d_now;
}

std::array<double, kNumCategories> normalize_scores(
    const std::array<double, kNumCategories>& c,
    const std::array<bool, kNumCategories>& populated) {
  double sum = 0.0;
  for (int i = 0; i < kNumCategories; ++i) {
    if (!populated[static_cast<size_t>(i)]) continue;
    const double ci = c[static_cast<size_t>(i)];
    if (ci < 0.0) {
      throw InvalidInputError("normalize_scores: negative closeness");
    }
    sum += ci;
  }
  std::array<double, kNumCategories> alpha{};
  if (sum <= 0.0) return alpha;  // empty or all-zero column
  for (int i = 0; i < kNumCategories; ++i) {
    if (populated[static_cast<size_t>(i)]) {
      alpha[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] / sum;
    }
  }
  return alpha;
}

namespace {

CaState slot_state(const InteractionTensor& tensor, int slot, int t) {
  const auto& v = tensor.slots[static_cast<size_t>(slot)][static_cast<size_t>(t)];
  return {{v[0], v[1]}, {v[3], v[4]}, {v[5], v[6]}};
}

}  // namespace

AttentionMatrix attention_matrix(const InteractionTensor& tensor,
                                 const CoefficientConfig& cfg) {
  AttentionMatrix out;
  out.t_h = tensor.t_h;
  for (auto& row : out.alpha) {
    row.assign(static_cast<size_t>(tensor.t_h), 0.0);
  }
  for (int t = 0; t < tensor.t_h; ++t) {
    const CaState target = slot_state(tensor, 0, t);
    std::array<double, kNumCategories> c{};
    std::array<bool, kNumCategories> populated{};
    for (int s = 0; s < kNumCategories; ++s) {
      if (!tensor.populated(s, t)) continue;
      populated[static_cast<size_t>(s)] = true;
      double ci;
      try {
        ci = closeness_index(target, slot_state(tensor, s + 1, t), cfg);
      } catch (const DegenerateGeometryError& e) {
        throw DegenerateGeometryError(std::string(e.what()) + " at t=" +
                                      std::to_string(t - tensor.t_h + 1) +
                                      " category=" + kCategoryNames[s]);
      }
      // A receding agent can push the formula negative; it exerts no
      // attention rather than a repulsive weight.
      c[static_cast<size_t>(s)] = std::max(ci, 0.0);
    }
    const auto alpha = normalize_scores(c, populated);
    for (int s = 0; s < kNumCategories; ++s) {
      out.alpha[static_cast<size_t>(s)][static_cast<size_t>(t)] =
          alpha[static_cast<size_t>(s)];
    }
  }
  return out;
}

std::string attention_to_csv(const AttentionMatrix& a) {
  std::ostringstream os;
  os << "category";
  for (int t = 0; t < a.t_h; ++t) os << ",t=" << (t - a.t_h + 1);
  os << "\n";
  os.precision(17);
  for (int s = 0; s < kNumCategories; ++s) {
    os << kCategoryNames[s];
    for (int t = 0; t < a.t_h; ++t) os << "," << a.at(s, t);
    os << "\n";
  }
  return os.str();
}

}  // namespace trajkit
