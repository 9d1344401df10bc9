#pragma once

#include <array>
#include <vector>

#include "trajkit/agent_selection.hpp"
#include "trajkit/geometry.hpp"

namespace trajkit {

/// Which parts of the closeness formula are active. The full index is
/// (1/d) * (d - d_plus + eps)/(tau + eps); the variants keep one factor.
enum class CoefficientVariant {
  kDistanceOnly,  // 1/d
  kApproachOnly,  // (d - d_plus + eps)/(tau + eps)
  kFull,
};

struct CoefficientConfig {
  double horizon_T = 30.0;  // s, upper bound for tau
  double epsilon = 1.0;
  CoefficientVariant variant = CoefficientVariant::kFull;
};

/// Closeness of `other` to `target` under CA extrapolation: combines the
/// current distance with the distance shed per unit time until closest
/// approach. Negative values (strongly receding agents) are clamped to 0
/// by the caller before normalization. Throws DegenerateGeometryError for
/// collocated agents.
double closeness_index(const CaState& target, const CaState& other,
                       const CoefficientConfig& cfg);

/// Normalize per-category closeness values into attention scores summing
/// to 1 over populated categories. All-zero or fully masked input yields
/// all zeros. Negative input is rejected.
std::array<double, kNumCategories> normalize_scores(
    const std::array<double, kNumCategories>& c,
    const std::array<bool, kNumCategories>& populated);

/// The 4 x T_h physical attention weights, rows ordered SL, FL, FF, ML.
/// Populated columns sum to 1; fully masked columns are all-zero.
struct AttentionMatrix {
  int t_h = 0;
  std::array<std::vector<double>, kNumCategories> alpha;

  double at(int category, int t) const { return alpha[category][t]; }
};

AttentionMatrix attention_matrix(const InteractionTensor& tensor,
                                 const CoefficientConfig& cfg);

/// CSV rendering: rows SL,FL,FF,ML; columns t = -T_h+1 .. 0.
std::string attention_to_csv(const AttentionMatrix& a);

}  // namespace trajkit
