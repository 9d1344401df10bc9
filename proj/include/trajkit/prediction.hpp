#pragma once

#include <vector>

#include "trajkit/scene.hpp"

namespace trajkit {

/// K multimodal predicted trajectories, each T_f xy positions.
struct PredictionSet {
  int t_f = 0;
  std::vector<std::vector<Vec2>> modes;  // K x T_f

  int k() const { return static_cast<int>(modes.size()); }
};

struct GaussianParams {
  int k = 0;
  int t_f = 0;
  std::vector<std::vector<Vec2>> mu;      // K x T_f
  std::vector<std::vector<double>> sigma; // K x T_f, > 0
  std::vector<std::vector<Vec2>> z;       // K x T_f
};

/// Constant-velocity rollout from the last observed state (K=1).
PredictionSet predict_cv(const std::vector<AgentState>& history, int t_f,
                         double dt);

/// Constant-acceleration rollout from the last observed state (K=1).
PredictionSet predict_ca(const std::vector<AgentState>& history, int t_f,
                         double dt);

/// Elementwise mu + sigma * z (sigma broadcast over the xy axis).
PredictionSet reparameterize(const GaussianParams& g);

/// Winner-takes-all reconstruction loss: (1/T_f) * min over modes of the
/// summed per-step Euclidean errors.
double loss_distance(const PredictionSet& pred, const std::vector<Vec2>& gt);

/// Diversity term: sum of all per-step errors over all modes divided by
/// (sigma^2 * K * T_f), plus log(sigma^2). sigma is the caller-supplied
/// scalar variance statistic.
double loss_diversity(const PredictionSet& pred, const std::vector<Vec2>& gt,
                      double sigma_scalar);

/// Minimum over modes of the mean per-step displacement error.
double min_ade(const PredictionSet& pred, const std::vector<Vec2>& gt);

/// Minimum over modes of the final-point displacement error.
double min_fde(const PredictionSet& pred, const std::vector<Vec2>& gt);

/// sqrt of the mean squared per-step distance over all samples and steps.
/// Unimodal predictions only (K=1 each).
double rmse(const std::vector<PredictionSet>& preds,
            const std::vector<std::vector<Vec2>>& gts);

/// RMSE restricted to the steps inside each 1-second horizon bucket
/// ((b-1)s, bs]. Returns one value per whole second of the horizon.
std::vector<double> rmse_bucketed(const std::vector<PredictionSet>& preds,
                                  const std::vector<std::vector<Vec2>>& gts,
                                  double dt);

}  // namespace trajkit
