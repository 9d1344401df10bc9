#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trajkit/agent_selection.hpp"
#include "trajkit/attention.hpp"

namespace trajkit {

struct LinearLayer {
  int out_dim = 0;
  int in_dim = 0;
  std::vector<double> weights;  // row-major, out_dim x in_dim
  std::vector<double> bias;     // out_dim

  std::vector<double> apply(std::span<const double> x) const;
};

/// Standardize with population variance (stabilizer 1e-5), then scale+shift.
std::vector<double> layer_norm(std::span<const double> x,
                               std::span<const double> scale,
                               std::span<const double> shift);

struct LayerNormParams {
  std::vector<double> scale;
  std::vector<double> shift;
};

/// Forward-only interaction encoder weights. fc_embed is shared across all
/// 5 slots.
struct EncoderWeights {
  LinearLayer fc_embed;  // 7 -> embed_dim (default 32)
  LinearLayer fc_merge;  // embed_dim -> model_dim (default 256)
  LinearLayer ffn1;      // model_dim -> model_dim
  LinearLayer ffn2;      // model_dim -> model_dim
  LayerNormParams ln_pre;
  LayerNormParams ln_post;

  void validate() const;  // throws InvalidInputError on shape mismatch

  static EncoderWeights random(uint64_t seed, int embed_dim = 32,
                               int model_dim = 256);
  static EncoderWeights from_json_file(const std::string& path);
  static EncoderWeights from_json(const std::string& text);
};

struct InteractionEmbedding {
  int t_h = 0;
  int dim = 0;
  std::vector<double> values;  // row-major, t_h x dim

  double at(int t, int i) const { return values[t * dim + i]; }
};

/// Per timestep: embed all 5 slots with the shared fc_embed, aggregate
/// z0 + sum_s alpha_s * z_s, project to model_dim, then
/// LN -> FFN (ReLU between the two linears) -> post-LN -> add residual.
InteractionEmbedding encode_interactions(const InteractionTensor& tensor,
                                         const AttentionMatrix& a,
                                         const EncoderWeights& w);

}  // namespace trajkit
