#include "trajkit/encoder.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace trajkit {

std::vector<double> LinearLayer::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != in_dim) {
    throw InvalidInputError("LinearLayer: input dim " +
                            std::to_string(x.size()) + " != " +
                            std::to_string(in_dim));
  }
  std::vector<double> y(static_cast<size_t>(out_dim));
  for (int r = 0; r < out_dim; ++r) {
    double acc = bias[static_cast<size_t>(r)];
    const double* w = &weights[static_cast<size_t>(r) * in_dim];
    for (int c = 0; c < in_dim; ++c) acc += w[c] * x[static_cast<size_t>(c)];
    y[static_cast<size_t>(r)] = acc;
  }
  return y;
}

std::vector<double> layer_norm(std::span<const double> x,
                               std::span<const double> scale,
                               std::span<const double> shift) {
  const size_t n = x.size();
  if (scale.size() != n || shift.size() != n) {
    throw InvalidInputError("layer_norm: dim mismatch");
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);  // population variance
  const double inv = 1.0 / std::sqrt(var + 1e-5);
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) {
    y[i] = (x[i] - mean) * inv * scale[i] + shift[i];
  }
  return y;
}

namespace {

void check_layer(const LinearLayer& l, int in, int out, const char* name) {
  if (l.in_dim != in || l.out_dim != out ||
      l.weights.size() != static_cast<size_t>(in) * static_cast<size_t>(out) ||
      l.bias.size() != static_cast<size_t>(out)) {
    throw InvalidInputError(std::string("EncoderWeights: bad shape for ") +
                            name);
  }
  for (double v : l.weights) {
    if (!std::isfinite(v)) {
      throw InvalidInputError(std::string("EncoderWeights: non-finite ") +
                              name);
    }
  }
}

}  // namespace

void EncoderWeights::validate() const {
  const int e = fc_embed.out_dim;
  const int m = fc_merge.out_dim;
  check_layer(fc_embed, 7, e, "fc_embed");
  check_layer(fc_merge, e, m, "fc_merge");
  check_layer(ffn1, m, m, "ffn1");
  check_layer(ffn2, m, m, "ffn2");
  if (ln_pre.scale.size() != static_cast<size_t>(m) ||
      ln_pre.shift.size() != static_cast<size_t>(m) ||
      ln_post.scale.size() != static_cast<size_t>(m) ||
      ln_post.shift.size() != static_cast<size_t>(m)) {
    throw InvalidInputError("EncoderWeights: bad layer-norm dims");
  }
}

EncoderWeights EncoderWeights::random(uint64_t seed, int embed_dim,
                                      int model_dim) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) / 9007199254740992.0) * 0.2 - 0.1;
  };
  auto make = [&](int in, int out) {
    LinearLayer l{out, in, {}, {}};
    l.weights.resize(static_cast<size_t>(in) * out);
    l.bias.resize(static_cast<size_t>(out));
    for (auto& v : l.weights) v = uniform();
    for (auto& v : l.bias) v = uniform();
    return l;
  };
  EncoderWeights w;
  w.fc_embed = make(7, embed_dim);
  w.fc_merge = make(embed_dim, model_dim);
  w.ffn1 = make(model_dim, model_dim);
  w.ffn2 = make(model_dim, model_dim);
  w.ln_pre.scale.assign(static_cast<size_t>(model_dim), 1.0);
  w.ln_pre.shift.assign(static_cast<size_t>(model_dim), 0.0);
  w.ln_post.scale.assign(static_cast<size_t>(model_dim), 1.0);
  w.ln_post.shift.assign(static_cast<size_t>(model_dim), 0.0);
  w.validate();
  return w;
}

namespace {

LinearLayer layer_from_json(const nlohmann::json& j) {
  LinearLayer l;
  const auto& w = j.at("w");
  l.out_dim = static_cast<int>(w.size());
  for (const auto& row : w) {
    if (l.in_dim == 0) l.in_dim = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != l.in_dim) {
      throw InvalidInputError("EncoderWeights: ragged weight matrix");
    }
    for (const auto& v : row) l.weights.push_back(v.get<double>());
  }
  for (const auto& v : j.at("b")) l.bias.push_back(v.get<double>());
  return l;
}

std::vector<double> vec_from_json(const nlohmann::json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

}  // namespace

EncoderWeights EncoderWeights::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    EncoderWeights w;
    w.fc_embed = layer_from_json(doc.at("fc_embed"));
    w.fc_merge = layer_from_json(doc.at("fc_merge"));
    w.ffn1 = layer_from_json(doc.at("ffn1"));
    w.ffn2 = layer_from_json(doc.at("ffn2"));
    w.ln_pre.scale = vec_from_json(doc.at("ln_pre").at("scale"));
    w.ln_pre.shift = vec_from_json(doc.at("ln_pre").at("shift"));
    w.ln_post.scale = vec_from_json(doc.at("ln_post").at("scale"));
    w.ln_post.shift = vec_from_json(doc.at("ln_post").at("shift"));
    w.validate();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("weights JSON: ") + e.what());
  }
}

EncoderWeights EncoderWeights::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open weights file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

InteractionEmbedding encode_interactions(const InteractionTensor& tensor,
                                         const AttentionMatrix& a,
                                         const EncoderWeights& w) {
  w.validate();
  if (a.t_h != tensor.t_h) {
    throw InvalidInputError("encode_interactions: attention/tensor t_h mismatch");
  }
  const int embed_dim = w.fc_embed.out_dim;
  const int model_dim = w.fc_merge.out_dim;

  InteractionEmbedding out;
  out.t_h = tensor.t_h;
  out.dim = model_dim;
  out.values.resize(static_cast<size_t>(tensor.t_h) * model_dim);

  for (int t = 0; t < tensor.t_h; ++t) {
    // z0 + sum_s alpha_s * z_s, shared embedding across slots.
    std::vector<double> agg =
        w.fc_embed.apply(tensor.slots[0][static_cast<size_t>(t)]);
    for (int s = 0; s < kNumCategories; ++s) {
      if (!tensor.populated(s, t)) continue;
      const double alpha = a.at(s, t);
      const auto z =
          w.fc_embed.apply(tensor.slots[static_cast<size_t>(s) + 1]
                                       [static_cast<size_t>(t)]);
      for (int i = 0; i < embed_dim; ++i) {
        agg[static_cast<size_t>(i)] += alpha * z[static_cast<size_t>(i)];
      }
    }
    const std::vector<double> merged = w.fc_merge.apply(agg);
    std::vector<double> h = layer_norm(merged, w.ln_pre.scale, w.ln_pre.shift);
    h = w.ffn1.apply(h);
    for (double& v : h) v = std::max(v, 0.0);  // ReLU
    h = w.ffn2.apply(h);
    h = layer_norm(h, w.ln_post.scale, w.ln_post.shift);
    for (int i = 0; i < model_dim; ++i) {
      out.values[static_cast<size_t>(t) * model_dim + i] =
          h[static_cast<size_t>(i)] + merged[static_cast<size_t>(i)];
    }
  }
  return out;
}

}  // namespace trajkit
