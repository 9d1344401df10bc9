#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "trajkit/encoder.hpp"

using namespace trajkit;

namespace {

// Independent, naive reimplementations used as oracles.
std::vector<double> naive_linear(const LinearLayer& l,
                                 const std::vector<double>& x) {
  std::vector<double> y(size_t(l.out_dim));
  for (int r = 0; r < l.out_dim; ++r) {
    y[size_t(r)] = l.bias[size_t(r)];
    for (int c = 0; c < l.in_dim; ++c) {
      y[size_t(r)] += l.weights[size_t(r) * size_t(l.in_dim) + size_t(c)] *
                      x[size_t(c)];
    }
  }
  return y;
}

std::vector<double> naive_layer_norm(const std::vector<double>& x,
                                     const std::vector<double>& scale,
                                     const std::vector<double>& shift) {
  double mean = 0.0, var = 0.0;
  for (double v : x) mean += v;
  mean /= double(x.size());
  for (double v : x) var += (v - mean) * (v - mean);
  var /= double(x.size());
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    y[i] = (x[i] - mean) / std::sqrt(var + 1e-5) * scale[i] + shift[i];
  }
  return y;
}

InteractionTensor random_tensor(std::mt19937_64& rng, int t_h) {
  InteractionTensor t;
  t.t_h = t_h;
  for (auto& slot : t.slots) slot.assign(size_t(t_h), {});
  for (auto& m : t.mask) m.assign(size_t(t_h), false);
  for (int i = 0; i < t_h; ++i) {
    for (int s = 0; s < 5; ++s) {
      const bool on = s == 0 || testutil::uniform(rng, 0, 1) < 0.7;
      if (!on) continue;
      if (s > 0) t.mask[size_t(s) - 1][size_t(i)] = true;
      for (double& v : t.slots[size_t(s)][size_t(i)]) {
        v = testutil::uniform(rng, -5, 5);
      }
    }
  }
  return t;
}

AttentionMatrix uniform_attention(const InteractionTensor& t) {
  AttentionMatrix a;
  a.t_h = t.t_h;
  for (auto& row : a.alpha) row.assign(size_t(t.t_h), 0.0);
  for (int i = 0; i < t.t_h; ++i) {
    int n = 0;
    for (int c = 0; c < 4; ++c) n += t.populated(c, i) ? 1 : 0;
    for (int c = 0; c < 4; ++c) {
      if (t.populated(c, i)) a.alpha[size_t(c)][size_t(i)] = 1.0 / n;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("LinearLayer matches a naive matrix-vector product") {
  std::mt19937_64 rng(7);
  LinearLayer l{3, 4, {}, {}};
  l.weights.resize(12);
  l.bias.resize(3);
  for (auto& v : l.weights) v = testutil::uniform(rng, -2, 2);
  for (auto& v : l.bias) v = testutil::uniform(rng, -2, 2);
  const std::vector<double> x{1.5, -0.5, 2.0, 0.25};
  const auto got = l.apply(x);
  const auto want = naive_linear(l, x);
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(l.apply(std::vector<double>{1.0, 2.0}), InvalidInputError);
}

TEST_CASE("layer_norm known values and properties") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> ones(4, 1.0), zeros(4, 0.0);
  const auto y = layer_norm(x, ones, zeros);

  // mean 2.5, population variance 1.25
  const double inv = 1.0 / std::sqrt(1.25 + 1e-5);
  CHECK(y[0] == doctest::Approx(-1.5 * inv).epsilon(1e-14));
  CHECK(y[3] == doctest::Approx(1.5 * inv).epsilon(1e-14));

  double mean = 0.0;
  for (double v : y) mean += v;
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-12));

  // Constant input: zero-centered everywhere, shift passes through.
  const std::vector<double> c(4, 7.0), shift{1, 2, 3, 4};
  const auto yc = layer_norm(c, ones, shift);
  for (size_t i = 0; i < 4; ++i) CHECK(yc[i] == doctest::Approx(shift[i]));

  CHECK_THROWS_AS(layer_norm(x, std::vector<double>(3, 1.0), zeros),
                  InvalidInputError);
}

TEST_CASE("random weights: deterministic, bounded, identity layer norms") {
  const auto w1 = EncoderWeights::random(99, 8, 16);
  const auto w2 = EncoderWeights::random(99, 8, 16);
  CHECK(w1.fc_embed.weights == w2.fc_embed.weights);
  CHECK(w1.ffn2.bias == w2.ffn2.bias);

  const auto w3 = EncoderWeights::random(100, 8, 16);
  CHECK(w1.fc_embed.weights != w3.fc_embed.weights);

  for (double v : w1.fc_merge.weights) {
    CHECK(v >= -0.1);
    CHECK(v < 0.1);
  }
  for (double v : w1.ln_pre.scale) CHECK(v == 1.0);
  for (double v : w1.ln_post.shift) CHECK(v == 0.0);
  CHECK(w1.fc_embed.in_dim == 7);
  CHECK(w1.fc_merge.out_dim == 16);
}

TEST_CASE("weights JSON parsing") {
  const char* text = R"({
    "fc_embed": {"w": [[1,0,0,0,0,0,0],[0,1,0,0,0,0,0]], "b": [0,0]},
    "fc_merge": {"w": [[1,0],[0,1],[1,1]], "b": [0,0,0]},
    "ffn1": {"w": [[1,0,0],[0,1,0],[0,0,1]], "b": [0,0,0]},
    "ffn2": {"w": [[1,0,0],[0,1,0],[0,0,1]], "b": [0,0,0]},
    "ln_pre":  {"scale": [1,1,1], "shift": [0,0,0]},
    "ln_post": {"scale": [1,1,1], "shift": [0,0,0]}
  })";
  const auto w = EncoderWeights::from_json(text);
  CHECK(w.fc_embed.out_dim == 2);
  CHECK(w.fc_merge.out_dim == 3);
  CHECK(w.fc_embed.weights[0] == 1.0);

  CHECK_THROWS_AS(EncoderWeights::from_json("{"), InvalidInputError);
  CHECK_THROWS_AS(EncoderWeights::from_json("{}"), InvalidInputError);
  // ragged matrix
  CHECK_THROWS_AS(EncoderWeights::from_json(
                      R"({"fc_embed": {"w": [[1,2],[3]], "b": [0,0]}})"),
                  InvalidInputError);
}

TEST_CASE("forward pass matches an independent reimplementation") {
  std::mt19937_64 rng(31);
  const auto w = EncoderWeights::random(5, 4, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tensor = random_tensor(rng, 5);
    const auto a = uniform_attention(tensor);
    const auto got = encode_interactions(tensor, a, w);
    CHECK(got.t_h == 5);
    CHECK(got.dim == 6);

    for (int t = 0; t < 5; ++t) {
      std::vector<double> agg = naive_linear(
          w.fc_embed, {tensor.slots[0][size_t(t)].begin(),
                       tensor.slots[0][size_t(t)].end()});
      for (int s = 0; s < 4; ++s) {
        if (!tensor.populated(s, t)) continue;
        const auto z = naive_linear(
            w.fc_embed, {tensor.slots[size_t(s) + 1][size_t(t)].begin(),
                         tensor.slots[size_t(s) + 1][size_t(t)].end()});
        for (size_t i = 0; i < z.size(); ++i) agg[i] += a.at(s, t) * z[i];
      }
      const auto merged = naive_linear(w.fc_merge, agg);
      auto h = naive_layer_norm(merged, w.ln_pre.scale, w.ln_pre.shift);
      h = naive_linear(w.ffn1, h);
      for (double& v : h) v = v > 0.0 ? v : 0.0;
      h = naive_linear(w.ffn2, h);
      h = naive_layer_norm(h, w.ln_post.scale, w.ln_post.shift);
      for (int i = 0; i < 6; ++i) {
        CHECK(got.at(t, i) ==
              doctest::Approx(h[size_t(i)] + merged[size_t(i)]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("masked slots never influence the embedding") {
  std::mt19937_64 rng(32);
  const auto w = EncoderWeights::random(6, 4, 6);
  auto tensor = random_tensor(rng, 3);
  auto a = uniform_attention(tensor);

  // Garbage in a masked slot must be invisible.
  for (int t = 0; t < 3; ++t) {
    for (int c = 0; c < 4; ++c) {
      if (!tensor.populated(c, t)) {
        for (double& v : tensor.slots[size_t(c) + 1][size_t(t)]) v = 1e9;
      }
    }
  }
  auto tensor_zeroed = tensor;
  for (int t = 0; t < 3; ++t) {
    for (int c = 0; c < 4; ++c) {
      if (!tensor_zeroed.populated(c, t)) {
        tensor_zeroed.slots[size_t(c) + 1][size_t(t)] = {};
      }
    }
  }
  const auto e1 = encode_interactions(tensor, a, w);
  const auto e2 = encode_interactions(tensor_zeroed, a, w);
  CHECK(e1.values == e2.values);
}

TEST_CASE("t_h mismatch between attention and tensor is rejected") {
  std::mt19937_64 rng(33);
  const auto w = EncoderWeights::random(6, 4, 6);
  const auto tensor = random_tensor(rng, 3);
  AttentionMatrix a = uniform_attention(tensor);
  a.t_h = 2;
  CHECK_THROWS_AS(encode_interactions(tensor, a, w), InvalidInputError);
}
