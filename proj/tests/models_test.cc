// tests/models_test.cc

// Copyright 2026  The scar-efd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "scar/attention.h"
#include "scar/checkpoint.h"
#include "scar/model.h"
#include "scar/ops.h"

namespace scar::models {
namespace {

Tensor<double> random_tensor(Shape shape, Rng& rng) {
  Tensor<double> t(std::move(shape));
  for (auto& v : t.values()) v = rng.normal();
  return t;
}

oracle::Mat to_mat(const Tensor<double>& t, std::size_t rows,
                   std::size_t cols, std::size_t offset = 0) {
  oracle::Mat m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.v[i] = t[offset + i];
  return m;
}

TEST(ModelConfig, ParameterCountsMatchLayerSums) {
  for (std::uint32_t d : {6u, 512u, 768u, 1024u}) {
    EXPECT_EQ(parameter_count(fcn_config(d)),
              oracle::fcn_params(d));
  }
  for (std::uint32_t t : {4u, 16u, 32u}) {
    EXPECT_EQ(parameter_count(cnn_config(768, t)),
              oracle::cnn_params(t));
    EXPECT_EQ(parameter_count(concat_config(768, 1024, t)),
              oracle::concat_params(t));
    EXPECT_EQ(parameter_count(scar_config(512, 1024, t)),
              oracle::scar_params(t));
  }
  EXPECT_EQ(oracle::fcn_params(768), 459521u);
  EXPECT_EQ(oracle::cnn_params(32), 590721u);
  EXPECT_EQ(oracle::concat_params(32), 1115137u);
  EXPECT_EQ(oracle::scar_params(32), 1127425u);
}

TEST(ModelConfig, ValidationErrors) {
  EXPECT_THROW(fcn_config(0).validate(), ConfigError);
  EXPECT_THROW(cnn_config(16, 32).validate(), ConfigError);
  auto c = scar_config(64, 64);
  c.heads_cross = 3;
  EXPECT_THROW(c.validate(), ConfigError);
  c = concat_config(64, 0);
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(parse_model_kind("rnn"), ConfigError);
  EXPECT_EQ(parse_model_kind("scar"), ModelKind::kScar);
}

TEST(ModelConfig, ScarLayoutHasTwelveSquareProjections) {
  std::size_t projections = 0;
  for (const auto& p : parameter_layout(scar_config(64, 80))) {
    if (p.name.rfind("cross", 0) == 0) {
      ++projections;
      EXPECT_EQ(p.shape, (Shape{32, 32}));
    }
  }
  EXPECT_EQ(projections, 12u);
}

TEST(Model, GlorotVarianceAndZeroBias) {
  Rng rng(77);
  Model<float> m(scar_config(768, 1024), rng);
  for (std::size_t i = 0; i < m.params().size(); ++i) {
    const auto& spec = m.layout()[i];
    const auto& values = m.params()[i].values();
    if (spec.is_bias) {
      for (float v : values) ASSERT_EQ(v, 0.0f) << spec.name;
      continue;
    }
    const double limit = std::sqrt(6.0 / (spec.fan_in + spec.fan_out));
    double s2 = 0;
    for (float v : values) {
      ASSERT_LE(std::abs(v), limit) << spec.name;
      s2 += double(v) * v;
    }
    const double var = s2 / values.size();
    const double target = 2.0 / (spec.fan_in + spec.fan_out);
    if (values.size() >= 1000) {
      EXPECT_NEAR(var / target, 1.0, 0.1) << spec.name;
    }
  }
}

TEST(Model, InitIsSeedDeterministic) {
  Rng r1(5), r2(5), r3(6);
  Model<float> a(cnn_config(40, 8), r1), b(cnn_config(40, 8), r2),
      c(cnn_config(40, 8), r3);
  for (std::size_t i = 0; i < a.params().size(); ++i) {
    EXPECT_EQ(a.params()[i].values(), b.params()[i].values());
  }
  EXPECT_NE(a.params()[0].values(), c.params()[0].values());
}

TEST(Model, OutputShapeAndRange) {
  Rng rng(3);
  for (const auto& cfg : {fcn_config(10), cnn_config(10, 4),
                          concat_config(10, 12, 4), scar_config(10, 12, 4)}) {
    Model<double> m(cfg, rng);
    Tape<double> t;
    auto bound = m.bind(t, false);
    Var xa = t.constant(random_tensor({3, 10}, rng));
    std::optional<Var> xb;
    if (is_fusion(cfg.kind)) xb = t.constant(random_tensor({3, 12}, rng));
    Var p = m.forward(t, bound, xa, xb, {});
    ASSERT_EQ(t.shape(p), (Shape{3, 1}));
    for (double v : t.value(p).values()) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(Model, DimensionMismatchIsShapeError) {
  Rng rng(4);
  Model<float> m(scar_config(10, 12, 4), rng);
  Tape<float> t;
  auto bound = m.bind(t, false);
  Var xa = t.constant(Tensor<float>({2, 10}));
  Var bad = t.constant(Tensor<float>({2, 11}));
  EXPECT_THROW(m.forward(t, bound, xa, bad, {}), ShapeError);
  EXPECT_THROW(m.forward(t, bound, xa, std::nullopt, {}), ShapeError);
}

TEST(Model, ConstantInputGivesConstantTokensPerChannel) {
  Rng rng(8);
  Model<double> m(cnn_config(20, 6), rng);
  Tape<double> t;
  auto bound = m.bind(t, false);
  Var x = t.constant(Tensor<double>({1, 20}, 0.7));
  const auto& tok = t.value(m.conv_tokens(t, bound, x, "conv"));
  ASSERT_EQ(tok.shape(), (Shape{1, 6, 32}));
  for (std::size_t i = 1; i < 6; ++i)
    for (std::size_t c = 0; c < 32; ++c)
      EXPECT_DOUBLE_EQ(tok.at(0, i, c), tok.at(0, 0, c));
}

TEST(Model, ConcatEqualsScarWithAttentionBypassed) {
  Rng rng(12);
  Model<double> scar(scar_config(10, 12, 4), rng);
  std::vector<Tensor<double>> kept;
  for (std::size_t i = 0; i < scar.params().size(); ++i) {
    if (scar.layout()[i].name.rfind("cross", 0) != 0) {
      kept.push_back(scar.params()[i]);
    }
  }
  Model<double> concat(concat_config(10, 12, 4), std::move(kept));
  Tape<double> t;
  auto bs = scar.bind(t, false);
  auto bc = concat.bind(t, false);
  Var xa = t.constant(random_tensor({3, 10}, rng));
  Var xb = t.constant(random_tensor({3, 12}, rng));
  EXPECT_EQ(t.value(scar.head_features(t, bs, xa, xb, true)).values(),
            t.value(concat.head_features(t, bc, xa, xb)).values());
  EXPECT_NE(t.value(scar.head_features(t, bs, xa, xb, false)).values(),
            t.value(concat.head_features(t, bc, xa, xb)).values());
}

TEST(Attention, RefineFixedPoints) {
  Rng rng(1);
  Tape<double> t;
  Var single = t.constant(random_tensor({2, 1, 8}, rng));
  EXPECT_EQ(t.value(self_attention_refine(t, single, 2)).values(),
            t.value(single).values());
  Tensor<double> same({1, 5, 8});
  const auto row = random_tensor({8}, rng);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t c = 0; c < 8; ++c) same.at(0, i, c) = row[c];
  Var z = t.constant(same);
  const auto& out = t.value(self_attention_refine(t, z, 2)).values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_NEAR(out[i], same[i], 1e-14);
  }
}

struct NestedCase {
  Tape<double> tape;
  NestedAttentionWeights w;
  std::vector<Tensor<double>> mats;
};

void fill_weights(NestedCase& c, std::size_t d, Rng& rng, bool identity,
                  bool zero_values) {
  Var* slots[] = {&c.w.q1_a, &c.w.k1_b, &c.w.v1_b, &c.w.q1_b,
                  &c.w.k1_a, &c.w.v1_a, &c.w.q2_a, &c.w.k2_b,
                  &c.w.v2_b, &c.w.q2_b, &c.w.k2_a, &c.w.v2_a};
  for (std::size_t i = 0; i < 12; ++i) {
    Tensor<double> m({d, d});
    const bool value_proj = i % 3 == 2;
    if (identity) {
      for (std::size_t j = 0; j < d; ++j) m.at(j, j) = 1.0;
    } else if (!(zero_values && value_proj)) {
      m = random_tensor({d, d}, rng);
    }
    c.mats.push_back(m);
    *slots[i] = c.tape.constant(m);
  }
}

TEST(Attention, SingletonIdentityExchangesTwice) {
  // Each stage swaps the branches when T = 1, so two stages restore them.
  Rng rng(2);
  NestedCase c;
  fill_weights(c, 4, rng, true, false);
  Var za = c.tape.constant(random_tensor({1, 1, 4}, rng));
  Var zb = c.tape.constant(random_tensor({1, 1, 4}, rng));
  auto [za2, zb2] = nested_cross_attention(c.tape, za, zb, c.w, 2);
  EXPECT_EQ(c.tape.value(za2).values(), c.tape.value(za).values());
  EXPECT_EQ(c.tape.value(zb2).values(), c.tape.value(zb).values());
}

TEST(Attention, ZeroValueProjectionsGiveZeros) {
  Rng rng(3);
  NestedCase c;
  fill_weights(c, 4, rng, false, true);
  Var za = c.tape.constant(random_tensor({1, 3, 4}, rng));
  Var zb = c.tape.constant(random_tensor({1, 3, 4}, rng));
  auto [za2, zb2] = nested_cross_attention(c.tape, za, zb, c.w, 2);
  for (double v : c.tape.value(za2).values()) EXPECT_EQ(v, 0.0);
  for (double v : c.tape.value(zb2).values()) EXPECT_EQ(v, 0.0);
}

TEST(Attention, MatchesStraightLineEquations) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    NestedCase c;
    fill_weights(c, 4, rng, false, false);
    const auto za_t = random_tensor({1, 2, 4}, rng);
    const auto zb_t = random_tensor({1, 2, 4}, rng);
    Var za = c.tape.constant(za_t);
    Var zb = c.tape.constant(zb_t);
    auto [za2, zb2] = nested_cross_attention(c.tape, za, zb, c.w, 2);
    Var za3 = self_attention_refine(c.tape, za2, 2);
    Var zb3 = self_attention_refine(c.tape, zb2, 2);

    oracle::NestedWeights w;
    oracle::Mat* dst[] = {&w.q1a, &w.k1b, &w.v1b, &w.q1b, &w.k1a, &w.v1a,
                          &w.q2a, &w.k2b, &w.v2b, &w.q2b, &w.k2a, &w.v2a};
    for (std::size_t i = 0; i < 12; ++i) *dst[i] = to_mat(c.mats[i], 4, 4);
    const auto ref =
        oracle::nested(to_mat(za_t, 2, 4), to_mat(zb_t, 2, 4), w, 2, 2);
    auto expect_close = [&](Var got, const oracle::Mat& want) {
      const auto& g = c.tape.value(got).values();
      ASSERT_EQ(g.size(), want.v.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_NEAR(g[i], want.v[i], 1e-12);
      }
    };
    expect_close(za2, ref.za2);
    expect_close(zb2, ref.zb2);
    expect_close(za3, ref.za3);
    expect_close(zb3, ref.zb3);
  }
}

TEST(Checkpoint, RoundTripIsBitExact) {
  Rng rng(21);
  Model<float> m(scar_config(10, 12, 4), rng);
  const auto bytes = encode_checkpoint(m);
  const auto back = decode_checkpoint(bytes);
  EXPECT_EQ(back.config(), m.config());
  ASSERT_EQ(back.params().size(), m.params().size());
  for (std::size_t i = 0; i < m.params().size(); ++i) {
    EXPECT_EQ(back.params()[i].values(), m.params()[i].values());
  }
  EXPECT_EQ(encode_checkpoint(back), bytes);
}

TEST(Checkpoint, CorruptionErrors) {
  Rng rng(22);
  Model<float> m(cnn_config(10, 4), rng);
  const auto good = encode_checkpoint(m);
  auto bad = good;
  bad[1] = 'X';
  EXPECT_THROW(decode_checkpoint(bad), DataError);
  bad = good;
  bad[4] = 9;
  EXPECT_THROW(decode_checkpoint(bad), DataError);
  bad = good;
  bad.resize(good.size() - 1);
  EXPECT_THROW(decode_checkpoint(bad), DataError);
  bad = good;
  bad[7 + 16] = 5;  // tokens field no longer matches the stored tensors
  EXPECT_THROW(decode_checkpoint(bad), ShapeError);
}

}  // namespace
}  // namespace scar::models
