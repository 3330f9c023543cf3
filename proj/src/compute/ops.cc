// compute/ops.cc

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

#include "scar/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scar::ops {

namespace {

std::string shapes(const Shape& a, const Shape& b) {
  return shape_to_string(a) + " and " + shape_to_string(b);
}

}  // namespace

template <typename Real>
Var dense(Tape<Real>& tape, Var x, Var weight, std::optional<Var> bias) {
  const Shape& xs = tape.shape(x);
  const Shape& ws = tape.shape(weight);
  if (xs.size() < 2 || ws.size() != 2 || xs.back() != ws[0]) {
    throw ShapeError("dense: cannot multiply " + shapes(xs, ws));
  }
  const std::size_t d_in = ws[0], d_out = ws[1];
  const std::size_t rows = tape.value(x).numel() / d_in;
  if (bias && tape.shape(*bias) != Shape{d_out}) {
    throw ShapeError("dense: bias " + shape_to_string(tape.shape(*bias)) +
                     " does not match weight " + shape_to_string(ws));
  }

  Shape out_shape(xs.begin(), xs.end() - 1);
  out_shape.push_back(d_out);
  Tensor<Real> out(out_shape);
  {
    const auto& xv = tape.value(x).values();
    const auto& wv = tape.value(weight).values();
    auto& ov = out.values();
    for (std::size_t i = 0; i < rows; ++i) {
      Real* orow = ov.data() + i * d_out;
      const Real* xrow = xv.data() + i * d_in;
      for (std::size_t k = 0; k < d_in; ++k) {
        const Real a = xrow[k];
        if (a == Real(0)) continue;
        const Real* wrow = wv.data() + k * d_out;
        for (std::size_t j = 0; j < d_out; ++j) orow[j] += a * wrow[j];
      }
      if (bias) {
        const auto& bv = tape.value(*bias).values();
        for (std::size_t j = 0; j < d_out; ++j) orow[j] += bv[j];
      }
    }
  }

  std::vector<Var> inputs{x, weight};
  if (bias) inputs.push_back(*bias);
  return tape.record(
      "dense", std::move(out), inputs,
      [x, weight, bias, rows, d_in, d_out](Tape<Real>& t, Var self) {
        const auto g = t.output_grad(self);
        const auto& xv = t.value(x).values();
        const auto& wv = t.value(weight).values();
        if (t.requires_grad(x)) {
          // dx = g · Wᵀ, with Wᵀ materialised so the inner loop is contiguous.
          std::vector<Real> wt(d_in * d_out);
          for (std::size_t k = 0; k < d_in; ++k)
            for (std::size_t j = 0; j < d_out; ++j)
              wt[j * d_in + k] = wv[k * d_out + j];
          auto gx = t.grad_buffer(x);
          for (std::size_t i = 0; i < rows; ++i) {
            Real* gxrow = gx.data() + i * d_in;
            for (std::size_t j = 0; j < d_out; ++j) {
              const Real gij = g[i * d_out + j];
              if (gij == Real(0)) continue;
              const Real* wtrow = wt.data() + j * d_in;
              for (std::size_t k = 0; k < d_in; ++k) gxrow[k] += gij * wtrow[k];
            }
          }
        }
        if (t.requires_grad(weight)) {
          auto gw = t.grad_buffer(weight);
          for (std::size_t i = 0; i < rows; ++i) {
            const Real* grow = g.data() + i * d_out;
            for (std::size_t k = 0; k < d_in; ++k) {
              const Real a = xv[i * d_in + k];
              if (a == Real(0)) continue;
              Real* gwrow = gw.data() + k * d_out;
              for (std::size_t j = 0; j < d_out; ++j) gwrow[j] += a * grow[j];
            }
          }
        }
        if (bias && t.requires_grad(*bias)) {
          auto gb = t.grad_buffer(*bias);
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < d_out; ++j) gb[j] += g[i * d_out + j];
        }
      });
}

template <typename Real>
Var conv1d(Tape<Real>& tape, Var x, Var kernels, Var bias) {
  const Shape& xs = tape.shape(x);
  const Shape& ks = tape.shape(kernels);
  if (xs.size() != 3 || ks.size() != 3 || xs[1] != ks[1]) {
    throw ShapeError("conv1d: incompatible input and kernels " +
                     shapes(xs, ks));
  }
  if (tape.shape(bias) != Shape{ks[0]}) {
    throw ShapeError("conv1d: bias " + shape_to_string(tape.shape(bias)) +
                     " does not match kernels " + shape_to_string(ks));
  }
  const std::size_t n = xs[0], c_in = xs[1], len = xs[2];
  const std::size_t c_out = ks[0], width = ks[2];
  if (len < width) {
    throw ShapeError("conv1d: input too short, length " + std::to_string(len) +
                     " < kernel size " + std::to_string(width));
  }
  const std::size_t out_len = len - width + 1;

  Tensor<Real> out({n, c_out, out_len});
  const auto& xv = tape.value(x).values();
  const auto& kv = tape.value(kernels).values();
  const auto& bv = tape.value(bias).values();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t co = 0; co < c_out; ++co) {
      Real* orow = &out.values()[(s * c_out + co) * out_len];
      for (std::size_t t = 0; t < out_len; ++t) orow[t] = bv[co];
      for (std::size_t ci = 0; ci < c_in; ++ci) {
        const Real* xrow = &xv[(s * c_in + ci) * len];
        for (std::size_t k = 0; k < width; ++k) {
          const Real w = kv[(co * c_in + ci) * width + k];
          for (std::size_t t = 0; t < out_len; ++t) orow[t] += w * xrow[t + k];
        }
      }
    }
  }

  return tape.record(
      "conv1d", std::move(out), {x, kernels, bias},
      [=](Tape<Real>& t, Var self) {
        const auto g = t.output_grad(self);
        const auto& xv = t.value(x).values();
        const auto& kv = t.value(kernels).values();
        const bool need_x = t.requires_grad(x);
        const bool need_k = t.requires_grad(kernels);
        const bool need_b = t.requires_grad(bias);
        std::span<Real> gx, gk, gb;
        if (need_x) gx = t.grad_buffer(x);
        if (need_k) gk = t.grad_buffer(kernels);
        if (need_b) gb = t.grad_buffer(bias);
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t co = 0; co < c_out; ++co) {
            const Real* grow = &g[(s * c_out + co) * out_len];
            if (need_b) {
              for (std::size_t tt = 0; tt < out_len; ++tt) gb[co] += grow[tt];
            }
            for (std::size_t ci = 0; ci < c_in; ++ci) {
              const std::size_t xoff = (s * c_in + ci) * len;
              for (std::size_t k = 0; k < width; ++k) {
                const std::size_t koff = (co * c_in + ci) * width + k;
                if (need_k) {
                  Real acc = 0;
                  for (std::size_t tt = 0; tt < out_len; ++tt)
                    acc += grow[tt] * xv[xoff + tt + k];
                  gk[koff] += acc;
                }
                if (need_x) {
                  const Real w = kv[koff];
                  for (std::size_t tt = 0; tt < out_len; ++tt)
                    gx[xoff + tt + k] += w * grow[tt];
                }
              }
            }
          }
        }
      });
}

template <typename Real>
Var adaptive_maxpool1d(Tape<Real>& tape, Var x, std::size_t bins) {
  const Shape& xs = tape.shape(x);
  if (xs.size() != 3) {
    throw ShapeError("adaptive_maxpool1d: expected [n, c, L], got " +
                     shape_to_string(xs));
  }
  const std::size_t rows = xs[0] * xs[1], len = xs[2];
  if (bins == 0 || len < bins) {
    throw ShapeError("adaptive_maxpool1d: cannot pool length " +
                     std::to_string(len) + " into " + std::to_string(bins) +
                     " bins");
  }
  Tensor<Real> out({xs[0], xs[1], bins});
  std::vector<std::size_t> argmax(rows * bins);
  const auto& xv = tape.value(x).values();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < bins; ++i) {
      const std::size_t lo = i * len / bins, hi = (i + 1) * len / bins;
      std::size_t best = lo;
      for (std::size_t p = lo + 1; p < hi; ++p) {
        if (xv[r * len + p] > xv[r * len + best]) best = p;
      }
      argmax[r * bins + i] = r * len + best;
      out.values()[r * bins + i] = xv[r * len + best];
    }
  }
  if (tape.tracks_branches()) {
    for (std::size_t a : argmax) tape.note_branch(a);
  }
  return tape.record("adaptive_maxpool1d", std::move(out), {x},
                     [x, argmax = std::move(argmax)](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       auto gx = t.grad_buffer(x);
                       for (std::size_t i = 0; i < argmax.size(); ++i)
                         gx[argmax[i]] += g[i];
                     });
}

template <typename Real>
Var activation(Tape<Real>& tape, Var x, Activation kind) {
  const auto& xv = tape.value(x).values();
  Tensor<Real> out(tape.shape(x));
  auto& ov = out.values();
  if (kind == Activation::kRelu) {
    for (std::size_t i = 0; i < xv.size(); ++i) {
      ov[i] = xv[i] > Real(0) ? xv[i] : Real(0);
    }
    if (tape.tracks_branches()) {
      for (std::size_t i = 0; i < xv.size(); ++i) {
        if (xv[i] > Real(0)) tape.note_branch(i);
      }
    }
    return tape.record("relu", std::move(out), {x},
                       [x](Tape<Real>& t, Var self) {
                         const auto g = t.output_grad(self);
                         const auto& xv = t.value(x).values();
                         auto gx = t.grad_buffer(x);
                         for (std::size_t i = 0; i < g.size(); ++i)
                           if (xv[i] > Real(0)) gx[i] += g[i];
                       });
  }
  for (std::size_t i = 0; i < xv.size(); ++i) {
    // Branch on sign so exp() never overflows.
    if (xv[i] >= Real(0)) {
      ov[i] = Real(1) / (Real(1) + std::exp(-xv[i]));
    } else {
      const Real e = std::exp(xv[i]);
      ov[i] = e / (Real(1) + e);
    }
  }
  return tape.record("sigmoid", std::move(out), {x},
                     [x](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       const auto& yv = t.value(self).values();
                       auto gx = t.grad_buffer(x);
                       for (std::size_t i = 0; i < g.size(); ++i)
                         gx[i] += g[i] * yv[i] * (Real(1) - yv[i]);
                     });
}

template <typename Real>
Var sdpa(Tape<Real>& tape, Var q, Var k, Var v) {
  const Shape& qs = tape.shape(q);
  const Shape& ks = tape.shape(k);
  const Shape& vs = tape.shape(v);
  if (qs.size() != 3 || ks.size() != 3 || vs.size() != 3) {
    throw ShapeError("sdpa: expected rank-3 q, k, v, got " +
                     shape_to_string(qs) + ", " + shape_to_string(ks) + ", " +
                     shape_to_string(vs));
  }
  if (qs[0] != ks[0] || qs[0] != vs[0]) {
    throw ShapeError("sdpa: batch sizes differ in " + shapes(qs, ks));
  }
  if (qs[2] != ks[2]) {
    throw ShapeError("sdpa: key dimension mismatch between " + shapes(qs, ks));
  }
  if (ks[1] != vs[1]) {
    throw ShapeError("sdpa: key and value lengths differ in " +
                     shapes(ks, vs));
  }
  const std::size_t n = qs[0], lq = qs[1], lk = ks[1], dk = qs[2], dv = vs[2];
  const Real scale = Real(1) / std::sqrt(static_cast<Real>(dk));

  const auto& qv = tape.value(q).values();
  const auto& kv = tape.value(k).values();
  const auto& vv = tape.value(v).values();
  std::vector<Real> probs(n * lq * lk);
  Tensor<Real> out({n, lq, dv});
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < lq; ++i) {
      Real* p = &probs[(s * lq + i) * lk];
      const Real* qrow = &qv[(s * lq + i) * dk];
      Real row_max = -std::numeric_limits<Real>::infinity();
      for (std::size_t j = 0; j < lk; ++j) {
        const Real* krow = &kv[(s * lk + j) * dk];
        Real dot = 0;
        for (std::size_t c = 0; c < dk; ++c) dot += qrow[c] * krow[c];
        p[j] = dot * scale;
        row_max = std::max(row_max, p[j]);
      }
      Real total = 0;
      for (std::size_t j = 0; j < lk; ++j) {
        p[j] = std::exp(p[j] - row_max);
        total += p[j];
      }
      for (std::size_t j = 0; j < lk; ++j) p[j] /= total;
      Real* orow = &out.values()[(s * lq + i) * dv];
      for (std::size_t j = 0; j < lk; ++j) {
        const Real* vrow = &vv[(s * lk + j) * dv];
        for (std::size_t c = 0; c < dv; ++c) orow[c] += p[j] * vrow[c];
      }
    }
  }

  return tape.record(
      "sdpa", std::move(out), {q, k, v},
      [=, probs = std::move(probs)](Tape<Real>& t, Var self) {
        const auto g = t.output_grad(self);
        const auto& qv = t.value(q).values();
        const auto& kv = t.value(k).values();
        const auto& vv = t.value(v).values();
        const bool need_q = t.requires_grad(q);
        const bool need_k = t.requires_grad(k);
        const bool need_v = t.requires_grad(v);
        std::span<Real> gq, gk, gv;
        if (need_q) gq = t.grad_buffer(q);
        if (need_k) gk = t.grad_buffer(k);
        if (need_v) gv = t.grad_buffer(v);
        std::vector<Real> dp(lk);
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t i = 0; i < lq; ++i) {
            const Real* p = &probs[(s * lq + i) * lk];
            const Real* grow = &g[(s * lq + i) * dv];
            Real weighted = 0;
            for (std::size_t j = 0; j < lk; ++j) {
              const Real* vrow = &vv[(s * lk + j) * dv];
              Real acc = 0;
              for (std::size_t c = 0; c < dv; ++c) acc += grow[c] * vrow[c];
              dp[j] = acc;
              weighted += acc * p[j];
              if (need_v) {
                Real* gvrow = &gv[(s * lk + j) * dv];
                for (std::size_t c = 0; c < dv; ++c) gvrow[c] += p[j] * grow[c];
              }
            }
            // Softmax Jacobian: dS = P ⊙ (dP − Σ P·dP), then scale.
            for (std::size_t j = 0; j < lk; ++j) {
              const Real ds = p[j] * (dp[j] - weighted) * scale;
              if (ds == Real(0)) continue;
              if (need_q) {
                const Real* krow = &kv[(s * lk + j) * dk];
                Real* gqrow = &gq[(s * lq + i) * dk];
                for (std::size_t c = 0; c < dk; ++c) gqrow[c] += ds * krow[c];
              }
              if (need_k) {
                const Real* qrow = &qv[(s * lq + i) * dk];
                Real* gkrow = &gk[(s * lk + j) * dk];
                for (std::size_t c = 0; c < dk; ++c) gkrow[c] += ds * qrow[c];
              }
            }
          }
        }
      });
}

template <typename Real>
Var multi_head_sdpa(Tape<Real>& tape, Var q, Var k, Var v, std::size_t heads) {
  const std::size_t d = tape.shape(q).back();
  if (heads == 0 || d % heads != 0 || tape.shape(k).back() != d ||
      tape.shape(v).back() % heads != 0) {
    throw ConfigError("multi-head attention: " + std::to_string(heads) +
                      " heads do not divide channel width " +
                      std::to_string(d));
  }
  if (heads == 1) return sdpa(tape, q, k, v);
  const std::size_t dk = d / heads;
  const std::size_t dv = tape.shape(v).back() / heads;
  std::vector<Var> outs;
  outs.reserve(heads);
  for (std::size_t h = 0; h < heads; ++h) {
    Var qh = slice(tape, q, h * dk, (h + 1) * dk);
    Var kh = slice(tape, k, h * dk, (h + 1) * dk);
    Var vh = slice(tape, v, h * dv, (h + 1) * dv);
    outs.push_back(sdpa(tape, qh, kh, vh));
  }
  return concat(tape, outs);
}

template <typename Real>
Var multi_head_attention(Tape<Real>& tape, Var xq, Var xkv, Var wq, Var wk,
                         Var wv, std::size_t heads) {
  const std::size_t d = tape.shape(xq).back();
  if (heads == 0 || d % heads != 0) {
    throw ConfigError("multi-head attention: " + std::to_string(heads) +
                      " heads do not divide channel width " +
                      std::to_string(d));
  }
  Var q = dense(tape, xq, wq, std::nullopt);
  Var k = dense(tape, xkv, wk, std::nullopt);
  Var v = dense(tape, xkv, wv, std::nullopt);
  return multi_head_sdpa(tape, q, k, v, heads);
}

template <typename Real>
Var dropout(Tape<Real>& tape, Var x, double p, Rng* rng, bool training) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ConfigError("dropout probability must be in [0, 1), got " +
                      std::to_string(p));
  }
  if (!training || p == 0.0) return x;
  if (rng == nullptr) throw ConfigError("dropout in training mode needs an Rng");
  const auto& xv = tape.value(x).values();
  const Real keep_scale = static_cast<Real>(1.0 / (1.0 - p));
  std::vector<Real> mask(xv.size());
  Tensor<Real> out(tape.shape(x));
  for (std::size_t i = 0; i < xv.size(); ++i) {
    mask[i] = rng->uniform() < p ? Real(0) : keep_scale;
    out.values()[i] = xv[i] * mask[i];
  }
  return tape.record("dropout", std::move(out), {x},
                     [x, mask = std::move(mask)](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       auto gx = t.grad_buffer(x);
                       for (std::size_t i = 0; i < g.size(); ++i)
                         gx[i] += g[i] * mask[i];
                     });
}

template <typename Real>
Var reshape(Tape<Real>& tape, Var x, Shape shape) {
  if (shape_numel(shape) != tape.value(x).numel()) {
    throw ShapeError("reshape: cannot view " +
                     shape_to_string(tape.shape(x)) + " as " +
                     shape_to_string(shape));
  }
  return tape.record("reshape", tape.value(x).reshaped(std::move(shape)), {x},
                     [x](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       auto gx = t.grad_buffer(x);
                       for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
                     });
}

template <typename Real>
Var transpose(Tape<Real>& tape, Var x) {
  const Shape& xs = tape.shape(x);
  if (xs.size() != 3) {
    throw ShapeError("transpose: expected rank 3, got " + shape_to_string(xs));
  }
  const std::size_t n = xs[0], a = xs[1], b = xs[2];
  Tensor<Real> out({n, b, a});
  const auto& xv = tape.value(x).values();
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j)
        out.values()[(s * b + j) * a + i] = xv[(s * a + i) * b + j];
  return tape.record("transpose", std::move(out), {x},
                     [x, n, a, b](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       auto gx = t.grad_buffer(x);
                       for (std::size_t s = 0; s < n; ++s)
                         for (std::size_t i = 0; i < a; ++i)
                           for (std::size_t j = 0; j < b; ++j)
                             gx[(s * a + i) * b + j] += g[(s * b + j) * a + i];
                     });
}

template <typename Real>
Var concat(Tape<Real>& tape, const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  const Shape& first = tape.shape(parts[0]);
  const Shape lead(first.begin(), first.end() - 1);
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (Var p : parts) {
    const Shape& s = tape.shape(p);
    if (Shape(s.begin(), s.end() - 1) != lead) {
      throw ShapeError("concat: leading axes differ in " + shapes(first, s));
    }
    widths.push_back(s.back());
    total += s.back();
  }
  const std::size_t rows = shape_numel(lead);
  Shape out_shape = lead;
  out_shape.push_back(total);
  Tensor<Real> out(out_shape);
  std::size_t offset = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& pv = tape.value(parts[p]).values();
    for (std::size_t r = 0; r < rows; ++r)
      std::copy_n(&pv[r * widths[p]], widths[p],
                  &out.values()[r * total + offset]);
    offset += widths[p];
  }
  return tape.record("concat", std::move(out), parts,
                     [parts, widths, rows, total](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       std::size_t offset = 0;
                       for (std::size_t p = 0; p < parts.size(); ++p) {
                         if (t.requires_grad(parts[p])) {
                           auto gp = t.grad_buffer(parts[p]);
                           for (std::size_t r = 0; r < rows; ++r)
                             for (std::size_t c = 0; c < widths[p]; ++c)
                               gp[r * widths[p] + c] +=
                                   g[r * total + offset + c];
                         }
                         offset += widths[p];
                       }
                     });
}

template <typename Real>
Var slice(Tape<Real>& tape, Var x, std::size_t begin, std::size_t end) {
  const Shape& xs = tape.shape(x);
  if (xs.empty() || begin >= end || end > xs.back()) {
    throw ShapeError("slice: range [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") invalid for " +
                     shape_to_string(xs));
  }
  const std::size_t width = xs.back(), part = end - begin;
  const std::size_t rows = tape.value(x).numel() / width;
  Shape out_shape = xs;
  out_shape.back() = part;
  Tensor<Real> out(out_shape);
  const auto& xv = tape.value(x).values();
  for (std::size_t r = 0; r < rows; ++r)
    std::copy_n(&xv[r * width + begin], part, &out.values()[r * part]);
  return tape.record("slice", std::move(out), {x},
                     [=](Tape<Real>& t, Var self) {
                       const auto g = t.output_grad(self);
                       auto gx = t.grad_buffer(x);
                       for (std::size_t r = 0; r < rows; ++r)
                         for (std::size_t c = 0; c < part; ++c)
                           gx[r * width + begin + c] += g[r * part + c];
                     });
}

template <typename Real>
Var sum(Tape<Real>& tape, Var x) {
  Real total = 0;
  for (Real v : tape.value(x).values()) total += v;
  return tape.record("sum", Tensor<Real>({1}, {total}), {x},
                     [x](Tape<Real>& t, Var self) {
                       const Real g = t.output_grad(self)[0];
                       for (Real& gx : t.grad_buffer(x)) gx += g;
                     });
}

const std::vector<std::string>& differentiable_op_kinds() {
  static const std::vector<std::string> kinds = {
      "dense",   "conv1d", "adaptive_maxpool1d", "relu",
      "sigmoid", "sdpa",   "multi_head_attention", "dropout",
      "reshape", "transpose", "concat",          "slice",
      "sum"};
  return kinds;
}

#define SCAR_INSTANTIATE_OPS(Real)                                           \
  template Var dense<Real>(Tape<Real>&, Var, Var, std::optional<Var>);       \
  template Var conv1d<Real>(Tape<Real>&, Var, Var, Var);                     \
  template Var adaptive_maxpool1d<Real>(Tape<Real>&, Var, std::size_t);      \
  template Var activation<Real>(Tape<Real>&, Var, Activation);               \
  template Var sdpa<Real>(Tape<Real>&, Var, Var, Var);                       \
  template Var multi_head_sdpa<Real>(Tape<Real>&, Var, Var, Var,             \
                                     std::size_t);                          \
  template Var multi_head_attention<Real>(Tape<Real>&, Var, Var, Var, Var,   \
                                          Var, std::size_t);                 \
  template Var dropout<Real>(Tape<Real>&, Var, double, Rng*, bool);          \
  template Var reshape<Real>(Tape<Real>&, Var, Shape);                       \
  template Var transpose<Real>(Tape<Real>&, Var);                            \
  template Var concat<Real>(Tape<Real>&, const std::vector<Var>&);           \
  template Var slice<Real>(Tape<Real>&, Var, std::size_t, std::size_t);      \
  template Var sum<Real>(Tape<Real>&, Var);

SCAR_INSTANTIATE_OPS(float)
SCAR_INSTANTIATE_OPS(double)

#undef SCAR_INSTANTIATE_OPS

}  // namespace scar::ops
