// compute/tape.cc

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

#include "scar/tape.h"

#include <numeric>
#include <sstream>

namespace scar {

std::string shape_to_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ',';
    out << shape[i];
  }
  out << ']';
  return out.str();
}

std::size_t shape_numel(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

template <typename Real>
Var Tape<Real>::leaf(Tensor<Real> value, bool requires_grad) {
  Node n;
  n.kind = "leaf";
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  nodes_.push_back(std::move(n));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename Real>
Var Tape<Real>::record(std::string kind, Tensor<Real> value,
                       std::vector<Var> inputs, BackwardFn backward) {
  Node n;
  n.kind = std::move(kind);
  n.value = std::move(value);
  for (Var in : inputs) {
    if (in.index >= nodes_.size()) {
      throw Error("tape input " + std::to_string(in.index) +
                  " does not precede node " + std::to_string(nodes_.size()));
    }
    n.requires_grad = n.requires_grad || node(in).requires_grad;
  }
  n.inputs = std::move(inputs);
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename Real>
Tensor<Real> Tape<Real>::grad(Var v) const {
  const Node& n = node(v);
  if (n.grad.empty()) return Tensor<Real>(n.value.shape());
  return Tensor<Real>(n.value.shape(), n.grad);
}

template <typename Real>
std::span<Real> Tape<Real>::grad_buffer(Var v) {
  Node& n = node(v);
  if (n.grad.empty()) n.grad.assign(n.value.numel(), Real(0));
  return n.grad;
}

template <typename Real>
void Tape<Real>::backward(Var loss) {
  if (node(loss).value.numel() != 1) {
    throw ShapeError("backward() needs a scalar loss, got shape " +
                     shape_to_string(node(loss).value.shape()));
  }
  for (Node& n : nodes_) n.grad.clear();
  for (Node& n : nodes_) {
    if (n.requires_grad && n.kind == "leaf") {
      n.grad.assign(n.value.numel(), Real(0));
    }
  }
  if (!node(loss).requires_grad) return;
  grad_buffer(loss)[0] = Real(1);

  for (std::size_t i = loss.index + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || !n.backward || n.grad.empty()) continue;
    const Var self{static_cast<std::uint32_t>(i)};
    if (fault_ && fault_->first == n.kind) {
      std::vector<std::vector<Real>> before;
      for (Var in : n.inputs) {
        before.emplace_back(grad_buffer(in).begin(), grad_buffer(in).end());
      }
      n.backward(*this, self);
      for (std::size_t k = 0; k < n.inputs.size(); ++k) {
        auto g = grad_buffer(n.inputs[k]);
        for (std::size_t j = 0; j < g.size(); ++j) {
          g[j] = before[k][j] + fault_->second * (g[j] - before[k][j]);
        }
      }
    } else {
      n.backward(*this, self);
    }
  }
}

template <typename Real>
void Tape<Real>::note_branch(std::uint64_t decision) {
  // FNV-1a over the 8 bytes of the decision word.
  for (int b = 0; b < 8; ++b) {
    branch_signature_ ^= (decision >> (8 * b)) & 0xffu;
    branch_signature_ *= 0x100000001b3ULL;
  }
}

template <typename Real>
void Tape<Real>::inject_backward_fault(std::string kind, Real scale) {
  fault_ = std::make_pair(std::move(kind), scale);
}

template class Tape<float>;
template class Tape<double>;

}  // namespace scar
