// scar/tape.h

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

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scar/tensor.h"

namespace scar {

// Handle to a value recorded on a Tape.
struct Var {
  std::uint32_t index = 0;
};

// Reverse-mode autodiff tape. Every op appends one node holding its output
// value and a closure that pushes the output gradient back to its inputs.
// Nodes are appended in evaluation order, so the tape is topologically sorted
// by construction and backward() is a single reverse sweep.
template <typename Real>
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, Var)>;

  struct Node {
    std::string kind;
    std::vector<Var> inputs;
    Tensor<Real> value;
    std::vector<Real> grad;  // empty until touched by backward
    bool requires_grad = false;
    BackwardFn backward;
  };

  Var leaf(Tensor<Real> value, bool requires_grad);
  Var constant(Tensor<Real> value) { return leaf(std::move(value), false); }

  // Appends an op node. The node needs a gradient iff any input does; the
  // backward closure is dropped otherwise.
  Var record(std::string kind, Tensor<Real> value, std::vector<Var> inputs,
             BackwardFn backward);

  const Tensor<Real>& value(Var v) const { return node(v).value; }
  const Shape& shape(Var v) const { return node(v).value.shape(); }
  bool requires_grad(Var v) const { return node(v).requires_grad; }
  const std::string& kind(Var v) const { return node(v).kind; }
  const std::vector<Var>& inputs(Var v) const { return node(v).inputs; }

  // Gradient of the last backward() w.r.t. v; zeros if v was never reached.
  Tensor<Real> grad(Var v) const;

  // Mutable gradient buffer for use inside backward closures.
  std::span<Real> grad_buffer(Var v);
  // Read-only output gradient inside a backward closure.
  std::span<const Real> output_grad(Var v) const { return node(v).grad; }

  std::size_t size() const { return nodes_.size(); }

  // Seeds d(loss)/d(loss) = 1 and sweeps the tape in reverse. Leaves that
  // require a gradient but are unreachable from the loss get zeros.
  void backward(Var loss);

  // Non-differentiable ops (relu, max pooling, clamps) fold their branch
  // decisions into this hash so a caller can detect when a perturbation
  // crosses a kink.
  void note_branch(std::uint64_t decision);
  std::uint64_t branch_signature() const { return branch_signature_; }
  // Branch tracking is off by default; training has no use for it.
  void set_track_branches(bool on) { track_branches_ = on; }
  bool tracks_branches() const { return track_branches_; }

  // Test hook: scales every gradient contribution produced by nodes of the
  // given kind. Used to verify that gradient checking catches a broken
  // backward implementation.
  void inject_backward_fault(std::string kind, Real scale);

 private:
  Node& node(Var v) { return nodes_.at(v.index); }
  const Node& node(Var v) const { return nodes_.at(v.index); }

  std::deque<Node> nodes_;
  std::uint64_t branch_signature_ = 0xcbf29ce484222325ULL;
  bool track_branches_ = false;
  std::optional<std::pair<std::string, Real>> fault_;
};

extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace scar
