// Copyright 2026 The KBC Tagger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef KBC_NUMCORE_GRAPH_H_
#define KBC_NUMCORE_GRAPH_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kbc/numcore/tensor.h"

namespace kbc::numcore {

// A trainable tensor. Graph nodes created from a Parameter read its value in
// place and accumulate into its gradient during Backward.
struct Parameter {
  Parameter() = default;
  Parameter(std::string name, Tensor value)
      : name(std::move(name)), value(std::move(value)), grad(this->value) {
    grad.Fill(0.0);
  }

  void ZeroGrad() { grad.Fill(0.0); }

  std::string name;
  Tensor value;
  Tensor grad;
};

// Handle to a node of a Graph.
struct Var {
  std::size_t id = 0;
};

// Tape-based reverse-mode differentiation. Nodes are appended in creation
// order and only reference earlier nodes, so the tape is a topological order
// and the graph is acyclic by construction. A Graph is single-threaded;
// independent graphs may run concurrently over shared read-only Parameters.
class Graph {
 public:
  // With record_gradients == false the graph is forward-only (inference) and
  // Backward is rejected.
  explicit Graph(bool record_gradients = true) : record_(record_gradients) {}

  Graph(const Graph &) = delete;
  Graph &operator=(const Graph &) = delete;

  // Leaves.
  Var Input(Tensor value);       // differentiable leaf with its own gradient
  Var Constant(Tensor value);    // no gradient
  Var Param(Parameter &param);   // gradient accumulates into param.grad
  Var Param(const Parameter &param);  // read-only view, no gradient

  // out[i,j] = sum_k x[i,k] W[k,j] + b[j]
  Var Affine(Var x, Var w, Var b);
  Var MatMul(Var a, Var b);
  Var Add(Var a, Var b);
  Var Mul(Var a, Var b);
  Var Sigmoid(Var a);
  Var Tanh(Var a);
  Var Scale(Var a, double factor);
  Var Sum(Var a);

  // Half-open row / column ranges of a matrix.
  Var SliceRows(Var a, std::size_t begin, std::size_t end);
  Var SliceCols(Var a, std::size_t begin, std::size_t end);
  Var ConcatCols(std::span<const Var> parts);
  Var ConcatRows(std::span<const Var> parts);

  // out[r] = table[indices[r]]
  Var GatherRows(Var table, std::span<const std::size_t> indices);

  // -log softmax(logits)[gold] for a single row of K >= 2 logits.
  Var SoftmaxCrossEntropy(Var logits, std::size_t gold);
  // Sum over rows r of -log softmax(logits[r])[gold[r]].
  Var SoftmaxCrossEntropyRows(Var logits, std::span<const std::size_t> gold);

  const Tensor &value(Var v) const;
  // Gradient of the last Backward target with respect to v. Zero-filled if
  // v received no gradient.
  Tensor grad(Var v) const;

  // Populates gradients of every node reachable from loss, which must be a
  // single-element tensor. May be called once per graph.
  void Backward(Var loss);

  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Op {
    kInput,
    kConstant,
    kParam,
    kAffine,
    kMatMul,
    kAdd,
    kMul,
    kSigmoid,
    kTanh,
    kScale,
    kSum,
    kSliceRows,
    kSliceCols,
    kConcatCols,
    kConcatRows,
    kGather,
    kSoftmaxXentRows,
  };

  struct Node {
    Op op;
    std::vector<std::size_t> parents;
    Tensor value;             // unused for kParam
    Parameter *param = nullptr;
    bool requires_grad = false;
    Tensor grad;              // allocated lazily
    bool has_grad = false;
    std::vector<std::size_t> indices;  // gather rows / gold labels
    std::size_t begin = 0;
    std::size_t end = 0;
    double factor = 0.0;
    Tensor cache;             // softmax probabilities
  };

  Var Push(Node node);
  const Node &node(Var v) const;
  bool AnyRequiresGrad(std::initializer_list<std::size_t> ids) const;
  Tensor &GradRef(std::size_t id);
  void CheckOwned(Var v, const char *op) const;

  bool record_;
  bool backward_done_ = false;
  std::vector<Node> nodes_;
};

}  // namespace kbc::numcore

#endif  // KBC_NUMCORE_GRAPH_H_
