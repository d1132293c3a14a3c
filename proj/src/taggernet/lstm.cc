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
#include "kbc/taggernet/lstm.h"

#include <cmath>

#include "kbc/errors.h"

namespace kbc::taggernet {

using numcore::Graph;
using numcore::Parameter;
using numcore::Tensor;
using numcore::Var;

namespace {

void GlorotBlocks(Tensor &m, std::size_t fan_in, std::size_t d_hidden,
                  numcore::Rng &rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + d_hidden));
  for (double &v : m.data()) v = rng.Uniform(-limit, limit);
}

// Gate activations from pre-activations (1 x 4 d_hidden) and the previous
// cell state, or no previous state at t = 0.
LstmState Gates(Graph &graph, Var pre, std::size_t d, const Var *c_prev) {
  Var ifo = graph.Sigmoid(graph.SliceCols(pre, 0, 3 * d));
  Var i = graph.SliceCols(ifo, kInputGate * d, (kInputGate + 1) * d);
  Var f = graph.SliceCols(ifo, kForgetGate * d, (kForgetGate + 1) * d);
  Var o = graph.SliceCols(ifo, kOutputGate * d, (kOutputGate + 1) * d);
  Var g = graph.Tanh(graph.SliceCols(pre, kCandidate * d, kNumGates * d));
  Var c = graph.Mul(i, g);
  if (c_prev) c = graph.Add(graph.Mul(f, *c_prev), c);
  Var h = graph.Mul(o, graph.Tanh(c));
  return {h, c};
}

}  // namespace

LstmCellParams LstmCellParams::Zeros(const std::string &name, std::size_t d_in,
                                     std::size_t d_hidden) {
  if (d_in == 0 || d_hidden == 0) {
    throw DimensionError("lstm cell dimensions must be positive");
  }
  LstmCellParams p;
  p.d_in = d_in;
  p.d_hidden = d_hidden;
  p.w = Parameter(name + ".w", Tensor({d_in, kNumGates * d_hidden}));
  p.u = Parameter(name + ".u", Tensor({d_hidden, kNumGates * d_hidden}));
  p.b = Parameter(name + ".b", Tensor({kNumGates * d_hidden}));
  return p;
}

LstmCellParams LstmCellParams::Create(const std::string &name, std::size_t d_in,
                                      std::size_t d_hidden, numcore::Rng &rng) {
  LstmCellParams p = Zeros(name, d_in, d_hidden);
  GlorotBlocks(p.w.value, d_in, d_hidden, rng);
  GlorotBlocks(p.u.value, d_hidden, d_hidden, rng);
  for (std::size_t j = 0; j < d_hidden; ++j) {
    p.b.value[kForgetGate * d_hidden + j] = kForgetBiasInit;
  }
  return p;
}

LstmState LstmCellStep(Graph &graph, const LstmCellVars &cell, Var x,
                       LstmState prev) {
  const std::size_t d = cell.d_hidden;
  const Tensor &hv = graph.value(prev.h);
  const Tensor &cv = graph.value(prev.c);
  if (hv.rows() != 1 || hv.cols() != d || cv.rows() != 1 || cv.cols() != d) {
    throw DimensionError("lstm step: state must be 1x" + std::to_string(d) +
                         ", got h " + hv.ShapeString() + " c " +
                         cv.ShapeString());
  }
  if (graph.value(x).rows() != 1) {
    throw DimensionError("lstm step: input must be one row, got " +
                         graph.value(x).ShapeString());
  }
  Var pre = graph.Add(graph.Affine(x, cell.w, cell.b),
                      graph.MatMul(prev.h, cell.u));
  return Gates(graph, pre, d, &prev.c);
}

Var RunLstm(Graph &graph, const LstmCellVars &cell, Var inputs, bool reverse) {
  const std::size_t n = graph.value(inputs).rows();
  const std::size_t d = cell.d_hidden;
  // Input projections for all steps at once.
  Var projected = graph.Affine(inputs, cell.w, cell.b);
  std::vector<Var> hidden(n);
  LstmState state{};
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t t = reverse ? n - 1 - step : step;
    Var pre = graph.SliceRows(projected, t, t + 1);
    if (step > 0) pre = graph.Add(pre, graph.MatMul(state.h, cell.u));
    state = Gates(graph, pre, d, step > 0 ? &state.c : nullptr);
    hidden[t] = state.h;
  }
  return graph.ConcatRows(hidden);
}

}  // namespace kbc::taggernet
