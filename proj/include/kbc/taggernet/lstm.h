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
#ifndef KBC_TAGGERNET_LSTM_H_
#define KBC_TAGGERNET_LSTM_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kbc/numcore/graph.h"
#include "kbc/numcore/random.h"

namespace kbc::taggernet {

// Gate blocks are fused column-wise in the order below, so gate g occupies
// columns [g * d_hidden, (g + 1) * d_hidden) of w, u and b.
enum LstmGate : std::size_t {
  kInputGate = 0,
  kForgetGate = 1,
  kOutputGate = 2,
  kCandidate = 3,
  kNumGates = 4,
};

// Forget-gate LSTM without peepholes:
//   i = sigmoid(x W_i + h U_i + b_i)    f = sigmoid(x W_f + h U_f + b_f)
//   o = sigmoid(x W_o + h U_o + b_o)    g = tanh(x W_g + h U_g + b_g)
//   c' = f * c + i * g                  h' = o * tanh(c')
struct LstmCellParams {
  numcore::Parameter w;  // d_in x 4 d_hidden
  numcore::Parameter u;  // d_hidden x 4 d_hidden
  numcore::Parameter b;  // 4 d_hidden
  std::size_t d_in = 0;
  std::size_t d_hidden = 0;

  // Each gate block of w and u is Glorot-uniform for its own fan-in/fan-out;
  // biases are zero except the forget gate, which starts at 1.
  static LstmCellParams Create(const std::string &name, std::size_t d_in,
                               std::size_t d_hidden, numcore::Rng &rng);
  static LstmCellParams Zeros(const std::string &name, std::size_t d_in,
                              std::size_t d_hidden);

  std::vector<numcore::Parameter *> Parameters() { return {&w, &u, &b}; }
};

inline constexpr double kForgetBiasInit = 1.0;

// Cell parameters bound as graph leaves.
struct LstmCellVars {
  numcore::Var w, u, b;
  std::size_t d_hidden = 0;
};

template <typename Params>
LstmCellVars BindCell(numcore::Graph &graph, Params &cell) {
  return {graph.Param(cell.w), graph.Param(cell.u), graph.Param(cell.b),
          cell.d_hidden};
}

struct LstmState {
  numcore::Var h;  // 1 x d_hidden
  numcore::Var c;  // 1 x d_hidden
};

// One step for a single input row x (1 x d_in).
LstmState LstmCellStep(numcore::Graph &graph, const LstmCellVars &cell,
                       numcore::Var x, LstmState prev);

// Runs the cell over every row of inputs (n x d_in), left to right, or right
// to left when reverse is set, from zero initial states. Row t of the result
// is the hidden state after consuming input row t.
numcore::Var RunLstm(numcore::Graph &graph, const LstmCellVars &cell,
                     numcore::Var inputs, bool reverse);

}  // namespace kbc::taggernet

#endif  // KBC_TAGGERNET_LSTM_H_
