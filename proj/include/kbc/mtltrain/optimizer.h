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
#ifndef KBC_MTLTRAIN_OPTIMIZER_H_
#define KBC_MTLTRAIN_OPTIMIZER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "kbc/numcore/graph.h"
#include "kbc/taggernet/model.h"

namespace kbc::mtltrain {

// Momentum update of one tensor from its accumulated gradient:
//   v <- mu * v - lr * g;   p <- p + v
void SgdMomentumStep(numcore::Parameter &param, numcore::Tensor &velocity,
                     double lr, double mu);

// One velocity per model parameter, aligned with Model::AllParameters(),
// zero-initialized.
class OptimizerState {
 public:
  explicit OptimizerState(const taggernet::Model &model);

  std::size_t size() const { return velocities_.size(); }
  numcore::Tensor &velocity(std::size_t i) { return velocities_.at(i); }
  const numcore::Tensor &velocity(std::size_t i) const {
    return velocities_.at(i);
  }

 private:
  std::vector<numcore::Tensor> velocities_;
};

// Applies SgdMomentumStep to the parameters at the given positions of
// Model::AllParameters(); all other parameters and velocities are left
// untouched.
void SgdMomentumStep(taggernet::Model &model, OptimizerState &opt,
                     std::span<const std::size_t> param_positions, double lr,
                     double mu);

}  // namespace kbc::mtltrain

#endif  // KBC_MTLTRAIN_OPTIMIZER_H_
