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
#include "kbc/mtltrain/optimizer.h"

#include "kbc/errors.h"
#include "kbc/numcore/kernels.h"

namespace kbc::mtltrain {

void SgdMomentumStep(numcore::Parameter &param, numcore::Tensor &velocity,
                     double lr, double mu) {
  if (!param.value.SameShape(velocity) || !param.value.SameShape(param.grad)) {
    throw DimensionError("momentum step for " + param.name + ": value " +
                         param.value.ShapeString() + ", grad " +
                         param.grad.ShapeString() + ", velocity " +
                         velocity.ShapeString());
  }
  numcore::kernels::MomentumUpdate(param.value.data(), velocity.data(),
                                   param.grad.data(), lr, mu);
}

OptimizerState::OptimizerState(const taggernet::Model &model) {
  for (const numcore::Parameter *p : model.AllParameters()) {
    velocities_.emplace_back(p->value.shape(), 0.0);
  }
}

void SgdMomentumStep(taggernet::Model &model, OptimizerState &opt,
                     std::span<const std::size_t> param_positions, double lr,
                     double mu) {
  auto params = model.AllParameters();
  if (params.size() != opt.size()) {
    throw DimensionError("optimizer state has " + std::to_string(opt.size()) +
                         " velocities for " + std::to_string(params.size()) +
                         " parameters");
  }
  for (std::size_t pos : param_positions) {
    SgdMomentumStep(*params.at(pos), opt.velocity(pos), lr, mu);
  }
}

}  // namespace kbc::mtltrain
