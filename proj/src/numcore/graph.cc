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
#include "kbc/numcore/graph.h"

#include <algorithm>
#include <cmath>

#include "kbc/errors.h"
#include "kbc/numcore/kernels.h"

namespace kbc::numcore {

namespace {

std::string Axes(const Tensor &a, const Tensor &b) {
  return a.ShapeString() + " vs " + b.ShapeString();
}

// Row-wise softmax of one row into out; returns -log p[gold].
double XentRow(std::span<const double> logits, std::size_t gold,
               std::span<double> probs) {
  double mx = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    probs[k] = std::exp(logits[k] - mx);
    total += probs[k];
  }
  for (double &p : probs) p /= total;
  return -(logits[gold] - mx - std::log(total));
}

}  // namespace

Var Graph::Push(Node n) {
  if (!record_) n.requires_grad = false;
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

const Graph::Node &Graph::node(Var v) const {
  if (v.id >= nodes_.size()) throw ContractError("variable from another graph");
  return nodes_[v.id];
}

void Graph::CheckOwned(Var v, const char *op) const {
  if (v.id >= nodes_.size()) {
    throw ContractError(std::string(op) + ": variable from another graph");
  }
}

bool Graph::AnyRequiresGrad(std::initializer_list<std::size_t> ids) const {
  for (std::size_t id : ids) {
    if (nodes_[id].requires_grad) return true;
  }
  return false;
}

const Tensor &Graph::value(Var v) const {
  const Node &n = node(v);
  return n.op == Op::kParam ? n.param->value : n.value;
}

Tensor Graph::grad(Var v) const {
  const Node &n = node(v);
  if (n.op == Op::kParam && n.requires_grad) return n.param->grad;
  if (n.has_grad) return n.grad;
  Tensor zero = value(v);
  zero.Fill(0.0);
  return zero;
}

Tensor &Graph::GradRef(std::size_t id) {
  Node &n = nodes_[id];
  if (n.op == Op::kParam) {
    if (!n.param->grad.SameShape(n.param->value)) {
      n.param->grad = Tensor(n.param->value.shape(), 0.0);
    }
    return n.param->grad;
  }
  if (!n.has_grad) {
    n.grad = Tensor(n.value.shape(), 0.0);
    n.has_grad = true;
  }
  return n.grad;
}

Var Graph::Input(Tensor value) {
  Node n;
  n.op = Op::kInput;
  n.value = std::move(value);
  n.requires_grad = true;
  return Push(std::move(n));
}

Var Graph::Constant(Tensor value) {
  Node n;
  n.op = Op::kConstant;
  n.value = std::move(value);
  return Push(std::move(n));
}

Var Graph::Param(Parameter &param) {
  Node n;
  n.op = Op::kParam;
  n.param = &param;
  n.requires_grad = true;
  return Push(std::move(n));
}

Var Graph::Param(const Parameter &param) {
  Node n;
  n.op = Op::kParam;
  // Never written through: requires_grad stays false, so Backward skips it.
  n.param = const_cast<Parameter *>(&param);
  return Push(std::move(n));
}

Var Graph::Affine(Var x, Var w, Var b) {
  CheckOwned(x, "affine");
  CheckOwned(w, "affine");
  CheckOwned(b, "affine");
  const Tensor &xv = value(x);
  const Tensor &wv = value(w);
  const Tensor &bv = value(b);
  if (xv.cols() != wv.rows()) {
    throw DimensionError("affine: x cols (axis 1 of x) " + Axes(xv, wv) +
                         " != W rows (axis 0 of W)");
  }
  if (bv.size() != wv.cols() || bv.rows() != 1) {
    throw DimensionError("affine: bias length " + bv.ShapeString() +
                         " != W cols (axis 1 of W) " + wv.ShapeString());
  }
  const std::size_t m = xv.rows(), k = xv.cols(), nc = wv.cols();
  Node n;
  n.op = Op::kAffine;
  n.parents = {x.id, w.id, b.id};
  n.value = Tensor({m, nc});
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(bv.data().begin(), bv.data().end(), n.value.row(i).begin());
  }
  kernels::Gemm({m, k, nc}, xv.data(), wv.data(), n.value.data());
  n.requires_grad = AnyRequiresGrad({x.id, w.id, b.id});
  return Push(std::move(n));
}

Var Graph::MatMul(Var a, Var b) {
  CheckOwned(a, "matmul");
  CheckOwned(b, "matmul");
  const Tensor &av = value(a);
  const Tensor &bv = value(b);
  if (av.cols() != bv.rows()) {
    throw DimensionError("matmul: axis 1 of lhs != axis 0 of rhs, " +
                         Axes(av, bv));
  }
  const std::size_t m = av.rows(), k = av.cols(), nc = bv.cols();
  Node n;
  n.op = Op::kMatMul;
  n.parents = {a.id, b.id};
  n.value = Tensor({m, nc});
  kernels::Gemm({m, k, nc}, av.data(), bv.data(), n.value.data());
  n.requires_grad = AnyRequiresGrad({a.id, b.id});
  return Push(std::move(n));
}

Var Graph::Add(Var a, Var b) {
  CheckOwned(a, "add");
  CheckOwned(b, "add");
  const Tensor &av = value(a);
  const Tensor &bv = value(b);
  if (!av.SameShape(bv)) throw DimensionError("add: " + Axes(av, bv));
  Node n;
  n.op = Op::kAdd;
  n.parents = {a.id, b.id};
  n.value = av;
  for (std::size_t i = 0; i < n.value.size(); ++i) n.value[i] += bv[i];
  n.requires_grad = AnyRequiresGrad({a.id, b.id});
  return Push(std::move(n));
}

Var Graph::Mul(Var a, Var b) {
  CheckOwned(a, "mul");
  CheckOwned(b, "mul");
  const Tensor &av = value(a);
  const Tensor &bv = value(b);
  if (!av.SameShape(bv)) throw DimensionError("mul: " + Axes(av, bv));
  Node n;
  n.op = Op::kMul;
  n.parents = {a.id, b.id};
  n.value = av;
  for (std::size_t i = 0; i < n.value.size(); ++i) n.value[i] *= bv[i];
  n.requires_grad = AnyRequiresGrad({a.id, b.id});
  return Push(std::move(n));
}

Var Graph::Sigmoid(Var a) {
  CheckOwned(a, "sigmoid");
  Node n;
  n.op = Op::kSigmoid;
  n.parents = {a.id};
  n.value = value(a);
  for (double &v : n.value.data()) v = numcore::Sigmoid(v);
  n.requires_grad = AnyRequiresGrad({a.id});
  return Push(std::move(n));
}

Var Graph::Tanh(Var a) {
  CheckOwned(a, "tanh");
  Node n;
  n.op = Op::kTanh;
  n.parents = {a.id};
  n.value = value(a);
  for (double &v : n.value.data()) v = std::tanh(v);
  n.requires_grad = AnyRequiresGrad({a.id});
  return Push(std::move(n));
}

Var Graph::Scale(Var a, double factor) {
  CheckOwned(a, "scale");
  Node n;
  n.op = Op::kScale;
  n.parents = {a.id};
  n.value = value(a);
  for (double &v : n.value.data()) v *= factor;
  n.factor = factor;
  n.requires_grad = AnyRequiresGrad({a.id});
  return Push(std::move(n));
}

Var Graph::Sum(Var a) {
  CheckOwned(a, "sum");
  double total = 0.0;
  for (double v : value(a).data()) total += v;
  Node n;
  n.op = Op::kSum;
  n.parents = {a.id};
  n.value = Tensor::Scalar(total);
  n.requires_grad = AnyRequiresGrad({a.id});
  return Push(std::move(n));
}

Var Graph::SliceRows(Var a, std::size_t begin, std::size_t end) {
  CheckOwned(a, "slice_rows");
  const Tensor &av = value(a);
  if (begin >= end || end > av.rows()) {
    throw DimensionError("slice_rows: range [" + std::to_string(begin) + "," +
                         std::to_string(end) + ") outside axis 0 of " +
                         av.ShapeString());
  }
  const std::size_t c = av.cols();
  Node n;
  n.op = Op::kSliceRows;
  n.parents = {a.id};
  n.begin = begin;
  n.end = end;
  n.value = Tensor({end - begin, c});
  std::copy(av.data().begin() + begin * c, av.data().begin() + end * c,
            n.value.data().begin());
  n.requires_grad = AnyRequiresGrad({a.id});
  return Push(std::move(n));
}

Var Graph::SliceCols(Var a, std::size_t begin, std::size_t end) {
  CheckOwned(a, "slice_cols");
  const Tensor &av = value(a);
  if (begin >= end || end > av.cols()) {
    throw DimensionError("slice_cols: range [" + std::to_string(begin) + "," +
                         std::to_string(end) + ") outside axis 1 of " +
                         av.ShapeString());
  }
  const std::size_t r = av.rows(), w = end - begin;
  Node n;
  n.op = Op::kSliceCols;
  n.parents = {a.id};
  n.begin = begin;
  n.end = end;
  n.value = Tensor({r, w});
  for (std::size_t i = 0; i < r; ++i) {
    auto src = av.row(i).subspan(begin, w);
    std::copy(src.begin(), src.end(), n.value.row(i).begin());
  }
  n.requires_grad = AnyRequiresGrad({a.id});
  return Push(std::move(n));
}

Var Graph::ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw ContractError("concat_cols: no inputs");
  const std::size_t r = value(parts[0]).rows();
  std::size_t total = 0;
  Node n;
  n.op = Op::kConcatCols;
  for (Var p : parts) {
    CheckOwned(p, "concat_cols");
    const Tensor &pv = value(p);
    if (pv.rows() != r) {
      throw DimensionError("concat_cols: axis 0 differs, " +
                           Axes(value(parts[0]), pv));
    }
    total += pv.cols();
    n.parents.push_back(p.id);
    n.requires_grad = n.requires_grad || nodes_[p.id].requires_grad;
  }
  n.value = Tensor({r, total});
  std::size_t offset = 0;
  for (Var p : parts) {
    const Tensor &pv = value(p);
    for (std::size_t i = 0; i < r; ++i) {
      std::copy(pv.row(i).begin(), pv.row(i).end(),
                n.value.row(i).begin() + offset);
    }
    offset += pv.cols();
  }
  return Push(std::move(n));
}

Var Graph::ConcatRows(std::span<const Var> parts) {
  if (parts.empty()) throw ContractError("concat_rows: no inputs");
  const std::size_t c = value(parts[0]).cols();
  std::size_t total = 0;
  Node n;
  n.op = Op::kConcatRows;
  for (Var p : parts) {
    CheckOwned(p, "concat_rows");
    const Tensor &pv = value(p);
    if (pv.cols() != c) {
      throw DimensionError("concat_rows: axis 1 differs, " +
                           Axes(value(parts[0]), pv));
    }
    total += pv.rows();
    n.parents.push_back(p.id);
    n.requires_grad = n.requires_grad || nodes_[p.id].requires_grad;
  }
  n.value = Tensor({total, c});
  auto out = n.value.data().begin();
  for (Var p : parts) {
    const Tensor &pv = value(p);
    out = std::copy(pv.data().begin(), pv.data().end(), out);
  }
  return Push(std::move(n));
}

Var Graph::GatherRows(Var table, std::span<const std::size_t> indices) {
  CheckOwned(table, "gather_rows");
  const Tensor &tv = value(table);
  if (indices.empty()) throw ContractError("gather_rows: no indices");
  const std::size_t c = tv.cols();
  Node n;
  n.op = Op::kGather;
  n.parents = {table.id};
  n.indices.assign(indices.begin(), indices.end());
  n.value = Tensor({indices.size(), c});
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= tv.rows()) {
      throw ContractError("gather_rows: index " + std::to_string(indices[r]) +
                          " outside axis 0 of " + tv.ShapeString());
    }
    auto src = tv.row(indices[r]);
    std::copy(src.begin(), src.end(), n.value.row(r).begin());
  }
  n.requires_grad = AnyRequiresGrad({table.id});
  return Push(std::move(n));
}

Var Graph::SoftmaxCrossEntropy(Var logits, std::size_t gold) {
  CheckOwned(logits, "softmax_cross_entropy");
  const Tensor &lv = value(logits);
  if (lv.rows() != 1) {
    throw DimensionError("softmax_cross_entropy: expected one row, got " +
                         lv.ShapeString());
  }
  std::size_t g[] = {gold};
  return SoftmaxCrossEntropyRows(logits, g);
}

Var Graph::SoftmaxCrossEntropyRows(Var logits,
                                   std::span<const std::size_t> gold) {
  CheckOwned(logits, "softmax_cross_entropy");
  const Tensor &lv = value(logits);
  const std::size_t k = lv.cols();
  if (k < 2) {
    throw DimensionError("softmax_cross_entropy: need at least 2 classes, got " +
                         lv.ShapeString());
  }
  if (gold.size() != lv.rows()) {
    throw DimensionError("softmax_cross_entropy: " +
                         std::to_string(gold.size()) + " labels for " +
                         std::to_string(lv.rows()) + " rows");
  }
  Node n;
  n.op = Op::kSoftmaxXentRows;
  n.parents = {logits.id};
  n.indices.assign(gold.begin(), gold.end());
  n.cache = Tensor({lv.rows(), k});
  double total = 0.0;
  for (std::size_t r = 0; r < lv.rows(); ++r) {
    if (gold[r] >= k) {
      throw LabelError("gold index " + std::to_string(gold[r]) +
                       " outside [0," + std::to_string(k) + ")");
    }
    total += XentRow(lv.row(r), gold[r], n.cache.row(r));
  }
  n.value = Tensor::Scalar(total);
  n.requires_grad = AnyRequiresGrad({logits.id});
  return Push(std::move(n));
}

void Graph::Backward(Var loss) {
  CheckOwned(loss, "backward");
  if (!record_) throw ContractError("backward on a forward-only graph");
  if (backward_done_) throw ContractError("backward called twice on a graph");
  if (value(loss).size() != 1) {
    throw ContractError("backward needs a scalar loss, got " +
                        value(loss).ShapeString());
  }
  backward_done_ = true;
  if (!nodes_[loss.id].requires_grad) return;
  GradRef(loss.id)[0] += 1.0;

  for (std::size_t id = loss.id + 1; id-- > 0;) {
    Node &n = nodes_[id];
    if (!n.has_grad || !n.requires_grad) continue;
    // Parents always precede n, so GradRef on them never touches n.grad.
    const Tensor &g = n.grad;
    auto wants = [&](std::size_t p) { return nodes_[p].requires_grad; };

    switch (n.op) {
      case Op::kInput:
      case Op::kConstant:
      case Op::kParam:
        break;
      case Op::kAffine: {
        const std::size_t x = n.parents[0], w = n.parents[1], b = n.parents[2];
        const Tensor &xv = value(Var{x});
        const Tensor &wv = value(Var{w});
        const std::size_t m = xv.rows(), k = xv.cols(), nc = wv.cols();
        if (wants(x)) {
          kernels::GemmTransB({m, k, nc}, g.data(), wv.data(),
                              GradRef(x).data());
        }
        if (wants(w)) {
          kernels::GemmTransA({m, k, nc}, xv.data(), g.data(),
                              GradRef(w).data());
        }
        if (wants(b)) {
          Tensor &gb = GradRef(b);
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < nc; ++j) gb[j] += g.at(i, j);
          }
        }
        break;
      }
      case Op::kMatMul: {
        const std::size_t a = n.parents[0], b = n.parents[1];
        const Tensor &av = value(Var{a});
        const Tensor &bv = value(Var{b});
        const std::size_t m = av.rows(), k = av.cols(), nc = bv.cols();
        if (wants(a)) {
          kernels::GemmTransB({m, k, nc}, g.data(), bv.data(),
                              GradRef(a).data());
        }
        if (wants(b)) {
          kernels::GemmTransA({m, k, nc}, av.data(), g.data(),
                              GradRef(b).data());
        }
        break;
      }
      case Op::kAdd:
        for (std::size_t p : n.parents) {
          if (!wants(p)) continue;
          Tensor &gp = GradRef(p);
          for (std::size_t i = 0; i < g.size(); ++i) gp[i] += g[i];
        }
        break;
      case Op::kMul: {
        const std::size_t a = n.parents[0], b = n.parents[1];
        if (wants(a)) {
          const Tensor &bv = value(Var{b});
          Tensor &ga = GradRef(a);
          for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
        }
        if (wants(b)) {
          const Tensor &av = value(Var{a});
          Tensor &gb = GradRef(b);
          for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
        }
        break;
      }
      case Op::kSigmoid: {
        const std::size_t a = n.parents[0];
        if (!wants(a)) break;
        Tensor &ga = GradRef(a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double s = n.value[i];
          ga[i] += g[i] * s * (1.0 - s);
        }
        break;
      }
      case Op::kTanh: {
        const std::size_t a = n.parents[0];
        if (!wants(a)) break;
        Tensor &ga = GradRef(a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double t = n.value[i];
          ga[i] += g[i] * (1.0 - t * t);
        }
        break;
      }
      case Op::kScale: {
        const std::size_t a = n.parents[0];
        if (!wants(a)) break;
        Tensor &ga = GradRef(a);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * n.factor;
        break;
      }
      case Op::kSum: {
        const std::size_t a = n.parents[0];
        if (!wants(a)) break;
        Tensor &ga = GradRef(a);
        for (double &v : ga.data()) v += g[0];
        break;
      }
      case Op::kSliceRows: {
        const std::size_t a = n.parents[0];
        if (!wants(a)) break;
        Tensor &ga = GradRef(a);
        const std::size_t offset = n.begin * ga.cols();
        for (std::size_t i = 0; i < g.size(); ++i) ga[offset + i] += g[i];
        break;
      }
      case Op::kSliceCols: {
        const std::size_t a = n.parents[0];
        if (!wants(a)) break;
        Tensor &ga = GradRef(a);
        const std::size_t w = n.end - n.begin;
        for (std::size_t r = 0; r < g.rows(); ++r) {
          for (std::size_t j = 0; j < w; ++j) {
            ga.at(r, n.begin + j) += g.at(r, j);
          }
        }
        break;
      }
      case Op::kConcatCols: {
        std::size_t offset = 0;
        for (std::size_t p : n.parents) {
          const std::size_t w = value(Var{p}).cols();
          if (wants(p)) {
            Tensor &gp = GradRef(p);
            for (std::size_t r = 0; r < g.rows(); ++r) {
              for (std::size_t j = 0; j < w; ++j) {
                gp.at(r, j) += g.at(r, offset + j);
              }
            }
          }
          offset += w;
        }
        break;
      }
      case Op::kConcatRows: {
        std::size_t offset = 0;
        for (std::size_t p : n.parents) {
          const std::size_t len = value(Var{p}).size();
          if (wants(p)) {
            Tensor &gp = GradRef(p);
            for (std::size_t i = 0; i < len; ++i) gp[i] += g[offset + i];
          }
          offset += len;
        }
        break;
      }
      case Op::kGather: {
        const std::size_t t = n.parents[0];
        if (!wants(t)) break;
        Tensor &gt = GradRef(t);
        for (std::size_t r = 0; r < n.indices.size(); ++r) {
          auto dst = gt.row(n.indices[r]);
          auto src = g.row(r);
          for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
        }
        break;
      }
      case Op::kSoftmaxXentRows: {
        const std::size_t l = n.parents[0];
        if (!wants(l)) break;
        Tensor &gl = GradRef(l);
        for (std::size_t r = 0; r < n.cache.rows(); ++r) {
          auto probs = n.cache.row(r);
          auto dst = gl.row(r);
          for (std::size_t k = 0; k < probs.size(); ++k) {
            const double onehot = k == n.indices[r] ? 1.0 : 0.0;
            dst[k] += g[0] * (probs[k] - onehot);
          }
        }
        break;
      }
    }
  }
}

}  // namespace kbc::numcore
