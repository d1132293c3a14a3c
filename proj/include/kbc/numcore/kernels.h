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
#ifndef KBC_NUMCORE_KERNELS_H_
#define KBC_NUMCORE_KERNELS_H_

#include <cstddef>
#include <span>

// Dense inner loops used by the autodiff graph and the optimizer.
//
// Every kernel exists twice: a plain serial loop (the reference) and an
// OpenMP version that partitions the OUTPUT elements across threads. Each
// output element is still reduced by a single thread in the same index
// order, so both versions return bitwise-identical results for any thread
// count. Matrices are row-major; all kernels accumulate into C.
namespace kbc::numcore::kernels {

struct GemmShape {
  std::size_t m;  // rows of C
  std::size_t k;  // reduction length
  std::size_t n;  // cols of C
};

namespace serial {

// C[m x n] += A[m x k] * B[k x n]
void Gemm(GemmShape s, std::span<const double> a, std::span<const double> b,
          std::span<double> c);
// C[k x n] += A^T * B   where A is [m x k] and B is [m x n]
void GemmTransA(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c);
// C[m x k] += A * B^T   where A is [m x n] and B is [k x n]
void GemmTransB(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c);
// v = mu * v - lr * g;  p = p + v
void MomentumUpdate(std::span<double> p, std::span<double> v,
                    std::span<const double> g, double lr, double mu);

}  // namespace serial

namespace parallel {

void Gemm(GemmShape s, std::span<const double> a, std::span<const double> b,
          std::span<double> c);
void GemmTransA(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c);
void GemmTransB(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c);
void MomentumUpdate(std::span<double> p, std::span<double> v,
                    std::span<const double> g, double lr, double mu);

}  // namespace parallel

// Dispatching entry points: small problems run serially, large ones go
// through the OpenMP kernels. Results are identical either way.
void Gemm(GemmShape s, std::span<const double> a, std::span<const double> b,
          std::span<double> c);
void GemmTransA(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c);
void GemmTransB(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c);
void MomentumUpdate(std::span<double> p, std::span<double> v,
                    std::span<const double> g, double lr, double mu);

// Work (multiply-adds or elements) below which dispatch stays serial.
inline constexpr std::size_t kParallelGemmWork = 1u << 16;
inline constexpr std::size_t kParallelElementwiseWork = 1u << 15;

// Number of OpenMP threads available; 1 when built without OpenMP.
int MaxThreads();

}  // namespace kbc::numcore::kernels

#endif  // KBC_NUMCORE_KERNELS_H_
