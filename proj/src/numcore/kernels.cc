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
#include "kbc/numcore/kernels.h"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kbc::numcore::kernels {

namespace serial {

void Gemm(GemmShape s, std::span<const double> a, std::span<const double> b,
          std::span<double> c) {
  for (std::size_t i = 0; i < s.m; ++i) {
    double *crow = c.data() + i * s.n;
    for (std::size_t p = 0; p < s.k; ++p) {
      const double aip = a[i * s.k + p];
      const double *brow = b.data() + p * s.n;
      for (std::size_t j = 0; j < s.n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void GemmTransA(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c) {
  for (std::size_t i = 0; i < s.m; ++i) {
    const double *brow = b.data() + i * s.n;
    for (std::size_t p = 0; p < s.k; ++p) {
      const double aip = a[i * s.k + p];
      double *crow = c.data() + p * s.n;
      for (std::size_t j = 0; j < s.n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void GemmTransB(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c) {
  for (std::size_t i = 0; i < s.m; ++i) {
    const double *arow = a.data() + i * s.n;
    for (std::size_t p = 0; p < s.k; ++p) {
      const double *brow = b.data() + p * s.n;
      double acc = 0.0;
      for (std::size_t j = 0; j < s.n; ++j) acc += arow[j] * brow[j];
      c[i * s.k + p] += acc;
    }
  }
}

void MomentumUpdate(std::span<double> p, std::span<double> v,
                    std::span<const double> g, double lr, double mu) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    v[i] = mu * v[i] - lr * g[i];
    p[i] += v[i];
  }
}

}  // namespace serial

namespace parallel {

// Row i of C depends only on row i of A; rows are independent.
void Gemm(GemmShape s, std::span<const double> a, std::span<const double> b,
          std::span<double> c) {
  const auto m = static_cast<std::int64_t>(s.m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    double *crow = c.data() + i * s.n;
    for (std::size_t p = 0; p < s.k; ++p) {
      const double aip = a[i * s.k + p];
      const double *brow = b.data() + p * s.n;
      for (std::size_t j = 0; j < s.n; ++j) crow[j] += aip * brow[j];
    }
  }
}

// Partition over rows p of C; each thread walks i in ascending order, which
// reproduces the serial accumulation order for every C[p, j].
void GemmTransA(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c) {
  const auto k = static_cast<std::int64_t>(s.k);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < k; ++p) {
    double *crow = c.data() + p * s.n;
    for (std::size_t i = 0; i < s.m; ++i) {
      const double aip = a[i * s.k + p];
      const double *brow = b.data() + i * s.n;
      for (std::size_t j = 0; j < s.n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void GemmTransB(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c) {
  const auto m = static_cast<std::int64_t>(s.m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    const double *arow = a.data() + i * s.n;
    for (std::size_t p = 0; p < s.k; ++p) {
      const double *brow = b.data() + p * s.n;
      double acc = 0.0;
      for (std::size_t j = 0; j < s.n; ++j) acc += arow[j] * brow[j];
      c[i * s.k + p] += acc;
    }
  }
}

void MomentumUpdate(std::span<double> p, std::span<double> v,
                    std::span<const double> g, double lr, double mu) {
  const auto n = static_cast<std::int64_t>(p.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    v[i] = mu * v[i] - lr * g[i];
    p[i] += v[i];
  }
}

}  // namespace parallel

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

bool UseParallel(std::size_t work, std::size_t threshold) {
  return work >= threshold && MaxThreads() > 1;
}

}  // namespace

void Gemm(GemmShape s, std::span<const double> a, std::span<const double> b,
          std::span<double> c) {
  if (UseParallel(s.m * s.k * s.n, kParallelGemmWork) && s.m > 1) {
    parallel::Gemm(s, a, b, c);
  } else {
    serial::Gemm(s, a, b, c);
  }
}

void GemmTransA(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c) {
  if (UseParallel(s.m * s.k * s.n, kParallelGemmWork) && s.k > 1) {
    parallel::GemmTransA(s, a, b, c);
  } else {
    serial::GemmTransA(s, a, b, c);
  }
}

void GemmTransB(GemmShape s, std::span<const double> a,
                std::span<const double> b, std::span<double> c) {
  if (UseParallel(s.m * s.k * s.n, kParallelGemmWork) && s.m > 1) {
    parallel::GemmTransB(s, a, b, c);
  } else {
    serial::GemmTransB(s, a, b, c);
  }
}

void MomentumUpdate(std::span<double> p, std::span<double> v,
                    std::span<const double> g, double lr, double mu) {
  if (UseParallel(p.size(), kParallelElementwiseWork)) {
    parallel::MomentumUpdate(p, v, g, lr, mu);
  } else {
    serial::MomentumUpdate(p, v, g, lr, mu);
  }
}

}  // namespace kbc::numcore::kernels
