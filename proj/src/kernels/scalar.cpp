// Copyright 2026 The simaug Authors
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

#include "simaug/kernels.hpp"

namespace simaug::kernels {

namespace {

// Lane j accumulates elements j, j+8, j+16, ...; lanes are folded as
// (l0+l4, l1+l5, l2+l6, l3+l7) and then ((t0+t1)+(t2+t3)); the tail is added
// last in order. The SIMD variants reproduce exactly this sequence.
template <typename T>
double dot_ref(const T* a, const T* b, std::size_t n) {
  double lane[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t j = 0; j < 8; ++j) {
      double p = static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
      lane[j] = lane[j] + p;
    }
  }
  double t0 = lane[0] + lane[4];
  double t1 = lane[1] + lane[5];
  double t2 = lane[2] + lane[6];
  double t3 = lane[3] + lane[7];
  double sum = (t0 + t1) + (t2 + t3);
  for (; i < n; ++i) {
    sum = sum + static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

double dot_f32(const float* a, const float* b, std::size_t n) { return dot_ref(a, b, n); }
double dot_f64(const double* a, const double* b, std::size_t n) { return dot_ref(a, b, n); }

void axpy_f64(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Backend::kScalar, dot_f32, dot_f64, axpy_f64};
  return table;
}

}  // namespace simaug::kernels
