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

#include <arm_neon.h>

#include "simaug/kernels.hpp"

namespace simaug::kernels {

namespace {

// Four two-lane accumulators hold lanes (0,1) (2,3) (4,5) (6,7).
inline double fold(float64x2_t acc01, float64x2_t acc23, float64x2_t acc45,
                   float64x2_t acc67) {
  float64x2_t t01 = vaddq_f64(acc01, acc45);
  float64x2_t t23 = vaddq_f64(acc23, acc67);
  double t0 = vgetq_lane_f64(t01, 0), t1 = vgetq_lane_f64(t01, 1);
  double t2 = vgetq_lane_f64(t23, 0), t3 = vgetq_lane_f64(t23, 1);
  return (t0 + t1) + (t2 + t3);
}

double dot_f32(const float* a, const float* b, std::size_t n) {
  float64x2_t acc[4] = {vdupq_n_f64(0), vdupq_n_f64(0), vdupq_n_f64(0), vdupq_n_f64(0)};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    float32x4_t a_lo = vld1q_f32(a + i), a_hi = vld1q_f32(a + i + 4);
    float32x4_t b_lo = vld1q_f32(b + i), b_hi = vld1q_f32(b + i + 4);
    acc[0] = vaddq_f64(acc[0], vmulq_f64(vcvt_f64_f32(vget_low_f32(a_lo)),
                                         vcvt_f64_f32(vget_low_f32(b_lo))));
    acc[1] = vaddq_f64(acc[1], vmulq_f64(vcvt_high_f64_f32(a_lo), vcvt_high_f64_f32(b_lo)));
    acc[2] = vaddq_f64(acc[2], vmulq_f64(vcvt_f64_f32(vget_low_f32(a_hi)),
                                         vcvt_f64_f32(vget_low_f32(b_hi))));
    acc[3] = vaddq_f64(acc[3], vmulq_f64(vcvt_high_f64_f32(a_hi), vcvt_high_f64_f32(b_hi)));
  }
  double sum = fold(acc[0], acc[1], acc[2], acc[3]);
  for (; i < n; ++i) {
    sum = sum + static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

double dot_f64(const double* a, const double* b, std::size_t n) {
  float64x2_t acc[4] = {vdupq_n_f64(0), vdupq_n_f64(0), vdupq_n_f64(0), vdupq_n_f64(0)};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (int j = 0; j < 4; ++j) {
      acc[j] = vaddq_f64(acc[j], vmulq_f64(vld1q_f64(a + i + 2 * j), vld1q_f64(b + i + 2 * j)));
    }
  }
  double sum = fold(acc[0], acc[1], acc[2], acc[3]);
  for (; i < n; ++i) sum = sum + a[i] * b[i];
  return sum;
}

void axpy_f64(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{Backend::kNeon, dot_f32, dot_f64, axpy_f64};
  return &table;
}

}  // namespace simaug::kernels
