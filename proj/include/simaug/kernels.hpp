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

#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops. Each operation has a scalar reference and
// optional SIMD variants chosen once at runtime. All variants reduce in the
// same fixed order (eight interleaved partial sums, then a fixed tree) and
// never contract multiply-add, so every backend returns bit-identical values.
namespace simaug::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view to_string(Backend backend);

struct KernelTable {
  Backend backend;
  // Dot product of float rows with double accumulation.
  double (*dot_f32)(const float* a, const float* b, std::size_t n);
  double (*dot_f64)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy_f64)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();
// Null when the variant was not compiled in.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Best backend supported by the running CPU.
Backend detect();
bool supported(Backend backend);

const KernelTable& active();
// Throws kInvalidArgument when the backend is not supported here.
void select(Backend backend);
Backend parse_backend(std::string_view name);

inline double dot(const float* a, const float* b, std::size_t n) {
  return active().dot_f32(a, b, n);
}
inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot_f64(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy_f64(alpha, x, y, n);
}

}  // namespace simaug::kernels
