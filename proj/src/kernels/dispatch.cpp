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

#include <atomic>

#include <fmt/core.h>

#include "simaug/error.hpp"
#include "simaug/kernels.hpp"

namespace simaug::kernels {

#ifndef SIMAUG_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef SIMAUG_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

bool supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(SIMAUG_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(SIMAUG_HAVE_NEON)
      return true;  // Advanced SIMD is mandatory on AArch64.
#else
      return false;
#endif
  }
  return false;
}

Backend detect() {
  if (supported(Backend::kAvx2)) return Backend::kAvx2;
  if (supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

namespace {

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::kAvx2: return avx2_table();
    case Backend::kNeon: return neon_table();
    case Backend::kScalar: break;
  }
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{table_for(detect())};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(Backend backend) {
  if (!supported(backend)) {
    fail(ErrorCode::kInvalidArgument,
         fmt::format("kernel backend '{}' is not available on this machine", to_string(backend)));
  }
  current().store(table_for(backend), std::memory_order_relaxed);
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "neon") return Backend::kNeon;
  if (name == "auto") return detect();
  fail(ErrorCode::kInvalidArgument, fmt::format("unknown kernel backend '{}'", name));
}

}  // namespace simaug::kernels
