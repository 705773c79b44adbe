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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace simaug {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seeds for independent per-entity streams. Keyed by external id so the
// stream of an entity does not depend on iteration order or worker count.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view key);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t key);

// Portable random source: the engine is fully specified by the standard and
// the derived distributions are implemented here, so sequences are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform();

  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(values[i - 1], values[j]);
  }
}

// Moves a uniform sample of `count` elements (without replacement) to the
// front of `values`, in sampled order.
template <typename T>
void partial_shuffle(std::span<T> values, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count && i + 1 < values.size(); ++i) {
    std::size_t j = i + rng.below(values.size() - i);
    std::swap(values[i], values[j]);
  }
}

}  // namespace simaug
