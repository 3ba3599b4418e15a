// Copyright 2026 The Homogen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMOGEN_RNG_H_
#define HOMOGEN_RNG_H_

#include <cstdint>
#include <limits>
#include <random>

namespace homogen {

// Seedable random source shared by every sampler in the project.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions are implemented here rather than taken from
// <random> because the standard leaves their algorithms unspecified, and
// datasets must be bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix(seed)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in the closed range [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(NextU64());  // full range
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = NextU64();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform real in [0, 1) with 53 bits of precision.
  double UniformReal() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return UniformReal() < p; }

 private:
  // splitmix64 finalizer, so that adjacent seeds give unrelated streams.
  static std::uint64_t Mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace homogen

#endif  // HOMOGEN_RNG_H_
