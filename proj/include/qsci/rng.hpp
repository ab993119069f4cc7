// Copyright 2026 The QSCI Authors
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

#pragma once

#include <cstdint>

namespace qsci {

/// splitmix64 finalizer, used only to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t v) {
  v += 0x9E3779B97F4A7C15ull;
  v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
  v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
  return v ^ (v >> 31);
}

/// Seed of the stream identified by (seed, index, purpose). Streams are
/// keyed per shot (or per group, per trial) so results do not depend on
/// how work is split across threads.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t purpose) {
  return mix64(mix64(mix64(seed) ^ index) ^ (purpose * 0xD1B54A32D192ED03ull));
}

enum StreamPurpose : std::uint64_t { kOutcome = 0, kNoise = 1, kReadout = 2 };

// Counter-based: draw k of a stream is mix64 of (key + k * golden), so a
// stream costs one word of state and is cheap to open per shot.
class Stream {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  Stream(std::uint64_t seed, std::uint64_t index, std::uint64_t purpose)
      : counter_(stream_seed(seed, index, purpose)) {}

  result_type operator()() {
    const std::uint64_t v = mix64(counter_);
    counter_ += 0x9E3779B97F4A7C15ull;
    return v;
  }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t counter_;
};

}  // namespace qsci
