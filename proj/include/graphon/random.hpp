// Copyright 2026 The Graphon Lab Authors.
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

#ifndef GRAPHON_RANDOM_HPP_
#define GRAPHON_RANDOM_HPP_

// Counter-based random numbers built on Threefry-2x64 with 20 rounds
// (Salmon et al., Random123). Every draw is a pure function of
// (key, counter), so results do not depend on evaluation order or on how
// work is split across threads.

#include <array>
#include <cstdint>

namespace graphon {

using Threefry2x64 = std::array<std::uint64_t, 2>;

constexpr Threefry2x64 threefry2x64_20(Threefry2x64 counter,
                                       Threefry2x64 key) {
  constexpr int kRotations[8] = {16, 42, 12, 31, 16, 32, 24, 21};
  const std::uint64_t ks[3] = {key[0], key[1],
                               0x1BD11BDAA9FC1A22ull ^ key[0] ^ key[1]};
  auto rotl = [](std::uint64_t v, int r) {
    return (v << r) | (v >> (64 - r));
  };
  std::uint64_t x0 = counter[0] + ks[0];
  std::uint64_t x1 = counter[1] + ks[1];
  for (int round = 0; round < 20; ++round) {
    x0 += x1;
    x1 = rotl(x1, kRotations[round % 8]) ^ x0;
    if (round % 4 == 3) {
      const std::uint64_t s = static_cast<std::uint64_t>(round / 4 + 1);
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + s;
    }
  }
  return {x0, x1};
}

// Maps the top 53 bits of a 64-bit word to a double in [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream tags; each consumer of randomness owns one so streams never collide.
enum class Stream : std::uint64_t {
  kLatent = 1,
  kEdge = 2,
  kDrawSeed = 3,
  kValidation = 4,
  kCutRestart = 5,
  kSweepSeed = 6,
};

// A keyed random stream. uniform(i) is the i-th variate of the stream and
// is independent of how many other variates have been requested.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, Stream stream)
      : key_{seed, static_cast<std::uint64_t>(stream)} {}

  constexpr std::uint64_t bits(std::uint64_t index,
                               std::uint64_t lane = 0) const {
    return threefry2x64_20({index, lane}, key_)[0];
  }

  constexpr double uniform(std::uint64_t index, std::uint64_t lane = 0) const {
    return to_unit_interval(bits(index, lane));
  }

 private:
  Threefry2x64 key_;
};

// Child seed for the index-th independent replicate of a computation.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    Stream purpose = Stream::kDrawSeed) {
  return CounterRng(master, purpose).bits(index);
}

}  // namespace graphon

#endif  // GRAPHON_RANDOM_HPP_
