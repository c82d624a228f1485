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

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "graphon/parallel.hpp"
#include "graphon/random.hpp"

namespace graphon {
namespace {

// Known-answer vectors of the reference Threefry-2x64-20 implementation.
TEST_CASE("threefry known answers") {
  CHECK(threefry2x64_20({0, 0}, {0, 0}) ==
        Threefry2x64{0xc2b6e3a8c2c69865ull, 0x6f81ed42f350084dull});
  constexpr std::uint64_t ones = ~0ull;
  CHECK(threefry2x64_20({ones, ones}, {ones, ones}) ==
        Threefry2x64{0xe02cb7c4d95d277aull, 0xd06633d0893b8b68ull});
  CHECK(threefry2x64_20({0x243f6a8885a308d3ull, 0x13198a2e03707344ull},
                        {0xa4093822299f31d0ull, 0x082efa98ec4e6c89ull}) ==
        Threefry2x64{0x263c7d30bb0f0af1ull, 0x56be8361d3311526ull});
}

TEST_CASE("threefry is usable at compile time") {
  static_assert(threefry2x64_20({0, 0}, {0, 0})[0] == 0xc2b6e3a8c2c69865ull);
}

TEST_CASE("unit interval mapping uses the top 53 bits") {
  CHECK(to_unit_interval(0) == 0.0);
  CHECK(to_unit_interval(~0ull) == 1.0 - 0x1.0p-53);
  CHECK(to_unit_interval(1ull << 63) == 0.5);
  CHECK(to_unit_interval((1ull << 11) - 1) == 0.0);
}

TEST_CASE("counter rng is random access") {
  const CounterRng rng(42, Stream::kLatent);
  std::vector<double> forward;
  for (std::uint64_t i = 0; i < 100; ++i) forward.push_back(rng.uniform(i));
  for (std::uint64_t i = 100; i-- > 0;) CHECK(rng.uniform(i) == forward[i]);
  for (double u : forward) {
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("streams and seeds are separated") {
  const CounterRng a(7, Stream::kLatent);
  const CounterRng b(7, Stream::kEdge);
  const CounterRng c(8, Stream::kLatent);
  CHECK(a.bits(0) != b.bits(0));
  CHECK(a.bits(0) != c.bits(0));
  CHECK(a.bits(0, 0) != a.bits(0, 1));

  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(1, i));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(1, 0, Stream::kDrawSeed) !=
        derive_seed(1, 0, Stream::kSweepSeed));
}

TEST_CASE("uniform mean and variance") {
  const CounterRng rng(123, Stream::kEdge);
  const int n = 200000;
  double s = 0;
  double s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(static_cast<std::uint64_t>(i));
    s += u;
    s2 += u * u;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  // 5 sigma of the sample mean is 5 * sqrt(1/12 / n) ~ 0.0032.
  CHECK(mean == doctest::Approx(0.5).epsilon(0.0065));
  CHECK(var == doctest::Approx(1.0 / 12).epsilon(0.02));
}

TEST_CASE("parallel_for visits every index once") {
  for (unsigned threads : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> hits(97);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  for (unsigned threads : {1u, 3u}) {
    CHECK_THROWS_AS(parallel_for(10, threads,
                                 [](std::size_t i) {
                                   if (i == 4) throw std::runtime_error("x");
                                 }),
                    std::runtime_error);
  }
}

}  // namespace
}  // namespace graphon
