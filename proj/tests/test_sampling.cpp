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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "graphon/algebra.hpp"
#include "graphon/sampling.hpp"

namespace graphon {
namespace {

SamplerConfig config(Index n, std::uint64_t seed, GraphonSpec w) {
  SamplerConfig c;
  c.n = n;
  c.seed = seed;
  c.graphon = std::move(w);
  return c;
}

std::vector<GraphonSpec> catalog_graphons() {
  return {GraphonSpec::builtin("constant", {0.3}), GraphonSpec::builtin("xy"),
          GraphonSpec::builtin("minmax"), GraphonSpec::builtin("one_minus_max")};
}

TEST_CASE("latent examples") {
  const auto one = sample_latents(config(1, 3, GraphonSpec::constant(0.5)));
  REQUIRE(one.n() == 1);
  CHECK(one.xs()[0] >= 0);
  CHECK(one.xs()[0] < 1);

  const auto a = sample_latents(config(4, 7, GraphonSpec::constant(0.5)));
  const auto b = sample_latents(config(4, 7, GraphonSpec::constant(0.5)));
  CHECK(a == b);
  CHECK(a != sample_latents(config(4, 8, GraphonSpec::constant(0.5))));

  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto big = sample_latents(config(1000, seed, GraphonSpec::constant(0)));
    for (Index i = 0; i < 1000; ++i) {
      CHECK(big.xs()[i] >= static_cast<double>(i) / 1000);
      CHECK(big.xs()[i] < static_cast<double>(i + 1) / 1000);
    }
    CHECK(std::is_sorted(big.xs().begin(), big.xs().end()));
  }
}

TEST_CASE("iid latents are a comparison mode") {
  auto c = config(50, 4, GraphonSpec::constant(0.5));
  c.iid_latents = true;
  const auto xs = sample_latents(c);
  CHECK_FALSE(xs.stratified());
  CHECK_FALSE(std::is_sorted(xs.xs().begin(), xs.xs().end()));
}

TEST_CASE("sample_graph examples") {
  const auto full = sample_graph(config(5, 1, GraphonSpec::constant(1)));
  CHECK(full.edge_count() == 10);
  CHECK(sample_graph(config(5, 1, GraphonSpec::constant(0))).edge_count() == 0);

  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto g = sample_graph(config(200, seed, GraphonSpec::constant(0.5)));
    const double pairs = 200.0 * 199 / 2;
    const double sigma = std::sqrt(pairs * 0.25);
    CHECK(std::abs(static_cast<double>(g.edge_count()) - pairs / 2) <=
          4 * sigma);
  }
}

TEST_CASE("sample_graph is deterministic and checks latents") {
  const auto c = config(30, 5, GraphonSpec::builtin("xy"));
  CHECK(sample_graph(c) == sample_graph(c));
  CHECK_THROWS_AS((void)sample_graph(c, LatentPoints({0.5}, true)),
                  DomainError);
}

TEST_CASE("expected graphon examples") {
  const auto c = expected_graphon(GraphonSpec::constant(0.5), 2);
  CHECK(c.step.values() ==
        (MatrixX<double>(2, 2) << 0, 0.5, 0.5, 0).finished());

  const auto xy = expected_graphon(GraphonSpec::builtin("xy"), 2);
  CHECK(std::abs(xy.step(0, 1) - 0.1875) <= 1e-12);
  CHECK(xy.step(0, 0) == 0);

  MatrixX<double> s(3, 3);
  s << 0.2, 0.5, 0.1, 0.5, 0.9, 0.4, 0.1, 0.4, 0.7;
  const auto st = expected_graphon(GraphonSpec::step(StepGraphon(s)), 3);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(st.step(i, j) == (i == j ? 0 : s(i, j)));
  }
  CHECK(st.source == "step");
}

TEST_CASE("expected cells are sandwiched by the cell extremes") {
  for (const auto& w : catalog_graphons()) {
    for (Index n : {2, 3, 5, 8}) {
      const auto e = expected_graphon(w, n);
      for (Index i = 0; i < n; ++i) {
        CHECK(e.step(i, i) == 0);
        for (Index j = 0; j < n; ++j) {
          if (i == j) continue;
          // 32 x 32 scan of the closed cell; the built-ins are monotone in
          // each variable, so the corners are among the scanned points.
          double lo = 1;
          double hi = 0;
          for (int a = 0; a <= 32; ++a) {
            for (int b = 0; b <= 32; ++b) {
              const double v = w((i + a / 32.0) / n, (j + b / 32.0) / n);
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
          }
          CHECK(e.step(i, j) >= lo - 1e-12);
          CHECK(e.step(i, j) <= hi + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("expected graphon of an expression matches a closed form") {
  // Average of x*y over [a,b]x[c,d] is the product of interval midpoints.
  const auto e = expected_graphon(GraphonSpec::expression("x*y"), 4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(std::abs(e.step(i, j) - (i + 0.5) / 4 * (j + 0.5) / 4) <= 1e-4);
    }
  }
}

TEST_CASE("monte-carlo examples") {
  const auto ones = mc_expected_graphon(config(4, 2, GraphonSpec::constant(1)), 3);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      CHECK(ones.mean(i, j) == (i == j ? 0 : 1));
      CHECK(ones.standard_error(i, j) == 0);
    }
  }

  const auto half =
      mc_expected_graphon(config(4, 5, GraphonSpec::constant(0.5)), 10000);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(half.standard_error(i, j) == doctest::Approx(0.005).epsilon(0.05));
      CHECK(std::abs(half.mean(i, j) - 0.5) <= 5 * half.standard_error(i, j));
    }
  }

  const auto c = config(6, 8, GraphonSpec::builtin("xy"));
  const auto single = mc_expected_graphon(c, 1);
  SamplerConfig first = c;
  first.seed = draw_seed(c.seed, 0);
  CHECK(single.mean == canonical_graphon(sample_graph(first)));
  CHECK(single.standard_error.isZero());
  CHECK_THROWS_AS((void)mc_expected_graphon(c, 0), DomainError);
}

TEST_CASE("monte-carlo agrees with the exact expectation on every builtin") {
  for (const auto& w : catalog_graphons()) {
    for (Index n : {3, 8}) {
      const auto mc = mc_expected_graphon(config(n, 17, w), 10000, 2);
      const auto exact = expected_graphon(w, n);
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          if (i == j) continue;
          CAPTURE(w.label());
          CHECK(std::abs(mc.mean(i, j) - exact.step(i, j)) <=
                5 * mc.standard_error(i, j));
        }
      }
    }
  }
}

TEST_CASE("monte-carlo is independent of the thread count") {
  const auto c = config(7, 3, GraphonSpec::builtin("minmax"));
  const auto one = mc_expected_graphon(c, 500, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = mc_expected_graphon(c, 500, t);
    CHECK(many.mean == one.mean);
    CHECK(many.standard_error == one.standard_error);
  }
}

}  // namespace
}  // namespace graphon
