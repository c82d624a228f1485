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

#include "graphon/sampling.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "graphon/algebra.hpp"
#include "graphon/parallel.hpp"
#include "graphon/random.hpp"

namespace graphon {
namespace {

constexpr Index kDrawsPerChunk = 64;

}  // namespace

LatentPoints sample_latents(const SamplerConfig& cfg) {
  cfg.validate();
  const CounterRng rng(cfg.seed, Stream::kLatent);
  const double n = static_cast<double>(cfg.n);
  std::vector<double> xs(static_cast<std::size_t>(cfg.n));
  for (Index i = 0; i < cfg.n; ++i) {
    const double u = rng.uniform(static_cast<std::uint64_t>(i));
    if (cfg.iid_latents) {
      xs[i] = u;
      continue;
    }
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    double x = (static_cast<double>(i) + u) / n;
    // (i + u) / n can round up to the next boundary.
    if (x >= hi) x = std::nextafter(hi, 0.0);
    if (x < lo) x = lo;
    xs[i] = x;
  }
  return LatentPoints(std::move(xs), !cfg.iid_latents);
}

SimpleGraph sample_graph(const SamplerConfig& cfg, const LatentPoints& latents) {
  cfg.validate();
  if (latents.n() != cfg.n) {
    throw DomainError("latent count " + std::to_string(latents.n()) +
                      " does not match n = " + std::to_string(cfg.n));
  }
  const CounterRng rng(cfg.seed, Stream::kEdge);
  const auto& xs = latents.xs();
  SimpleGraph g(cfg.n);
  for (Index i = 0; i < cfg.n; ++i) {
    for (Index j = i + 1; j < cfg.n; ++j) {
      const double p = cfg.graphon(xs[i], xs[j]);
      const auto counter = static_cast<std::uint64_t>(i * cfg.n + j);
      if (rng.uniform(counter) < p) g.add_edge(i, j);
    }
  }
  return g;
}

SimpleGraph sample_graph(const SamplerConfig& cfg) {
  return sample_graph(cfg, sample_latents(cfg));
}

ExpectedGraphon expected_graphon(const GraphonSpec& w, Index n,
                                 const QuadratureSpec& q) {
  if (n < 1) throw DomainError("expected graphon needs n >= 1");
  MatrixX<double> avg = symmetric_cell_averages(w, n, q);
  avg.diagonal().setZero();
  return {StepGraphon(std::move(avg)), w.label(), q};
}

std::uint64_t draw_seed(std::uint64_t master, Index draw) {
  return derive_seed(master, static_cast<std::uint64_t>(draw));
}

MonteCarloEstimate mc_expected_graphon(const SamplerConfig& cfg, Index draws,
                                       unsigned threads) {
  cfg.validate();
  if (draws < 1) throw DomainError("Monte-Carlo estimate needs draws >= 1");
  using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  const Index n = cfg.n;
  const Index chunks = (draws + kDrawsPerChunk - 1) / kDrawsPerChunk;
  std::vector<Counts> partial(static_cast<std::size_t>(chunks));

  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    Counts counts = Counts::Zero(n, n);
    const Index first = static_cast<Index>(c) * kDrawsPerChunk;
    const Index last = std::min(draws, first + kDrawsPerChunk);
    for (Index d = first; d < last; ++d) {
      SamplerConfig one = cfg;
      one.seed = draw_seed(cfg.seed, d);
      const SimpleGraph g = sample_graph(one);
      for (const auto& e : g.edges()) ++counts(e.u, e.v);
    }
    partial[c] = std::move(counts);
  });

  Counts total = Counts::Zero(n, n);
  for (const auto& p : partial) total += p;

  const double dd = static_cast<double>(draws);
  MatrixX<double> mean = MatrixX<double>::Zero(n, n);
  MatrixX<double> se = MatrixX<double>::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      const double c = static_cast<double>(total(i, j));
      const double m = c / dd;
      mean(i, j) = mean(j, i) = m;
      if (draws > 1) {
        // 0/1 observations: sum of squares equals the count.
        const double var = std::max(0.0, (c - dd * m * m) / (dd - 1));
        se(i, j) = se(j, i) = std::sqrt(var / dd);
      }
    }
  }
  return {StepGraphon(std::move(mean)), std::move(se), draws};
}

}  // namespace graphon
