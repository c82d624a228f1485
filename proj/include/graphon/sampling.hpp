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

#ifndef GRAPHON_SAMPLING_HPP_
#define GRAPHON_SAMPLING_HPP_

// Stratified W-random graphs. [0,1] is split into n equal blocks, one
// latent point is drawn uniformly from each block, and vertices i != j are
// joined independently with probability W(x_i, x_j).
//
// Randomness comes from counter-based streams keyed by the seed: latent i
// uses counter i of the latent stream and pair (i, j) uses counter i*n + j
// of the edge stream, so every variate is addressable independently.

#include <cstdint>

#include "graphon/core.hpp"
#include "graphon/quadrature.hpp"

namespace graphon {

struct SamplerConfig {
  Index n = 1;
  std::uint64_t seed = 0;
  GraphonSpec graphon = GraphonSpec::constant(0);
  // Comparison mode: i.i.d. uniform latents instead of one per block.
  bool iid_latents = false;

  void validate() const {
    if (n < 1) throw DomainError("sampler needs n >= 1");
  }
};

LatentPoints sample_latents(const SamplerConfig& cfg);

SimpleGraph sample_graph(const SamplerConfig& cfg, const LatentPoints& latents);

// sample_graph(cfg, sample_latents(cfg)).
SimpleGraph sample_graph(const SamplerConfig& cfg);

// E(W_{G_n}): off-diagonal block (i,j) is the average of W over I_i x I_j,
// diagonal blocks are 0 because the construction has no self-loops.
struct ExpectedGraphon {
  StepGraphon step;
  std::string source;
  QuadratureSpec quadrature;
};

ExpectedGraphon expected_graphon(const GraphonSpec& w, Index n,
                                 const QuadratureSpec& q = {});

struct MonteCarloEstimate {
  StepGraphon mean;
  MatrixX<double> standard_error;  // sample sd / sqrt(draws); 0 if draws == 1
  Index draws = 0;
};

// Seed of draw d of a Monte-Carlo run.
std::uint64_t draw_seed(std::uint64_t master, Index draw);

// Entrywise mean of canonical graphons over `draws` independent samples,
// each with fresh latents. Work is split over `threads` workers but every
// draw is seeded by draw_seed(cfg.seed, d) and edge counts are integers, so
// the result does not depend on the thread count.
MonteCarloEstimate mc_expected_graphon(const SamplerConfig& cfg, Index draws,
                                       unsigned threads = 1);

}  // namespace graphon

#endif  // GRAPHON_SAMPLING_HPP_
