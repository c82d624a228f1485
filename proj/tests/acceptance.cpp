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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "graphon/algebra.hpp"
#include "graphon/experiments.hpp"
#include "graphon/norms.hpp"
#include "graphon/random.hpp"
#include "graphon/sampling.hpp"

namespace {

using namespace graphon;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<GraphonSpec> catalog() {
  return {GraphonSpec::constant(0.5), GraphonSpec::builtin("xy"),
          GraphonSpec::builtin("minmax"), GraphonSpec::builtin("one_minus_max")};
}

MatrixX<double> random_symmetric(std::mt19937_64& gen, Index n, double lo,
                                 double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  MatrixX<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(gen);
  }
  return m;
}

// e_n for W = p constant, from (1/n)^(k-1) (p (J - I))^k expanded by hand.
double constant_power_error(double p, Index n, int k) {
  const double dn = static_cast<double>(n);
  switch (k) {
    case 1:
      return p / dn;
    case 2:
      return p * p * (2 * dn - 1) / (dn * dn);
    case 3:
      return p * p * p * ((3 * dn - 2) + 3 * (dn - 1) * (dn - 1)) /
             (dn * dn * dn);
  }
  return NAN;
}

// Mean of |a - b| on the common refinement, by direct block lookup.
double l1_oracle(const MatrixX<double>& a, const MatrixX<double>& b) {
  const Index na = a.rows();
  const Index nb = b.rows();
  const Index n = std::lcm(na, nb);
  double sum = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      sum += std::abs(a(i * na / n, j * na / n) - b(i * nb / n, j * nb / n));
    }
  }
  return sum / static_cast<double>(n * n);
}

// Cut norm over every pair of block subsets, for small n.
double cut_oracle(const MatrixX<double>& a) {
  const Index n = a.rows();
  double best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (s >> i & 1u) r += a.row(i).transpose();
    }
    for (unsigned t = 0; t < (1u << n); ++t) {
      double sum = 0;
      for (Index j = 0; j < n; ++j) {
        if (t >> j & 1u) sum += r[j];
      }
      best = std::max(best, std::abs(sum));
    }
  }
  return best / static_cast<double>(n * n);
}

// 1. Theorem sweep, k = 1.
Outcome criterion1(std::vector<ConvergenceReport>& k1) {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& w : catalog()) {
    const auto r = run_theorem_sweep(w, 1, {4, 8, 16, 32, 64}, {}, 1);
    o.require(r.complete, w.label() + ": incomplete: " + r.error);
    if (!r.complete) continue;
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      o.require(r.rows[i].l1_expected_vs_limit <
                    r.rows[i - 1].l1_expected_vs_limit,
                w.label() + ": not strictly decreasing");
    }
    const double e4 = r.rows.front().l1_expected_vs_limit;
    const double e64 = r.rows.back().l1_expected_vs_limit;
    o.require(e64 < e4 / 4, w.label() + fmt(": e_64 = %.3g >= e_4/4 = %.3g",
                                            e64, e4 / 4));
    if (auto p = w.as_constant()) {
      for (const auto& row : r.rows) {
        o.require(std::abs(row.l1_expected_vs_limit -
                           constant_power_error(*p, row.n, 1)) <= 1e-12,
                  fmt("constant: e_%g differs from p/n", double(row.n)));
      }
    }
    k1.push_back(r);
  }
  const double t = seconds_since(t0);
  o.require(t < 30, fmt("runtime %.1f s >= 30 s", t));
  if (o.pass) o.detail = fmt("4 graphons, n = 4..64, %.2f s", t);
  return o;
}

// 2. Theorem sweep, k = 2, 3.
Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0;
  for (int k : {2, 3}) {
    for (const auto& w : catalog()) {
      const auto r = run_theorem_sweep(w, k, {4, 8, 16, 32}, {}, 1);
      o.require(r.complete, w.label() + ": incomplete: " + r.error);
      for (std::size_t i = 1; i < r.rows.size(); ++i) {
        o.require(r.rows[i].l1_expected_vs_limit <
                      r.rows[i - 1].l1_expected_vs_limit,
                  w.label() + fmt(": k = %g not strictly decreasing", k));
      }
      if (auto p = w.as_constant()) {
        for (const auto& row : r.rows) {
          const double d = std::abs(row.l1_expected_vs_limit -
                                    constant_power_error(*p, row.n, k));
          worst = std::max(worst, d);
          o.require(d <= 1e-10, fmt("constant: k = %g, n = %g off by %.3g", k,
                                    double(row.n), d));
        }
      }
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 120, fmt("runtime %.1f s >= 120 s", t));
  if (o.pass) {
    o.detail = fmt("k = 2, 3; constant max deviation %.2g; %.2f s", worst, t);
  }
  return o;
}

// 3. Lipschitz rate for x*y and 1 - max(x,y), L = 1.
Outcome criterion3(const std::vector<ConvergenceReport>& k1) {
  Outcome o;
  const double c = std::sqrt(2.0) + 1;
  double worst = 0;
  int checked = 0;
  for (const auto& r : k1) {
    if (r.label != "x*y" && r.label != "1-max(x,y)") continue;
    for (const auto& row : r.rows) {
      const double ratio = row.l1_expected_vs_limit * row.n / c;
      worst = std::max(worst, ratio);
      o.require(row.l1_expected_vs_limit <= c / row.n,
                r.label + fmt(": e_%g = %.4g exceeds %.4g", double(row.n),
                              row.l1_expected_vs_limit, c / row.n));
      ++checked;
    }
  }
  o.require(checked == 10, "missing sweeps");
  if (o.pass) o.detail = fmt("max n e_n / (sqrt2 + 1) = %.3f", worst);
  return o;
}

// 4. Counterexample: L1 stays at 1/2, the cut norm halves from n=4 to 16.
Outcome criterion4() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::uint64_t seed = 2024;
  const auto r = run_counterexample_sweep(0.5, {4, 8, 12, 16}, 20, seed);
  const double t = seconds_since(t0);
  for (const auto& row : r.rows) {
    o.require(row.draw_l1.size() == 20, "wrong draw count");
    for (double d : row.draw_l1) {
      o.require(std::abs(d - 0.5) <= 1e-12,
                fmt("n = %g: draw L1 %.17g", double(row.n), d));
    }
  }
  // Recompute the n = 4 and n = 8 draws by full (S, T) enumeration.
  for (std::size_t idx : {0u, 1u}) {
    const SweepRow& row = r.rows[idx];
    const std::uint64_t n_seed =
        derive_seed(seed, static_cast<std::uint64_t>(row.n), Stream::kSweepSeed);
    for (Index d = 0; d < 20; ++d) {
      SamplerConfig cfg;
      cfg.n = row.n;
      cfg.seed = draw_seed(n_seed, d);
      cfg.graphon = GraphonSpec::constant(0.5);
      const MatrixX<double> diff =
          canonical_graphon(sample_graph(cfg)).values().array() - 0.5;
      o.require(std::abs(cut_oracle(diff) - row.draw_cut[d]) <= 1e-12,
                fmt("n = %g draw %g: cut norm mismatch", double(row.n),
                    double(d)));
    }
  }
  const double c4 = r.rows.front().cutnorm_sampled_vs_limit;
  const double c16 = r.rows.back().cutnorm_sampled_vs_limit;
  o.require(c16 < c4 / 2, fmt("mean cut %.4g at n=16 vs %.4g at n=4", c16, c4));
  o.require(t < 60, fmt("runtime %.1f s >= 60 s", t));
  if (o.pass) {
    o.detail = fmt("mean cut norm %.4f (n=4) -> %.4f (n=16); %.2f s", c4, c16, t);
  }
  return o;
}

// 5. Step product formula against quadrature of the defining integral.
Outcome criterion5() {
  Outcome o;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  constexpr Index kZ = 720;  // divisible by every n <= 6
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + static_cast<Index>(gen() % 6);
    const StepGraphon a(random_symmetric(gen, n, 0, 1));
    const StepGraphon b(random_symmetric(gen, n, 0, 1));
    const auto ab = product(GraphonSpec::step(a), GraphonSpec::step(b))
                        .value.as_step()
                        .value();
    const auto aa = power(GraphonSpec::step(a), 2).value.as_step().value();
    for (int pt = 0; pt < 200; ++pt) {
      // Cell midpoints first, then random points.
      const double x = pt < n * n ? ((pt / n) + 0.5) / n : u(gen);
      const double y = pt < n * n ? ((pt % n) + 0.5) / n : u(gen);
      double sab = 0;
      double saa = 0;
      for (Index z = 0; z < kZ; ++z) {
        const double zz = (z + 0.5) / kZ;
        sab += a.at(x, zz) * b.at(zz, y);
        saa += a.at(x, zz) * a.at(zz, y);
      }
      worst = std::max({worst, std::abs(ab.at(x, y) - sab / kZ),
                        std::abs(aa.at(x, y) - saa / kZ)});
    }
  }
  o.require(worst <= 1e-6, fmt("max deviation %.3g", worst));
  if (o.pass) o.detail = fmt("50 pairs, max deviation %.2g", worst);
  return o;
}

// 6. Contraction inequality.
Outcome criterion6() {
  Outcome o;
  std::mt19937_64 gen(6);
  double slack = INFINITY;
  for (int trial = 0; trial < 200; ++trial) {
    auto pick = [&] {
      return StepGraphon(
          random_symmetric(gen, 1 + static_cast<Index>(gen() % 8), 0, 1));
    };
    const StepGraphon a = pick(), b = pick(), c = pick(), d = pick();
    auto prod = [](const StepGraphon& x, const StepGraphon& y) {
      return product(GraphonSpec::step(x), GraphonSpec::step(y))
          .value.as_step()
          ->values();
    };
    const double lhs = l1_oracle(prod(a, b), prod(c, d));
    const double rhs = l1_oracle(a.values(), c.values()) +
                       l1_oracle(b.values(), d.values());
    slack = std::min(slack, rhs - lhs);
    o.require(lhs <= rhs + 1e-9, fmt("trial %g: %.6g > %.6g", trial, lhs, rhs));
  }
  if (o.pass) o.detail = fmt("200 quadruples, min slack %.3g", slack);
  return o;
}

// 7. Cut-norm correctness.
Outcome criterion7() {
  Outcome o;
  std::mt19937_64 gen(7);
  int tight = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(gen() % 10);
    const MatrixX<double> a = random_symmetric(gen, n, -1, 1);
    const auto exact = cut_norm_exact(StepKernel(a));
    const auto lower = cut_norm_lower_bound(StepKernel(a), 50, gen());
    o.require(lower.value <= exact.value + 1e-12,
              fmt("trial %g: heuristic %.17g > exact %.17g", trial, lower.value,
                  exact.value));
    o.require(exact.value <= step_l1_norm(a),
              fmt("trial %g: cut %.6g > L1 %.6g", trial, exact.value,
                  step_l1_norm(a)));
    o.require(std::abs(cut_value(a, exact.rows, exact.cols) - exact.value) <=
                  1e-12,
              "witness does not reproduce the value");
    if (n <= 6) {
      o.require(std::abs(cut_oracle(a) - exact.value) <= 1e-12,
                fmt("trial %g: enumeration disagrees with brute force", trial));
    }
    tight += std::abs(lower.value - exact.value) <= 1e-12;

    const MatrixX<double> p = random_symmetric(gen, n, 0, 1);
    o.require(std::abs(cut_norm_exact(StepKernel(p)).value - p.mean()) <= 1e-12,
              fmt("trial %g: nonnegative cut norm is not the integral", trial));
  }
  MatrixX<double> h(2, 2);
  h << -0.5, 0.5, 0.5, -0.5;
  const double v = cut_norm_exact(StepKernel(h)).value;
  o.require(v == 0.125, fmt("n = 2 instance gives %.17g", v));
  if (o.pass) o.detail = fmt("100 instances, heuristic tight on %g", tight);
  return o;
}

// 8. Monte-Carlo consistency for x*y, n = 6.
Outcome criterion8() {
  Outcome o;
  const auto t0 = Clock::now();
  const Index n = 6;
  SamplerConfig cfg;
  cfg.n = n;
  cfg.seed = 8;
  cfg.graphon = GraphonSpec::builtin("xy");
  const auto mc = mc_expected_graphon(cfg, 10000);
  const auto exact = expected_graphon(cfg.graphon, n);
  double worst = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      // Cell average of x*y is the product of the interval midpoints.
      const double closed = (i + 0.5) / n * (j + 0.5) / n;
      o.require(std::abs(exact.step(i, j) - closed) <= 1e-12,
                "expected graphon differs from the closed form");
      const double z =
          std::abs(mc.mean(i, j) - exact.step(i, j)) / mc.standard_error(i, j);
      worst = std::max(worst, z);
      o.require(z <= 5, fmt("entry (%g,%g) off by %.2f SE", i, j, z));
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 60, fmt("runtime %.1f s >= 60 s", t));
  if (o.pass) o.detail = fmt("max |z| = %.2f; %.2f s", worst, t);
  return o;
}

// 9. Determinism across runs and thread counts.
Outcome criterion9() {
  Outcome o;
  SweepOptions one;
  SweepOptions many;
  many.threads = 4;
  const std::vector<std::function<ConvergenceReport(const SweepOptions&)>>
      sweeps = {
          [](const SweepOptions& s) {
            return run_theorem_sweep(GraphonSpec::builtin("xy"), 2,
                                     {4, 8, 16, 32}, {}, 99, s);
          },
          [](const SweepOptions& s) {
            return run_theorem_sweep(GraphonSpec::builtin("minmax"), 1,
                                     {4, 8, 16, 32, 64}, {}, 99, s);
          },
          [](const SweepOptions& s) {
            return run_counterexample_sweep(0.5, {4, 8, 12, 16}, 20, 99, s);
          },
      };
  for (const auto& sweep : sweeps) {
    const auto a = sweep(one);
    const auto b = sweep(one);
    const auto c = sweep(many);
    o.require(report_csv(a) == report_csv(b) && report_json(a) == report_json(b),
              a.label + ": repeated runs differ");
    o.require(report_csv(a) == report_csv(c) && report_json(a) == report_json(c),
              a.label + ": thread count changes the report");
  }
  if (o.pass) o.detail = "3 sweeps, 1 vs 1 vs 4 threads, CSV and JSON identical";
  return o;
}

}  // namespace

int main() {
  std::vector<ConvergenceReport> k1;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"theorem sweep k=1", [&] { return criterion1(k1); }},
      {"theorem sweep k=2,3", criterion2},
      {"Lipschitz rate", [&] { return criterion3(k1); }},
      {"counterexample", criterion4},
      {"product oracle", criterion5},
      {"contraction inequality", criterion6},
      {"cut-norm correctness", criterion7},
      {"Monte-Carlo consistency", criterion8},
      {"determinism", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
