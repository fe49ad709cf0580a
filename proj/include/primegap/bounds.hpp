/* Copyright 2026 The primegap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "primegap/gaps.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace primegap {

// Natural logarithms throughout.

enum class BoundKind {
  Theorem1,    // pi(p + n) - n >= 1
  DusartUpper, // pi(x) <= x / (ln x - 1.1),  x >= 60184
  DusartLower, // pi(x) >= x / (ln x - 1),    x >= 5393
  Corollary1,  // g(p) < p / (ln p - 1.1),    p >= 5
  Empirical,   // g(p) < (p + 1) / ln p,      p >= 2
  Bertrand,    // g(p_n) < p_n,               n >= 1
  Andrica,     // g(p) < 2 sqrt(p) + 1,       p >= 2
  Epsilon,     // g(p_n) < e p_n,             n > n0
  NpChain,     // lower-bound chain for pi(p + pi(p)) - pi(p), p > 60184
};

// e = num / den, applicable for n > n0.
struct EpsilonPair {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  std::uint64_t n0 = 0;

  auto operator<=>(const EpsilonPair&) const = default;
};

inline constexpr std::array<EpsilonPair, 3> kEpsilonPairs{{
    {1, 5, 9},
    {1, 13, 118},
    {1, 16597, 2010760},
}};

inline constexpr double kDusartUpperThreshold = 60184;
inline constexpr double kDusartLowerThreshold = 5393;

// One inequality that can be applied to a GapRecord. `epsilon` is only
// meaningful for BoundKind::Epsilon.
struct Check {
  BoundKind kind = BoundKind::Theorem1;
  EpsilonPair epsilon{};

  std::string name() const;
  auto operator<=>(const Check&) const = default;

  // Accepts the names produced by name(). Throws RangeError otherwise.
  static Check parse(std::string_view name);
};

// Outcome of one inequality at one point.
//
// slack is positive when the inequality holds: bound - observed for upper
// bounds and observed - bound for lower bounds. A verdict whose double
// evaluation lands within 1e-9 relative of equality is `marginal`; its
// `holds` then comes from an exact integer comparison or a long double
// re-evaluation.
struct BoundVerdict {
  Check check;
  std::uint64_t at = 0;
  double bound_value = 0;
  double observed = 0;
  bool holds = false;
  double slack = 0;
  bool marginal = false;
};

double dusart_upper(double x);
double dusart_lower(double x);
double corollary1_bound(std::uint64_t p);
double empirical_bound(std::uint64_t p);
double andrica_bound(std::uint64_t p);

// Not applicable (nullopt) when pair.n <= eps.n0.
std::optional<BoundVerdict> epsilon_bound(PrimeIndexPair pair, std::uint64_t gap,
                                          EpsilonPair eps);

// Verdicts for the sandwich at a single x with known pi(x).
BoundVerdict dusart_upper_verdict(std::uint64_t x, std::uint64_t pi_x);
BoundVerdict dusart_lower_verdict(std::uint64_t x, std::uint64_t pi_x);

struct ChainStage {
  std::string label;
  double value = 0;
};

// Numeric evaluation of the chain of lower bounds for
// N_p = pi(p + pi(p)) - pi(p):
//   S0  the exact count
//   S1  p [ (1 + 1/(L-1)) / (L + ln(1 + 1/(L-1)) - 1) - 1/(L-1.1) ]
//   S2  p [ L / ((L-1)^2 + 1) - 1/(L-1.1) ]
//   S3  (0.9 L - 2) p / (L^3 - 3.1 L^2 + 4.2 L - 2.2)
//   S4  0.9 p / L^2
// with L = ln p, plus the correction term
//   -(79/90) L + 911/405 + (10201/3645) / (L - 20/9)
// whose negativity gives S3 > S4.
struct ProofChain {
  std::uint64_t p = 0;
  std::vector<ChainStage> stages;
  double lemma_term = 0;

  double stage(std::size_t i) const { return stages.at(i).value; }

  // S0 >= S1 >= S2, |S2 - S3| / S3 < tolerance, S3 >= S4 > 1, lemma < 0.
  bool holds(double tolerance = 1e-9) const;
};

double negativity_lemma_term(double log_p);

// Throws RangeError when p <= 60184.
ProofChain proof_chain_check(std::uint64_t p, std::uint64_t exact_pi_p,
                             std::uint64_t exact_np);

// Applies `check` to a record. nullopt when the record lies outside the
// check's validity range. Dusart checks use x = p for the upper bound and
// x = p + gap - 1 for the lower bound, the least favourable points of the
// interval [p, p + gap) on which pi(x) = n.
std::optional<BoundVerdict> evaluate(const Check& check, const GapRecord& rec);

} // namespace primegap
