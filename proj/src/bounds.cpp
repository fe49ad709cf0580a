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

#include "primegap/bounds.hpp"

#include "primegap/errors.hpp"

#include <charconv>
#include <cmath>

namespace primegap {

namespace {

constexpr double kMarginalRelative = 1e-9;

bool is_marginal(double a, double b) {
  return std::fabs(a - b) <= kMarginalRelative * std::max(std::fabs(a), std::fabs(b));
}

void require(bool ok, const char* what, double value) {
  if (!ok || std::isnan(value))
    throw RangeError(std::string(what) + " (got " + std::to_string(value) + ")");
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw RangeError("not an unsigned integer: '" + std::string(text) + "'");
  return value;
}

// Strict upper bound: observed < bound.
BoundVerdict upper_verdict(Check check, std::uint64_t at, double bound, double observed) {
  return BoundVerdict{check, at, bound, observed, observed < bound, bound - observed, false};
}

// Non-strict lower bound: observed >= bound.
BoundVerdict lower_verdict(Check check, std::uint64_t at, double bound, double observed) {
  return BoundVerdict{check, at, bound, observed, observed >= bound, observed - bound, false};
}

} // namespace

// ---------------------------------------------------------------------------
// Check names

std::string Check::name() const {
  switch (kind) {
  case BoundKind::Theorem1: return "theorem1";
  case BoundKind::DusartUpper: return "dusart_upper";
  case BoundKind::DusartLower: return "dusart_lower";
  case BoundKind::Corollary1: return "corollary1";
  case BoundKind::Empirical: return "empirical";
  case BoundKind::Bertrand: return "bertrand";
  case BoundKind::Andrica: return "andrica";
  case BoundKind::NpChain: return "np_chain";
  case BoundKind::Epsilon: {
    std::string s = "epsilon_" + std::to_string(epsilon.num) + "/" + std::to_string(epsilon.den);
    for (const auto& known : kEpsilonPairs)
      if (known == epsilon)
        return s;
    return s + "_" + std::to_string(epsilon.n0);
  }
  }
  return "unknown";
}

Check Check::parse(std::string_view name) {
  static constexpr std::pair<std::string_view, BoundKind> kNames[] = {
      {"theorem1", BoundKind::Theorem1},     {"dusart_upper", BoundKind::DusartUpper},
      {"dusart_lower", BoundKind::DusartLower}, {"corollary1", BoundKind::Corollary1},
      {"empirical", BoundKind::Empirical},   {"bertrand", BoundKind::Bertrand},
      {"andrica", BoundKind::Andrica},       {"np_chain", BoundKind::NpChain},
  };
  for (const auto& [text, kind] : kNames)
    if (name == text)
      return Check{kind, {}};

  constexpr std::string_view prefix = "epsilon_";
  if (name.starts_with(prefix)) {
    std::string_view rest = name.substr(prefix.size());
    const auto slash = rest.find('/');
    if (slash != std::string_view::npos) {
      EpsilonPair eps;
      eps.num = parse_u64(rest.substr(0, slash));
      rest = rest.substr(slash + 1);
      const auto underscore = rest.find('_');
      eps.den = parse_u64(rest.substr(0, underscore));
      if (eps.num == 0 || eps.den == 0)
        throw RangeError("epsilon must be a positive fraction: '" + std::string(name) + "'");
      if (underscore != std::string_view::npos) {
        eps.n0 = parse_u64(rest.substr(underscore + 1));
        return Check{BoundKind::Epsilon, eps};
      }
      for (const auto& known : kEpsilonPairs)
        if (known.num == eps.num && known.den == eps.den)
          return Check{BoundKind::Epsilon, known};
    }
  }
  throw RangeError("unknown check '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Closed forms

double dusart_upper(double x) {
  require(x >= kDusartUpperThreshold, "Dusart upper bound needs x >= 60184", x);
  return x / (std::log(x) - 1.1);
}

double dusart_lower(double x) {
  require(x >= kDusartLowerThreshold, "Dusart lower bound needs x >= 5393", x);
  return x / (std::log(x) - 1.0);
}

double corollary1_bound(std::uint64_t p) {
  require(p >= 5, "Corollary 1 bound needs p >= 5", static_cast<double>(p));
  const double x = static_cast<double>(p);
  return x / (std::log(x) - 1.1);
}

double empirical_bound(std::uint64_t p) {
  require(p >= 2, "empirical bound needs p >= 2", static_cast<double>(p));
  const double x = static_cast<double>(p);
  return (x + 1.0) / std::log(x);
}

double andrica_bound(std::uint64_t p) {
  require(p >= 2, "Andrica bound needs p >= 2", static_cast<double>(p));
  return 2.0 * std::sqrt(static_cast<double>(p)) + 1.0;
}

std::optional<BoundVerdict> epsilon_bound(PrimeIndexPair pair, std::uint64_t gap,
                                          EpsilonPair eps) {
  if (pair.n <= eps.n0)
    return std::nullopt;
  if (eps.den == 0)
    throw RangeError("epsilon denominator must be positive");
  const double bound = static_cast<double>(eps.num) * static_cast<double>(pair.p) /
                       static_cast<double>(eps.den);
  auto v = upper_verdict(Check{BoundKind::Epsilon, eps}, pair.p, bound,
                         static_cast<double>(gap));
  // gap < (num / den) p  <=>  gap * den < num * p, exactly.
  using u128 = unsigned __int128;
  v.marginal = is_marginal(bound, v.observed);
  v.holds = u128{gap} * eps.den < u128{eps.num} * pair.p;
  return v;
}

BoundVerdict dusart_upper_verdict(std::uint64_t x, std::uint64_t pi_x) {
  const double bound = dusart_upper(static_cast<double>(x));
  const double observed = static_cast<double>(pi_x);
  BoundVerdict v{Check{BoundKind::DusartUpper, {}}, x, bound, observed, observed <= bound,
                 bound - observed, false};
  if (is_marginal(bound, v.observed)) {
    const long double lx = static_cast<long double>(x);
    v.marginal = true;
    v.holds = static_cast<long double>(pi_x) <= lx / (std::log(lx) - 1.1L);
  }
  return v;
}

BoundVerdict dusart_lower_verdict(std::uint64_t x, std::uint64_t pi_x) {
  const double bound = dusart_lower(static_cast<double>(x));
  auto v = lower_verdict(Check{BoundKind::DusartLower, {}}, x, bound, static_cast<double>(pi_x));
  if (is_marginal(bound, v.observed)) {
    const long double lx = static_cast<long double>(x);
    v.marginal = true;
    v.holds = static_cast<long double>(pi_x) >= lx / (std::log(lx) - 1.0L);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Chain

double negativity_lemma_term(double log_p) {
  return -(79.0 / 90.0) * log_p + 911.0 / 405.0 + (10201.0 / 3645.0) / (log_p - 20.0 / 9.0);
}

ProofChain proof_chain_check(std::uint64_t p, std::uint64_t exact_pi_p,
                             std::uint64_t exact_np) {
  require(p > 60184, "proof chain needs p > 60184", static_cast<double>(p));
  (void)exact_pi_p; // the chain only uses pi(p) through N_p; kept for the caller's record

  const double x = static_cast<double>(p);
  const double L = std::log(x);
  const double inv = 1.0 / (L - 1.0);
  const double upper_term = 1.0 / (L - 1.1);

  ProofChain chain;
  chain.p = p;
  chain.stages = {
      {"S0 exact N_p", static_cast<double>(exact_np)},
      {"S1 Dusart bracket", x * ((1.0 + inv) / (L + std::log1p(inv) - 1.0) - upper_term)},
      {"S2 ln(1+x)<x", x * (L / ((L - 1.0) * (L - 1.0) + 1.0) - upper_term)},
      {"S3 rational form", (0.9 * L - 2.0) * x / (((L - 3.1) * L + 4.2) * L - 2.2)},
      {"S4 0.9p/ln^2 p", 0.9 * x / (L * L)},
  };
  chain.lemma_term = negativity_lemma_term(L);
  return chain;
}

bool ProofChain::holds(double tolerance) const {
  if (stages.size() != 5)
    return false;
  const double s0 = stage(0), s1 = stage(1), s2 = stage(2), s3 = stage(3), s4 = stage(4);
  return s0 >= s1 && s1 >= s2 && std::fabs(s2 - s3) / s3 < tolerance && s3 >= s4 &&
         s4 > 1.0 && lemma_term < 0.0;
}

// ---------------------------------------------------------------------------

std::optional<BoundVerdict> evaluate(const Check& check, const GapRecord& rec) {
  const double gap = static_cast<double>(rec.gap);
  switch (check.kind) {
  case BoundKind::Theorem1: {
    BoundVerdict v{check, rec.p, 1.0, static_cast<double>(rec.theorem1_margin),
                   rec.theorem1_margin >= 1 && rec.gap <= rec.n,
                   static_cast<double>(rec.theorem1_margin) - 1.0, false};
    return v;
  }
  case BoundKind::DusartUpper:
    if (rec.p < 60184)
      return std::nullopt;
    return dusart_upper_verdict(rec.p, rec.n);
  case BoundKind::DusartLower: {
    const std::uint64_t x = rec.p + rec.gap - 1;
    if (x < 5393)
      return std::nullopt;
    return dusart_lower_verdict(x, rec.n);
  }
  case BoundKind::Corollary1: {
    if (rec.p < 5)
      return std::nullopt;
    auto v = upper_verdict(check, rec.p, corollary1_bound(rec.p), gap);
    if (is_marginal(v.bound_value, gap)) {
      const long double lp = static_cast<long double>(rec.p);
      v.marginal = true;
      v.holds = static_cast<long double>(rec.gap) < lp / (std::log(lp) - 1.1L);
    }
    return v;
  }
  case BoundKind::Empirical: {
    auto v = upper_verdict(check, rec.p, empirical_bound(rec.p), gap);
    if (is_marginal(v.bound_value, gap)) {
      const long double lp = static_cast<long double>(rec.p);
      v.marginal = true;
      v.holds = static_cast<long double>(rec.gap) * std::log(lp) < lp + 1.0L;
    }
    return v;
  }
  case BoundKind::Bertrand: {
    auto v = upper_verdict(check, rec.p, static_cast<double>(rec.p), gap);
    v.holds = rec.gap < rec.p;
    return v;
  }
  case BoundKind::Andrica: {
    auto v = upper_verdict(check, rec.p, andrica_bound(rec.p), gap);
    // gap < 2 sqrt(p) + 1  <=>  gap <= 1 or (gap - 1)^2 < 4p.
    using u128 = unsigned __int128;
    v.marginal = is_marginal(v.bound_value, gap);
    v.holds = rec.gap <= 1 || u128{rec.gap - 1} * (rec.gap - 1) < u128{rec.p} * 4;
    return v;
  }
  case BoundKind::Epsilon:
    return epsilon_bound(PrimeIndexPair{rec.n, rec.p}, rec.gap, check.epsilon);
  case BoundKind::NpChain: {
    if (rec.p <= 60184)
      return std::nullopt;
    const ProofChain chain = proof_chain_check(rec.p, rec.n, rec.theorem1_margin);
    BoundVerdict v{check, rec.p, chain.stage(4), chain.stage(0), chain.holds(),
                   chain.stage(0) - chain.stage(4), false};
    return v;
  }
  }
  return std::nullopt;
}

} // namespace primegap
