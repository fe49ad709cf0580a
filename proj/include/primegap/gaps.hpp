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

#include "primegap/sieve.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace primegap {

// The n-th prime (1-based) together with its index, n = pi(p).
struct PrimeIndexPair {
  std::uint64_t n = 0;
  std::uint64_t p = 0;

  bool operator==(const PrimeIndexPair&) const = default;
};

// One prime and the gap that follows it.
//
// theorem1_margin is the number of primes in (p, p + n], i.e.
// pi(p + n) - n. The claim g(p) <= pi(p) holds at this prime exactly when
// the margin is at least 1; a zero margin is reported, never thrown.
struct GapRecord {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t gap = 0;
  bool is_maximal = false;
  std::uint64_t theorem1_margin = 0;

  bool operator==(const GapRecord&) const = default;
};

// A prime p <= m! + 1 followed by a run of at least m - 1 composites.
struct GapWitness {
  unsigned m = 0;
  std::uint64_t p = 0;
  std::uint64_t next = 0;
  std::uint64_t gap_lower_bound = 0;

  std::uint64_t gap() const { return next - p; }
};

// Primes known to contain every prime in (p, covered_through].
struct LookaheadWindow {
  std::span<const std::uint64_t> primes;
  std::uint64_t covered_through = 0;
};

// Count of primes q with p < q <= p + n. Throws InvariantError when the
// window does not reach p + n, OverflowError when p + n does not fit.
std::uint64_t theorem1_margin(PrimeIndexPair pair, LookaheadWindow window);

// Everything needed to continue a stream after the record at (last_n, last_p).
// `lookahead` holds exactly the primes in (last_p, last_p + last_n].
struct GapStreamState {
  std::uint64_t last_n = 0;
  std::uint64_t last_p = 0;
  std::uint64_t gap_max = 0;
  std::vector<std::uint64_t> lookahead;

  bool operator==(const GapStreamState&) const = default;
};

// Sequential iteration over GapRecords for every prime p <= limit.
//
// The stream keeps a buffer of the primes beyond the current p and extends
// it lazily until it passes p + n, so each prime is sieved once and the
// margin is maintained in amortized constant time.
class GapStream {
public:
  // Throws RangeError when limit < 3.
  explicit GapStream(std::uint64_t limit, SieveOptions options = {});

  // Continues after a previously exported state. The limit may differ from
  // the original run but must be at least state.last_p.
  static GapStream resume(std::uint64_t limit, GapStreamState state,
                          SieveOptions options = {});

  std::optional<GapRecord> next();

  // State after the most recent record. Throws PreconditionError before the
  // first record has been produced.
  GapStreamState state() const;

  std::uint64_t limit() const { return limit_; }

private:
  GapStream(std::uint64_t limit, SieveOptions options, std::uint64_t source_start);

  std::uint64_t pull();
  void advance();

  std::uint64_t limit_;
  PrimeSource source_;
  std::deque<std::uint64_t> ahead_;
  std::size_t covered_ = 0; // prefix of ahead_ that is <= p_ + n_
  std::uint64_t n_ = 1;
  std::uint64_t p_ = 2;
  std::uint64_t gap_max_ = 0;
  bool emitted_ = false;
  bool done_ = false;
};

std::vector<GapRecord> gap_stream(std::uint64_t limit, SieveOptions options = {});

// Records whose gap exceeds every earlier gap.
std::vector<GapRecord> maximal_gaps(std::uint64_t limit, SieveOptions options = {});

// Largest prime p <= m! + 1 together with its successor; the construction
// guarantees g(p) >= m. Throws RangeError unless 3 <= m <= 13.
GapWitness gap_witness(unsigned m);

} // namespace primegap
