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

#include "primegap/gaps.hpp"

#include "primegap/errors.hpp"

#include <algorithm>
#include <string>

namespace primegap {

namespace {

std::uint64_t checked_window_end(std::uint64_t p, std::uint64_t n) {
  if (p > UINT64_MAX - n)
    throw OverflowError("p + n overflows at p = " + std::to_string(p) +
                        ", n = " + std::to_string(n));
  return p + n;
}

} // namespace

std::uint64_t theorem1_margin(PrimeIndexPair pair, LookaheadWindow window) {
  const std::uint64_t end = checked_window_end(pair.p, pair.n);
  if (window.covered_through < end)
    throw InvariantError("look-ahead window ends at " +
                         std::to_string(window.covered_through) +
                         " but the margin for p = " + std::to_string(pair.p) +
                         " needs primes through " + std::to_string(end));
  const auto first = std::upper_bound(window.primes.begin(), window.primes.end(), pair.p);
  const auto last = std::upper_bound(first, window.primes.end(), end);
  return static_cast<std::uint64_t>(last - first);
}

// ---------------------------------------------------------------------------

GapStream::GapStream(std::uint64_t limit, SieveOptions options,
                     std::uint64_t source_start)
    : limit_(limit), source_(source_start, options) {}

GapStream::GapStream(std::uint64_t limit, SieveOptions options)
    : GapStream(limit, options, 3) {
  if (limit < 3)
    throw RangeError("gap stream needs limit >= 3, got " + std::to_string(limit));
}

GapStream GapStream::resume(std::uint64_t limit, GapStreamState state,
                            SieveOptions options) {
  if (state.last_n == 0 || state.last_p < 2)
    throw PreconditionError("resume state has no record");
  if (limit < state.last_p)
    throw PreconditionError("limit " + std::to_string(limit) +
                            " is below the resume point " +
                            std::to_string(state.last_p));
  const std::uint64_t end = checked_window_end(state.last_p, state.last_n);
  if (!std::is_sorted(state.lookahead.begin(), state.lookahead.end()) ||
      std::adjacent_find(state.lookahead.begin(), state.lookahead.end()) !=
          state.lookahead.end() ||
      (!state.lookahead.empty() &&
       (state.lookahead.front() <= state.last_p || state.lookahead.back() > end)))
    throw PreconditionError("look-ahead primes must be ascending within (" +
                            std::to_string(state.last_p) + ", " +
                            std::to_string(end) + "]");
  if (end == UINT64_MAX)
    throw OverflowError("resume point too close to 2^64");

  GapStream stream(limit, options, end + 1);
  stream.n_ = state.last_n;
  stream.p_ = state.last_p;
  stream.gap_max_ = state.gap_max;
  stream.ahead_.assign(state.lookahead.begin(), state.lookahead.end());
  stream.covered_ = stream.ahead_.size();
  stream.emitted_ = true;
  return stream;
}

std::uint64_t GapStream::pull() {
  const std::uint64_t q = source_.next();
  if (q == 0)
    throw OverflowError("prime stream exhausted below 2^64");
  ahead_.push_back(q);
  return q;
}

void GapStream::advance() {
  if (ahead_.empty())
    pull();
  p_ = ahead_.front();
  ahead_.pop_front();
  ++n_;
  if (covered_ > 0)
    --covered_;
}

std::optional<GapRecord> GapStream::next() {
  if (done_)
    return std::nullopt;
  if (ahead_.empty())
    pull();
  // Stop without advancing so state() keeps describing the last record.
  if (emitted_ ? ahead_.front() > limit_ : p_ > limit_) {
    done_ = true;
    return std::nullopt;
  }
  if (emitted_) {
    advance();
    if (ahead_.empty())
      pull();
  }
  const std::uint64_t end = checked_window_end(p_, n_);
  while (true) {
    if (covered_ == ahead_.size())
      pull();
    if (ahead_[covered_] > end)
      break;
    ++covered_;
  }

  GapRecord rec;
  rec.n = n_;
  rec.p = p_;
  rec.gap = ahead_.front() - p_;
  rec.is_maximal = rec.gap > gap_max_;
  rec.theorem1_margin = covered_;
  if (rec.is_maximal)
    gap_max_ = rec.gap;
  emitted_ = true;
  return rec;
}

GapStreamState GapStream::state() const {
  if (!emitted_)
    throw PreconditionError("gap stream has not produced a record yet");
  GapStreamState s;
  s.last_n = n_;
  s.last_p = p_;
  s.gap_max = gap_max_;
  s.lookahead.assign(ahead_.begin(), ahead_.begin() + static_cast<std::ptrdiff_t>(covered_));
  return s;
}

std::vector<GapRecord> gap_stream(std::uint64_t limit, SieveOptions options) {
  GapStream stream(limit, options);
  std::vector<GapRecord> out;
  while (auto rec = stream.next())
    out.push_back(*rec);
  return out;
}

std::vector<GapRecord> maximal_gaps(std::uint64_t limit, SieveOptions options) {
  GapStream stream(limit, options);
  std::vector<GapRecord> out;
  while (auto rec = stream.next())
    if (rec->is_maximal)
      out.push_back(*rec);
  return out;
}

GapWitness gap_witness(unsigned m) {
  if (m < 3 || m > 13)
    throw RangeError("witness parameter must be in [3, 13], got " + std::to_string(m));
  std::uint64_t factorial = 1;
  for (unsigned k = 2; k <= m; ++k)
    factorial *= k;

  GapWitness w;
  w.m = m;
  w.gap_lower_bound = m;
  w.p = factorial + 1;
  while (!is_prime_oracle(w.p))
    --w.p;
  // m! + 2 .. m! + m are composite, so the successor is at least m! + m + 1.
  w.next = w.p + 1;
  while (!is_prime_oracle(w.next))
    ++w.next;
  if (w.gap() < m)
    throw InvariantError("witness gap " + std::to_string(w.gap()) +
                         " below m = " + std::to_string(m));
  return w;
}

} // namespace primegap
