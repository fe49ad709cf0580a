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

#include "primegap/sieve.hpp"

#include "primegap/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <string>

namespace primegap {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  using u128 = unsigned __int128;
  while (u128{r} * r > n)
    --r;
  while (u128{r + 1} * (r + 1) <= n)
    ++r;
  return r;
}

// ---------------------------------------------------------------------------
// BasePrimes

BasePrimes::BasePrimes(std::uint64_t limit) : limit_(limit) {
  if (limit < 2)
    throw RangeError("base prime limit must be at least 2, got " +
                     std::to_string(limit));
  // Odd-only byte sieve: index i stands for 2i + 1.
  const std::uint64_t count = limit / 2 + 1;
  std::vector<std::uint8_t> composite(count, 0);
  primes_.push_back(2);
  for (std::uint64_t i = 1; i < count; ++i) {
    if (composite[i])
      continue;
    const std::uint64_t q = 2 * i + 1;
    if (q > limit)
      break;
    primes_.push_back(q);
    for (std::uint64_t j = q * q / 2; j < count; j += q)
      composite[j] = 1;
  }
}

std::uint64_t BasePrimes::required_limit(std::uint64_t hi) {
  return hi <= 1 ? 0 : isqrt(hi - 1);
}

// ---------------------------------------------------------------------------
// Segment

Segment::Segment(std::uint64_t lo, std::uint64_t hi, std::size_t max_size)
    : max_size_(max_size) {
  if (max_size == 0)
    throw RangeError("segment size must be positive");
  assign(lo, hi);
}

void Segment::assign(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2)
    throw RangeError("segment must start at 2 or above, got lo = " +
                     std::to_string(lo));
  if (hi <= lo)
    throw RangeError("empty segment [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + ")");
  if (hi - lo > max_size_)
    throw RangeError("segment of " + std::to_string(hi - lo) +
                     " values exceeds the configured size " +
                     std::to_string(max_size_));
  lo_ = lo;
  hi_ = hi;
  first_odd_ = lo | 1;
  odd_count_ = first_odd_ < hi ? (hi - first_odd_ + 1) / 2 : 0;
  marks_.assign((odd_count_ + 63) / 64, 0);
  sieved_ = false;
}

void Segment::sieve(const BasePrimes& base) {
  const std::uint64_t need = BasePrimes::required_limit(hi_);
  if (base.limit() < need)
    throw PreconditionError("sieving [" + std::to_string(lo_) + ", " +
                            std::to_string(hi_) +
                            ") needs base primes up to " +
                            std::to_string(need) + ", have " +
                            std::to_string(base.limit()));
  std::fill(marks_.begin(), marks_.end(), 0);
  const std::uint64_t size = hi_ - lo_;
  std::uint64_t* words = marks_.data();
  for (std::uint64_t q : base.primes().subspan(1)) {
    if (q > need)
      break;
    // Offset from lo of the first odd multiple of q that is >= max(lo, q^2).
    std::uint64_t off = (q - lo_ % q) % q;
    if (((lo_ + off) & 1) == 0)
      off += q;
    const std::uint64_t square = q * q;
    if (square >= lo_ && square - lo_ > off)
      off = square - lo_;
    if (off >= size)
      continue;
    std::uint64_t bit = (lo_ + off - first_odd_) / 2;
    for (; bit < odd_count_; bit += q)
      words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  }
  sieved_ = true;
}

bool Segment::is_composite(std::uint64_t value) const {
  if (value < lo_ || value >= hi_)
    throw RangeError(std::to_string(value) + " is outside segment [" +
                     std::to_string(lo_) + ", " + std::to_string(hi_) + ")");
  if (!sieved_)
    throw PreconditionError("segment has not been sieved");
  if (value == 2)
    return false;
  if ((value & 1) == 0)
    return true;
  const std::uint64_t bit = (value - first_odd_) / 2;
  return (marks_[bit >> 6] >> (bit & 63)) & 1;
}

namespace {

std::uint64_t tail_mask(std::uint64_t odd_count, std::size_t word) {
  const std::uint64_t used = odd_count - std::uint64_t{word} * 64;
  return used >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
}

} // namespace

std::uint64_t Segment::count_primes() const {
  if (!sieved_)
    throw PreconditionError("segment has not been sieved");
  std::uint64_t count = (lo_ <= 2 && hi_ > 2) ? 1 : 0;
  for (std::size_t w = 0; w < marks_.size(); ++w)
    count += std::popcount(~marks_[w] & tail_mask(odd_count_, w));
  return count;
}

void Segment::append_primes(std::vector<std::uint64_t>& out) const {
  if (!sieved_)
    throw PreconditionError("segment has not been sieved");
  if (lo_ <= 2 && hi_ > 2)
    out.push_back(2);
  for (std::size_t w = 0; w < marks_.size(); ++w) {
    std::uint64_t bits = ~marks_[w] & tail_mask(odd_count_, w);
    const std::uint64_t base = first_odd_ + std::uint64_t{w} * 128;
    while (bits) {
      out.push_back(base + 2 * static_cast<std::uint64_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

std::vector<std::uint64_t> sieve_segment(Segment& seg, const BasePrimes& base) {
  seg.sieve(base);
  std::vector<std::uint64_t> out;
  seg.append_primes(out);
  return out;
}

// ---------------------------------------------------------------------------
// Whole-range helpers

namespace {

std::shared_ptr<const BasePrimes>
grow_base(const std::shared_ptr<const BasePrimes>& base, std::uint64_t hi) {
  const std::uint64_t need = BasePrimes::required_limit(hi);
  if (base && base->limit() >= need)
    return base;
  // Grow geometrically so a stream rebuilds its base primes O(log) times.
  constexpr std::uint64_t kMaxBase = 0xFFFFFFFFull;
  std::uint64_t target = std::max<std::uint64_t>(need, 1u << 16);
  if (base)
    target = std::max(target, std::min(kMaxBase, base->limit() * 2));
  return std::make_shared<const BasePrimes>(std::min(kMaxBase, target));
}

void check_segment_size(const SieveOptions& options) {
  if (options.segment_size < 64)
    throw RangeError("segment size must be at least 64, got " +
                     std::to_string(options.segment_size));
}

} // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        const SieveOptions& options) {
  if (limit < 2)
    throw RangeError("no primes up to " + std::to_string(limit));
  std::vector<std::uint64_t> out;
  PrimeSource source(2, options, limit == UINT64_MAX ? limit : limit + 1);
  for (std::uint64_t p = source.next(); p != 0; p = source.next())
    out.push_back(p);
  return out;
}

std::uint64_t count_primes(std::uint64_t x, const SieveOptions& options) {
  if (x < 2)
    throw RangeError("pi(x) requires x >= 2, got " + std::to_string(x));
  check_segment_size(options);
  const std::uint64_t end = x == UINT64_MAX ? x : x + 1;
  auto base = grow_base(nullptr, end);
  Segment seg(2, 3, options.segment_size);
  std::uint64_t count = 0;
  for (std::uint64_t lo = 2; lo < end;) {
    const std::uint64_t hi = lo + std::min<std::uint64_t>(options.segment_size, end - lo);
    seg.assign(lo, hi);
    seg.sieve(*base);
    count += seg.count_primes();
    lo = hi;
  }
  return count;
}

bool is_prime_oracle(std::uint64_t num) {
  if (num < 2)
    throw RangeError("primality is undefined for " + std::to_string(num));
  if (num < 4)
    return true;
  if (num % 2 == 0)
    return false;
  const std::uint64_t root = isqrt(num);
  for (std::uint64_t d = 3; d <= root; d += 2)
    if (num % d == 0)
      return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t p) {
  if (p < 2)
    throw RangeError(std::to_string(p) + " is not prime");
  if (p >= kLargestPrime64)
    throw OverflowError("no prime after " + std::to_string(p) +
                        " fits in 64 bits");
  if (p == 2)
    return 3;
  std::uint64_t lo = p + 1;
  std::uint64_t width = 256;
  std::vector<std::uint64_t> found;
  while (true) {
    const std::uint64_t hi = lo + std::min(width, UINT64_MAX - lo);
    Segment seg(lo, hi, width);
    BasePrimes base(std::max<std::uint64_t>(2, BasePrimes::required_limit(hi)));
    seg.sieve(base);
    found.clear();
    seg.append_primes(found);
    if (!found.empty())
      return found.front();
    lo = hi;
    width = std::min<std::uint64_t>(width * 2, kDefaultSegmentSize);
  }
}

// ---------------------------------------------------------------------------
// PrimeSource

PrimeSource::PrimeSource(std::uint64_t start, SieveOptions options,
                         std::uint64_t end)
    : options_(options), next_lo_(std::max<std::uint64_t>(start, 2)),
      end_(end) {
  check_segment_size(options_);
  if (options_.threads == 0)
    options_.threads = 1;
}

bool PrimeSource::refill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty()) {
    if (next_lo_ >= end_)
      return false;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (unsigned i = 0; i < options_.threads && next_lo_ < end_; ++i) {
      const std::uint64_t hi =
          next_lo_ + std::min<std::uint64_t>(options_.segment_size, end_ - next_lo_);
      ranges.emplace_back(next_lo_, hi);
      next_lo_ = hi;
    }
    base_ = grow_base(base_, ranges.back().second);
    while (segments_.size() < ranges.size())
      segments_.emplace_back(2, 3, options_.segment_size);
    batch_.resize(ranges.size());

    auto work = [this, &ranges](std::size_t i) {
      segments_[i].assign(ranges[i].first, ranges[i].second);
      segments_[i].sieve(*base_);
      batch_[i].clear();
      segments_[i].append_primes(batch_[i]);
    };
    if (ranges.size() == 1) {
      work(0);
    } else {
      std::vector<std::future<void>> pending;
      for (std::size_t i = 1; i < ranges.size(); ++i)
        pending.push_back(std::async(std::launch::async, work, i));
      work(0);
      for (auto& f : pending)
        f.get();
    }
    for (std::size_t i = 0; i < ranges.size(); ++i)
      buffer_.insert(buffer_.end(), batch_[i].begin(), batch_[i].end());
  }
  return true;
}

} // namespace primegap
