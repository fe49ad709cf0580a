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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace primegap {

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

// 2^64 - 59, the largest prime representable in 64 bits.
inline constexpr std::uint64_t kLargestPrime64 = 18446744073709551557ull;

// Floor of the square root, exact for every 64-bit input.
std::uint64_t isqrt(std::uint64_t n);

struct SieveOptions {
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned threads = 1;
};

// All primes <= limit, used to cross off composites inside segments.
// Immutable after construction and safe to share between threads.
class BasePrimes {
public:
  explicit BasePrimes(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }

  // Largest base prime needed to sieve values below `hi`.
  static std::uint64_t required_limit(std::uint64_t hi);
  bool covers(std::uint64_t hi) const { return limit_ >= required_limit(hi); }

private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

// A window [lo, hi) of the integers with one composite mark per odd value.
// Even values other than 2 are implicitly composite.
class Segment {
public:
  Segment(std::uint64_t lo, std::uint64_t hi,
          std::size_t max_size = kDefaultSegmentSize);

  // Re-targets the segment, reusing its storage.
  void assign(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::uint64_t size() const { return hi_ - lo_; }
  std::size_t max_size() const { return max_size_; }
  bool sieved() const { return sieved_; }

  // Marks every composite in [lo, hi). Throws PreconditionError when `base`
  // does not reach sqrt(hi - 1).
  void sieve(const BasePrimes& base);

  // Valid after sieve(); `value` must lie in [lo, hi).
  bool is_composite(std::uint64_t value) const;

  std::uint64_t count_primes() const;
  void append_primes(std::vector<std::uint64_t>& out) const;

private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::uint64_t first_odd_ = 0;
  std::uint64_t odd_count_ = 0;
  std::size_t max_size_;
  bool sieved_ = false;
  std::vector<std::uint64_t> marks_;
};

// Primes in [seg.lo, seg.hi), ascending.
std::vector<std::uint64_t> sieve_segment(Segment& seg, const BasePrimes& base);

// Exactly the primes 2 <= p <= limit. Throws RangeError when limit < 2.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        const SieveOptions& options = {});

// pi(x). Throws RangeError when x < 2.
std::uint64_t count_primes(std::uint64_t x, const SieveOptions& options = {});

// Trial division up to floor(sqrt(num)). Reference oracle for tests and for
// validating single user inputs; far too slow for bulk work.
bool is_prime_oracle(std::uint64_t num);

// Smallest prime greater than p. p must be prime. Cost grows with sqrt(p).
std::uint64_t next_prime(std::uint64_t p);

// Ascending stream of the primes >= start and < end, produced segment by
// segment. With threads > 1 consecutive segments are sieved concurrently and
// handed out in order.
class PrimeSource {
public:
  explicit PrimeSource(std::uint64_t start, SieveOptions options = {},
                       std::uint64_t end = UINT64_MAX);

  // Next prime, or 0 once the stream is exhausted.
  std::uint64_t next() {
    if (pos_ == buffer_.size() && !refill())
      return 0;
    return buffer_[pos_++];
  }

private:
  bool refill();

  SieveOptions options_;
  std::uint64_t next_lo_;
  std::uint64_t end_;
  std::shared_ptr<const BasePrimes> base_;
  std::vector<Segment> segments_;
  std::vector<std::vector<std::uint64_t>> batch_;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
};

} // namespace primegap
