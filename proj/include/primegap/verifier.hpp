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

#include "primegap/bounds.hpp"
#include "primegap/gaps.hpp"
#include "primegap/sieve.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primegap {

enum class Emit { None, All, MaximalOnly, ViolationsOnly };

// Receives the records selected by RunConfig::emit, in ascending n.
class RecordSink {
public:
  virtual ~RecordSink() = default;
  virtual void on_record(const GapRecord& rec, std::span<const BoundVerdict> violations) = 0;
  // Called before every checkpoint write so emitted output never runs ahead
  // of durable state.
  virtual void flush() {}
};

struct RunConfig {
  std::uint64_t limit = 0;
  std::vector<Check> checks;
  SieveOptions sieve{};
  std::optional<std::filesystem::path> checkpoint_path;
  std::uint64_t checkpoint_interval = 1'000'000;
  Emit emit = Emit::None;

  // Stop (with a final checkpoint) after this many records in this
  // invocation, or once *cancel becomes true. The flag may be set from a
  // signal handler.
  std::optional<std::uint64_t> stop_after;
  const std::atomic<bool>* cancel = nullptr;

  // Progress callback, invoked every `progress_interval` records.
  std::function<void(std::uint64_t n, std::uint64_t p)> progress;
  std::uint64_t progress_interval = 10'000'000;
};

struct CheckStats {
  Check check;
  std::uint64_t applied = 0;
  std::uint64_t violations = 0;
  std::optional<GapRecord> first_violation;

  bool operator==(const CheckStats&) const = default;
};

struct VerificationSummary {
  std::uint64_t limit = 0;
  std::uint64_t primes_processed = 0;
  std::uint64_t last_prime = 0;
  bool completed = false;
  std::vector<CheckStats> checks;
  std::vector<GapRecord> maximal_gaps;
  double wall_time = 0; // seconds, excluded from equality

  std::uint64_t total_violations() const;
  const CheckStats* find(const Check& check) const;

  bool operator==(const VerificationSummary& o) const {
    return limit == o.limit && primes_processed == o.primes_processed &&
           last_prime == o.last_prime && completed == o.completed && checks == o.checks &&
           maximal_gaps == o.maximal_gaps;
  }
};

// Durable state of a run after the record at stream.last_n.
struct Checkpoint {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  std::uint64_t limit = 0;
  std::vector<Check> checks;
  GapStreamState stream;
  std::vector<CheckStats> stats;
  std::vector<GapRecord> maximal_records;

  bool operator==(const Checkpoint&) const = default;
};

// Theorem1, Bertrand, Corollary1, Empirical.
std::vector<Check> default_checks();

// The three epsilon pairs.
std::vector<Check> epsilon_checks();

// Comma list of check names; "epsilon" expands to all three pairs and
// "all" to every check. Result is sorted and de-duplicated.
std::vector<Check> parse_checks(std::string_view list);

std::string format_checks(std::span<const Check> checks);

// Throws RangeError on an invalid config. Violations are recorded in the
// summary, never thrown. Checkpoint I/O failures throw CheckpointError and
// leave the previous checkpoint file untouched.
VerificationSummary run_verification(const RunConfig& config, RecordSink* sink = nullptr);

// Continues a run from `checkpoint`. Throws UnsupportedVersionError or
// IncompatibleResumeError when the checkpoint does not fit the config.
VerificationSummary resume(const Checkpoint& checkpoint, const RunConfig& config,
                           RecordSink* sink = nullptr);

// --- checkpoint files -------------------------------------------------------

// `key = value` text, one key per line, ending with
// `sha256 = <hex digest of every preceding line>`.
std::string serialize_checkpoint(const Checkpoint& cp);
Checkpoint parse_checkpoint(std::string_view text);

// Writes to a temporary sibling and renames over `path`.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

// --- Table 1 ----------------------------------------------------------------

struct Table1Row {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t gap = 0;
  bool starred = false;
  std::uint64_t margin = 0;
  double empirical = 0; // (p + 1) / ln p

  // Column 5 rounded half away from zero to one decimal, in tenths.
  std::int64_t empirical_tenths() const;
};

// The published rows, with column 5 as printed (in tenths).
struct Table1Expected {
  std::uint64_t n, p, gap;
  bool starred;
  std::uint64_t margin;
  std::int64_t empirical_tenths;
};
std::span<const Table1Expected> table1_expected();

inline constexpr std::uint64_t kTable1MaxPrime = 436273009;

struct Table1Result {
  std::vector<Table1Row> rows;
  // Human-readable description of every disagreement with the published
  // table, including maximal gaps that the table omits.
  std::vector<std::string> mismatches;

  bool matches() const { return mismatches.empty(); }
};

// Recomputes every published row with p <= max_p.
Table1Result reproduce_table1(std::uint64_t max_p = kTable1MaxPrime, SieveOptions options = {});

// "n<sep>p<sep>gap[*]<sep>margin<sep>col5" with col5 to one decimal.
std::string format_table1_row(const Table1Row& row, std::string_view sep = ", ");

} // namespace primegap
