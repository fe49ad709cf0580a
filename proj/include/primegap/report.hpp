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
#include "primegap/verifier.hpp"

#include <fmt/format.h>

#include <atomic>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace primegap {

enum class OutputFormat { Csv, Jsonl, Table };

// Throws RangeError for anything but csv, jsonl or table.
OutputFormat parse_format(std::string_view text);

// Streams GapRecords. csv columns are n,p,gap,is_maximal,theorem1_margin
// and jsonl objects use the same field names.
class RecordWriter {
public:
  RecordWriter(std::ostream& out, OutputFormat format);
  ~RecordWriter();

  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;

  void header();
  void write(const GapRecord& rec);
  void flush();

private:
  std::ostream& out_;
  OutputFormat format_;
  fmt::memory_buffer buf_;
};

// Adapts RecordWriter to the verifier's sink interface.
class WriterSink : public RecordSink {
public:
  explicit WriterSink(RecordWriter& writer) : writer_(writer) {}
  void on_record(const GapRecord& rec, std::span<const BoundVerdict>) override {
    writer_.write(rec);
  }
  void flush() override { writer_.flush(); }

private:
  RecordWriter& writer_;
};

// Deterministic rendering: no wall time.
std::string render_summary(const VerificationSummary& summary, OutputFormat format);

// "ok", "violated", or "not reached" when the check never applied.
std::string_view check_status(const CheckStats& stats);

// One line per bound at a single prime.
struct BoundsReport {
  PrimeIndexPair pair;
  std::uint64_t gap = 0;
  std::uint64_t theorem1_margin = 0;

  struct Entry {
    Check check;
    std::optional<BoundVerdict> verdict;
    std::string not_applicable; // reason, when verdict is empty
  };
  std::vector<Entry> entries;
};

// Throws RangeError when p is not prime.
BoundsReport bounds_at(std::uint64_t p, const SieveOptions& options = {});
std::string render_bounds(const BoundsReport& report, OutputFormat format);

std::string render_witness(const GapWitness& w, OutputFormat format);

// Full precision for machine formats.
std::string format_real(double v);

// The command-line front end. Exit codes: 0 clean, 1 operational error,
// 2 usage error, 3 verification finding, 130 interrupted by *cancel.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* cancel = nullptr);

} // namespace primegap
