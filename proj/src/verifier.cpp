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

#include "primegap/verifier.hpp"

#include "primegap/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace primegap {

std::uint64_t VerificationSummary::total_violations() const {
  std::uint64_t total = 0;
  for (const auto& s : checks)
    total += s.violations;
  return total;
}

const CheckStats* VerificationSummary::find(const Check& check) const {
  for (const auto& s : checks)
    if (s.check == check)
      return &s;
  return nullptr;
}

std::vector<Check> default_checks() {
  return {Check{BoundKind::Theorem1, {}}, Check{BoundKind::Corollary1, {}},
          Check{BoundKind::Empirical, {}}, Check{BoundKind::Bertrand, {}}};
}

std::vector<Check> epsilon_checks() {
  std::vector<Check> out;
  for (const auto& eps : kEpsilonPairs)
    out.push_back(Check{BoundKind::Epsilon, eps});
  return out;
}

namespace {

void normalize(std::vector<Check>& checks) {
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
}

} // namespace

std::vector<Check> parse_checks(std::string_view list) {
  std::vector<Check> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    while (!item.empty() && item.front() == ' ')
      item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ')
      item.remove_suffix(1);
    if (item.empty())
      continue;
    if (item == "epsilon") {
      auto eps = epsilon_checks();
      out.insert(out.end(), eps.begin(), eps.end());
    } else if (item == "default") {
      auto d = default_checks();
      out.insert(out.end(), d.begin(), d.end());
    } else if (item == "all") {
      for (auto kind : {BoundKind::Theorem1, BoundKind::DusartUpper, BoundKind::DusartLower,
                        BoundKind::Corollary1, BoundKind::Empirical, BoundKind::Bertrand,
                        BoundKind::Andrica, BoundKind::NpChain})
        out.push_back(Check{kind, {}});
      auto eps = epsilon_checks();
      out.insert(out.end(), eps.begin(), eps.end());
    } else {
      out.push_back(Check::parse(item));
    }
  }
  if (out.empty())
    throw RangeError("no checks selected");
  normalize(out);
  return out;
}

std::string format_checks(std::span<const Check> checks) {
  std::string out;
  for (const auto& c : checks) {
    if (!out.empty())
      out += ',';
    out += c.name();
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RunState {
  std::vector<CheckStats> stats;
  std::vector<GapRecord> maximal;
};

void validate(const RunConfig& config) {
  if (config.limit < 3)
    throw RangeError("verification needs limit >= 3, got " + std::to_string(config.limit));
  if (config.checks.empty())
    throw RangeError("no checks selected");
  if (config.checkpoint_interval == 0)
    throw RangeError("checkpoint interval must be at least 1");
}

bool selected(Emit emit, const GapRecord& rec, bool violated) {
  switch (emit) {
  case Emit::None: return false;
  case Emit::All: return true;
  case Emit::MaximalOnly: return rec.is_maximal;
  case Emit::ViolationsOnly: return violated;
  }
  return false;
}

VerificationSummary drive(const RunConfig& config, std::vector<Check> checks,
                          GapStream stream, RunState state, RecordSink* sink) {
  const auto started = std::chrono::steady_clock::now();

  auto snapshot = [&] {
    Checkpoint cp;
    cp.limit = config.limit;
    cp.checks = checks;
    cp.stream = stream.state();
    cp.stats = state.stats;
    cp.maximal_records = state.maximal;
    return cp;
  };
  auto save = [&] {
    if (sink)
      sink->flush();
    write_checkpoint(*config.checkpoint_path, snapshot());
  };

  VerificationSummary summary;
  summary.limit = config.limit;
  bool have_record = false;
  try {
    const GapStreamState s = stream.state();
    summary.primes_processed = s.last_n;
    summary.last_prime = s.last_p;
    have_record = true;
  } catch (const PreconditionError&) {
  }

  std::vector<BoundVerdict> violations;
  std::uint64_t this_run = 0;
  bool completed = false;
  while (true) {
    if ((config.cancel && config.cancel->load()) || (config.stop_after && this_run >= *config.stop_after))
      break;
    const auto rec = stream.next();
    if (!rec) {
      completed = true;
      break;
    }
    violations.clear();
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const auto verdict = evaluate(checks[i], *rec);
      if (!verdict)
        continue;
      CheckStats& st = state.stats[i];
      ++st.applied;
      if (!verdict->holds) {
        ++st.violations;
        if (!st.first_violation)
          st.first_violation = *rec;
        violations.push_back(*verdict);
      }
    }
    if (rec->is_maximal)
      state.maximal.push_back(*rec);
    if (sink && selected(config.emit, *rec, !violations.empty()))
      sink->on_record(*rec, violations);

    ++this_run;
    have_record = true;
    summary.primes_processed = rec->n;
    summary.last_prime = rec->p;
    if (config.checkpoint_path && rec->n % config.checkpoint_interval == 0)
      save();
    if (config.progress && rec->n % std::max<std::uint64_t>(1, config.progress_interval) == 0)
      config.progress(rec->n, rec->p);
  }
  if (config.checkpoint_path && have_record)
    save();
  if (sink)
    sink->flush();

  summary.completed = completed;
  summary.checks = std::move(state.stats);
  summary.maximal_gaps = std::move(state.maximal);
  summary.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return summary;
}

} // namespace

VerificationSummary run_verification(const RunConfig& config, RecordSink* sink) {
  validate(config);
  std::vector<Check> checks = config.checks;
  normalize(checks);
  RunState state;
  for (const auto& c : checks)
    state.stats.push_back(CheckStats{c, 0, 0, std::nullopt});
  return drive(config, std::move(checks), GapStream(config.limit, config.sieve),
               std::move(state), sink);
}

VerificationSummary resume(const Checkpoint& checkpoint, const RunConfig& config,
                           RecordSink* sink) {
  validate(config);
  if (checkpoint.format_version != Checkpoint::kFormatVersion)
    throw UnsupportedVersionError("checkpoint format version " +
                                  std::to_string(checkpoint.format_version) +
                                  " is not supported (expected " +
                                  std::to_string(Checkpoint::kFormatVersion) + ")");
  std::vector<Check> checks = config.checks;
  normalize(checks);
  if (checks != checkpoint.checks)
    throw IncompatibleResumeError("checkpoint was taken with checks {" +
                                  format_checks(checkpoint.checks) + "}, not {" +
                                  format_checks(checks) + "}");
  if (config.limit < checkpoint.stream.last_p)
    throw IncompatibleResumeError("limit " + std::to_string(config.limit) +
                                  " is below the checkpoint's last prime " +
                                  std::to_string(checkpoint.stream.last_p));
  if (checkpoint.stats.size() != checks.size())
    throw IncompatibleResumeError("checkpoint statistics do not match its check list");
  for (std::size_t i = 0; i < checks.size(); ++i)
    if (checkpoint.stats[i].check != checks[i])
      throw IncompatibleResumeError("checkpoint statistics do not match its check list");

  RunState state{checkpoint.stats, checkpoint.maximal_records};
  GapStream stream = [&] {
    try {
      return GapStream::resume(config.limit, checkpoint.stream, config.sieve);
    } catch (const PreconditionError& e) {
      throw IncompatibleResumeError(std::string("cannot resume: ") + e.what());
    }
  }();
  return drive(config, std::move(checks), std::move(stream), std::move(state), sink);
}

// ---------------------------------------------------------------------------
// Table 1

namespace {

constexpr Table1Expected kTable1[] = {
    {1, 2, 1, true, 1, 43},
    {2, 3, 2, true, 1, 36},
    {3, 5, 2, false, 1, 37},
    {4, 7, 4, true, 1, 41},
    {5, 11, 2, false, 1, 50},
    {6, 13, 4, false, 2, 55},
    {7, 17, 2, false, 2, 64},
    {8, 19, 4, false, 1, 68},
    {9, 23, 6, true, 2, 77},
    {10, 29, 2, false, 2, 89},
    {11, 31, 6, false, 2, 93},
    {12, 37, 4, false, 3, 105},
    {13, 41, 2, false, 3, 113},
    {14, 43, 4, false, 2, 117},
    {15, 47, 6, false, 3, 125},
    {16, 53, 6, false, 3, 136},
    {17, 59, 2, false, 4, 147},
    {18, 61, 6, false, 4, 151},
    {19, 67, 4, false, 4, 162},
    {20, 71, 2, false, 4, 169},
    {21, 73, 6, false, 3, 172},
    {22, 79, 4, false, 4, 183},
    {23, 83, 6, false, 4, 190},
    {24, 89, 8, true, 6, 201},
    {25, 97, 4, false, 5, 214},
    {26, 101, 2, false, 5, 221},
    {27, 103, 4, false, 4, 224},
    {28, 107, 2, false, 4, 231},
    {29, 109, 4, false, 4, 234},
    {30, 113, 14, true, 4, 241},
    {99, 523, 18, true, 15, 837},
    {154, 887, 20, true, 21, 1308},
    {189, 1129, 22, true, 25, 1608},
    {217, 1327, 34, true, 26, 1847},
    {1183, 9551, 36, true, 126, 10423},
    {1831, 15683, 44, true, 184, 16235},
    {2225, 19609, 52, true, 223, 19841},
    {3385, 31397, 72, true, 330, 30323},
    {14357, 155921, 86, true, 1165, 130401},
    {30802, 360653, 96, true, 2386, 281856},
    {31545, 370261, 112, true, 2439, 288772},
    {40933, 492113, 114, true, 3123, 375474},
    {103520, 1349533, 118, true, 7325, 956081},
    {104071, 1357201, 132, true, 7349, 961128},
    {149689, 2010733, 148, true, 10304, 1385375},
    {325852, 4652353, 154, true, 21244, 3030280},
    {1094421, 17051707, 180, true, 65621, 10240183},
    {1319945, 20831323, 210, true, 78221, 12361360},
    {2850174, 47326693, 220, true, 160910, 26779723},
    {6957876, 122164747, 222, true, 373308, 65606320},
    {10539432, 189695659, 234, true, 551956, 99520666},
    {10655462, 191912783, 248, true, 557801, 100622501},
    {20684332, 387096133, 250, true, 1044533, 195758339},
    {23163298, 436273009, 282, true, 1163064, 219301227},
};

} // namespace

std::span<const Table1Expected> table1_expected() { return kTable1; }

std::int64_t Table1Row::empirical_tenths() const {
  return std::llround(empirical * 10.0);
}

std::string format_table1_row(const Table1Row& row, std::string_view sep) {
  const std::int64_t tenths = row.empirical_tenths();
  std::string out = std::to_string(row.n);
  out += sep;
  out += std::to_string(row.p);
  out += sep;
  out += std::to_string(row.gap);
  if (row.starred)
    out += '*';
  out += sep;
  out += std::to_string(row.margin);
  out += sep;
  out += std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
  return out;
}

Table1Result reproduce_table1(std::uint64_t max_p, SieveOptions options) {
  Table1Result result;
  const std::span<const Table1Expected> expected = table1_expected();
  std::size_t next = 0;
  GapStream stream(std::max<std::uint64_t>(max_p, 3), options);
  while (auto rec = stream.next()) {
    while (next < expected.size() && expected[next].n < rec->n)
      ++next;
    const bool listed = next < expected.size() && expected[next].n == rec->n;
    if (!listed) {
      if (rec->is_maximal)
        result.mismatches.push_back("maximal gap " + std::to_string(rec->gap) + " at n = " +
                                    std::to_string(rec->n) + " is not in the table");
      continue;
    }
    Table1Row row{rec->n, rec->p, rec->gap, rec->is_maximal, rec->theorem1_margin,
                  empirical_bound(rec->p)};
    const Table1Expected& want = expected[next];
    const double printed = static_cast<double>(want.empirical_tenths) / 10.0;
    if (row.p != want.p || row.gap != want.gap || row.starred != want.starred ||
        row.margin != want.margin || row.empirical_tenths() != want.empirical_tenths ||
        std::fabs(row.empirical - printed) > 0.05 + 1e-12) {
      const Table1Row published{want.n, want.p, want.gap, want.starred, want.margin, printed};
      result.mismatches.push_back("row n = " + std::to_string(want.n) + ": computed '" +
                                  format_table1_row(row) + "', published '" +
                                  format_table1_row(published) + "'");
    }
    result.rows.push_back(row);
  }
  for (const auto& want : expected) {
    if (want.p > max_p)
      continue;
    const bool seen = std::any_of(result.rows.begin(), result.rows.end(),
                                  [&](const Table1Row& r) { return r.n == want.n; });
    if (!seen)
      result.mismatches.push_back("row n = " + std::to_string(want.n) + " was not produced");
  }
  return result;
}

} // namespace primegap
