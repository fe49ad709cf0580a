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

#include "primegap/report.hpp"

#include "primegap/errors.hpp"

#include "json.hpp"

#include <cmath>

namespace primegap {

using ordered_json = nlohmann::ordered_json;

OutputFormat parse_format(std::string_view text) {
  if (text == "csv")
    return OutputFormat::Csv;
  if (text == "jsonl")
    return OutputFormat::Jsonl;
  if (text == "table")
    return OutputFormat::Table;
  throw RangeError("unknown output format '" + std::string(text) + "'");
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

namespace {

// Half away from zero, one decimal.
std::string one_decimal(double v) {
  const long long tenths = std::llround(v * 10.0);
  const long long mag = tenths < 0 ? -tenths : tenths;
  return fmt::format("{}{}.{}", tenths < 0 ? "-" : "", mag / 10, mag % 10);
}

ordered_json record_json(const GapRecord& r) {
  return ordered_json{{"n", r.n},
                      {"p", r.p},
                      {"gap", r.gap},
                      {"is_maximal", r.is_maximal},
                      {"theorem1_margin", r.theorem1_margin}};
}

constexpr std::size_t kFlushBytes = 1 << 16;

} // namespace

// ---------------------------------------------------------------------------
// RecordWriter

RecordWriter::RecordWriter(std::ostream& out, OutputFormat format)
    : out_(out), format_(format) {}

RecordWriter::~RecordWriter() {
  try {
    flush();
  } catch (...) {
  }
}

void RecordWriter::header() {
  switch (format_) {
  case OutputFormat::Csv:
    fmt::format_to(std::back_inserter(buf_), "n,p,gap,is_maximal,theorem1_margin\n");
    break;
  case OutputFormat::Table:
    fmt::format_to(std::back_inserter(buf_), "{:>12} {:>20} {:>6} {:>10} {:>15}\n", "n", "p",
                   "gap", "is_maximal", "theorem1_margin");
    break;
  case OutputFormat::Jsonl:
    break;
  }
}

void RecordWriter::write(const GapRecord& r) {
  const std::string_view maximal = r.is_maximal ? "true" : "false";
  auto it = std::back_inserter(buf_);
  switch (format_) {
  case OutputFormat::Csv:
    fmt::format_to(it, "{},{},{},{},{}\n", r.n, r.p, r.gap, maximal, r.theorem1_margin);
    break;
  case OutputFormat::Jsonl:
    fmt::format_to(it,
                   "{{\"n\":{},\"p\":{},\"gap\":{},\"is_maximal\":{},\"theorem1_margin\":{}}}\n",
                   r.n, r.p, r.gap, maximal, r.theorem1_margin);
    break;
  case OutputFormat::Table:
    fmt::format_to(it, "{:>12} {:>20} {:>6} {:>10} {:>15}\n", r.n, r.p, r.gap, maximal,
                   r.theorem1_margin);
    break;
  }
  if (buf_.size() >= kFlushBytes)
    flush();
}

void RecordWriter::flush() {
  if (buf_.size() > 0) {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }
  out_.flush();
}

// ---------------------------------------------------------------------------
// Summary

std::string_view check_status(const CheckStats& stats) {
  if (stats.violations > 0)
    return "violated";
  if (stats.applied == 0)
    return "not reached";
  return "ok";
}

std::string render_summary(const VerificationSummary& s, OutputFormat format) {
  std::string out;
  auto it = std::back_inserter(out);
  switch (format) {
  case OutputFormat::Table: {
    fmt::format_to(it, "limit             {}\n", s.limit);
    fmt::format_to(it, "primes_processed  {}\n", s.primes_processed);
    fmt::format_to(it, "last_prime        {}\n", s.last_prime);
    fmt::format_to(it, "completed         {}\n\n", s.completed);
    fmt::format_to(it, "{:<16} {:>12} {:>10}  {:<12} {}\n", "check", "applied", "violations",
                   "status", "first_violation");
    for (const auto& c : s.checks) {
      std::string first = "-";
      if (c.first_violation)
        first = fmt::format("n={} p={} gap={} margin={}", c.first_violation->n,
                            c.first_violation->p, c.first_violation->gap,
                            c.first_violation->theorem1_margin);
      fmt::format_to(it, "{:<16} {:>12} {:>10}  {:<12} {}\n", c.check.name(), c.applied,
                     c.violations, check_status(c), first);
    }
    fmt::format_to(it, "\nmaximal gaps: {}\n", s.maximal_gaps.size());
    fmt::format_to(it, "{:>12} {:>20} {:>6} {:>15}\n", "n", "p", "gap", "theorem1_margin");
    for (const auto& r : s.maximal_gaps)
      fmt::format_to(it, "{:>12} {:>20} {:>6} {:>15}\n", r.n, r.p, r.gap, r.theorem1_margin);
    break;
  }
  case OutputFormat::Csv: {
    fmt::format_to(it, "summary_key,value\n");
    fmt::format_to(it, "limit,{}\nprimes_processed,{}\nlast_prime,{}\ncompleted,{}\n", s.limit,
                   s.primes_processed, s.last_prime, s.completed);
    fmt::format_to(it, "maximal_gaps,{}\n\n", s.maximal_gaps.size());
    fmt::format_to(it, "check,applied,violations,status,first_violation_n,first_violation_p\n");
    for (const auto& c : s.checks) {
      fmt::format_to(it, "{},{},{},{},", c.check.name(), c.applied, c.violations,
                     check_status(c));
      if (c.first_violation)
        fmt::format_to(it, "{},{}\n", c.first_violation->n, c.first_violation->p);
      else
        fmt::format_to(it, ",\n");
    }
    break;
  }
  case OutputFormat::Jsonl: {
    ordered_json checks = ordered_json::array();
    for (const auto& c : s.checks)
      checks.push_back(ordered_json{
          {"name", c.check.name()},
          {"applied", c.applied},
          {"violations", c.violations},
          {"status", check_status(c)},
          {"first_violation",
           c.first_violation ? record_json(*c.first_violation) : ordered_json(nullptr)}});
    ordered_json maximal = ordered_json::array();
    for (const auto& r : s.maximal_gaps)
      maximal.push_back(record_json(r));
    ordered_json j{{"summary",
                    ordered_json{{"limit", s.limit},
                                 {"primes_processed", s.primes_processed},
                                 {"last_prime", s.last_prime},
                                 {"completed", s.completed},
                                 {"checks", std::move(checks)},
                                 {"maximal_gaps", std::move(maximal)}}}};
    out = j.dump() + "\n";
    break;
  }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounds at a prime

namespace {

std::string not_applicable_reason(const Check& c) {
  switch (c.kind) {
  case BoundKind::DusartUpper: return "not applicable (x < 60184)";
  case BoundKind::DusartLower: return "not applicable (x < 5393)";
  case BoundKind::Corollary1: return "not applicable (p < 5)";
  case BoundKind::NpChain: return "not applicable (p <= 60184)";
  case BoundKind::Epsilon: return fmt::format("not applicable (n <= {})", c.epsilon.n0);
  default: return "not applicable";
  }
}

} // namespace

BoundsReport bounds_at(std::uint64_t p, const SieveOptions& options) {
  if (!is_prime_oracle(p))
    throw RangeError(std::to_string(p) + " is not prime");
  BoundsReport report;
  report.pair.p = p;
  report.pair.n = count_primes(p, options);
  report.gap = next_prime(p) - p;
  if (p > UINT64_MAX - report.pair.n)
    throw OverflowError("p + pi(p) overflows");
  report.theorem1_margin = count_primes(p + report.pair.n, options) - report.pair.n;

  const GapRecord rec{report.pair.n, p, report.gap, false, report.theorem1_margin};
  for (const auto& check : parse_checks("all")) {
    BoundsReport::Entry e{check, evaluate(check, rec), {}};
    if (!e.verdict)
      e.not_applicable = not_applicable_reason(check);
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string render_bounds(const BoundsReport& r, OutputFormat format) {
  std::string out;
  auto it = std::back_inserter(out);
  switch (format) {
  case OutputFormat::Table:
    fmt::format_to(it, "p                {}\n", r.pair.p);
    fmt::format_to(it, "n = pi(p)        {}\n", r.pair.n);
    fmt::format_to(it, "gap              {}\n", r.gap);
    fmt::format_to(it, "theorem1_margin  {}\n\n", r.theorem1_margin);
    fmt::format_to(it, "{:<16} {:>14} {:>14}  {}\n", "bound", "value", "observed", "holds");
    for (const auto& e : r.entries) {
      if (e.verdict)
        fmt::format_to(it, "{:<16} {:>14} {:>14}  {}\n", e.check.name(),
                       one_decimal(e.verdict->bound_value), one_decimal(e.verdict->observed),
                       e.verdict->holds);
      else
        fmt::format_to(it, "{:<16} {}\n", e.check.name(), e.not_applicable);
    }
    break;
  case OutputFormat::Csv:
    fmt::format_to(it, "bound,p,n,gap,theorem1_margin,applicable,bound_value,observed,holds\n");
    for (const auto& e : r.entries) {
      fmt::format_to(it, "{},{},{},{},{},", e.check.name(), r.pair.p, r.pair.n, r.gap,
                     r.theorem1_margin);
      if (e.verdict)
        fmt::format_to(it, "true,{},{},{}\n", format_real(e.verdict->bound_value),
                       format_real(e.verdict->observed), e.verdict->holds);
      else
        fmt::format_to(it, "false,,,\n");
    }
    break;
  case OutputFormat::Jsonl:
    for (const auto& e : r.entries) {
      ordered_json j{{"bound", e.check.name()},     {"p", r.pair.p},
                     {"n", r.pair.n},               {"gap", r.gap},
                     {"theorem1_margin", r.theorem1_margin}, {"applicable", e.verdict.has_value()}};
      if (e.verdict) {
        j["bound_value"] = e.verdict->bound_value;
        j["observed"] = e.verdict->observed;
        j["holds"] = e.verdict->holds;
      }
      out += j.dump() + "\n";
    }
    break;
  }
  return out;
}

std::string render_witness(const GapWitness& w, OutputFormat format) {
  switch (format) {
  case OutputFormat::Csv:
    return fmt::format("m,p,next,gap,gap_lower_bound\n{},{},{},{},{}\n", w.m, w.p, w.next,
                       w.gap(), w.gap_lower_bound);
  case OutputFormat::Jsonl:
    return ordered_json{{"m", w.m},
                        {"p", w.p},
                        {"next", w.next},
                        {"gap", w.gap()},
                        {"gap_lower_bound", w.gap_lower_bound}}
               .dump() +
           "\n";
  case OutputFormat::Table:
    break;
  }
  return fmt::format("m = {}  p = {}  next = {}  gap = {} >= {}\n", w.m, w.p, w.next, w.gap(),
                     w.gap_lower_bound);
}

} // namespace primegap
