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

#include "primegap/errors.hpp"
#include "primegap/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <thread>

namespace primegap {

namespace {

constexpr int kExitClean = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFinding = 3;
constexpr int kExitInterrupted = 130;

unsigned threads_from_env() {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("PRIMEGAP_THREADS");
  if (!env || !*env)
    return cores;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0)
    throw CLI::ValidationError("PRIMEGAP_THREADS", "must be a positive integer");
  return static_cast<unsigned>(std::min<unsigned long>(v, cores));
}

Emit parse_emit(const std::string& text) {
  if (text == "none")
    return Emit::None;
  if (text == "all")
    return Emit::All;
  if (text == "maximal")
    return Emit::MaximalOnly;
  if (text == "violations")
    return Emit::ViolationsOnly;
  throw CLI::ValidationError("--emit", "must be one of none, all, maximal, violations");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* cancel) {
  CLI::App app{"Prime gap verification engine"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_text = "table";
  std::size_t segment_size = kDefaultSegmentSize;
  app.add_option("--format", format_text, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl", "table"}));
  app.add_option("--segment-size", segment_size, "Numbers per sieve segment")
      ->check(CLI::Range(std::size_t{64}, std::size_t{1} << 32));

  std::uint64_t limit = 0;
  bool maximal_only = false;
  auto* gaps = app.add_subcommand("gaps", "Emit gap records for every prime <= limit");
  gaps->add_option("--limit", limit, "Largest prime to report")->required();
  gaps->add_flag("--maximal-only", maximal_only, "Only records whose gap is a new maximum");

  std::string checks_text = "default";
  std::string checkpoint_path;
  bool resume_run = false;
  std::uint64_t checkpoint_interval = 1'000'000;
  std::string emit_text = "violations";
  std::uint64_t stop_after = 0;
  bool progress = false;
  auto* verify = app.add_subcommand("verify", "Apply bound checks to every prime <= limit");
  verify->add_option("--limit", limit, "Largest prime to verify")->required();
  verify->add_option("--checks", checks_text,
                     "Comma list: theorem1, bertrand, corollary1, empirical, andrica, "
                     "dusart_upper, dusart_lower, np_chain, epsilon, default, all");
  auto* ckpt_opt = verify->add_option("--checkpoint", checkpoint_path, "Checkpoint file");
  verify->add_flag("--resume", resume_run, "Continue from --checkpoint")->needs(ckpt_opt);
  verify->add_option("--checkpoint-interval", checkpoint_interval, "Primes between checkpoints")
      ->check(CLI::PositiveNumber);
  verify->add_option("--emit", emit_text, "Records to print: none, all, maximal, violations");
  verify->add_option("--stop-after", stop_after,
                     "Stop after this many primes in this invocation (checkpointed)");
  verify->add_flag("--progress", progress, "Report progress on standard error");

  std::uint64_t x = 0;
  auto* pi = app.add_subcommand("pi", "Print pi(x)");
  pi->add_option("x", x, "Upper end")->required();

  std::uint64_t p = 0;
  auto* bounds = app.add_subcommand("bounds", "Evaluate every bound at a prime p");
  bounds->add_option("p", p, "A prime")->required();

  std::uint64_t table_limit = kTable1MaxPrime;
  auto* table1 = app.add_subcommand("table1", "Recompute the maximal-gap table");
  table1->add_option("--limit", table_limit, "Only rows with p <= limit");

  unsigned m = 0;
  auto* witness = app.add_subcommand("witness", "Prime followed by a gap >= m near m! + 1");
  witness->add_option("m", m, "Parameter in [3, 13]")->required();

  SieveOptions sieve;
  OutputFormat format = OutputFormat::Table;
  Emit emit = Emit::ViolationsOnly;
  try {
    app.parse(argc, argv);
    format = parse_format(format_text);
    emit = parse_emit(emit_text);
    sieve.segment_size = segment_size;
    sieve.threads = threads_from_env();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (*gaps) {
      RecordWriter writer(out, format);
      GapStream stream(limit, sieve);
      writer.header();
      while (auto rec = stream.next())
        if (!maximal_only || rec->is_maximal)
          writer.write(*rec);
      writer.flush();
      return kExitClean;
    }

    if (*verify) {
      RunConfig config;
      config.limit = limit;
      config.checks = parse_checks(checks_text);
      config.sieve = sieve;
      if (!checkpoint_path.empty())
        config.checkpoint_path = checkpoint_path;
      config.checkpoint_interval = checkpoint_interval;
      config.emit = emit;
      if (stop_after > 0)
        config.stop_after = stop_after;
      config.cancel = cancel;
      if (progress)
        config.progress = [&err](std::uint64_t n, std::uint64_t at) {
          err << "progress: n = " << n << ", p = " << at << std::endl;
        };

      RecordWriter writer(out, format);
      WriterSink sink(writer);
      VerificationSummary summary;
      if (resume_run) {
        summary = resume(read_checkpoint(checkpoint_path), config, &sink);
      } else {
        if (emit != Emit::None)
          writer.header();
        summary = run_verification(config, &sink);
      }
      writer.flush();

      if (summary.completed) {
        if (emit != Emit::None)
          out << '\n';
        out << render_summary(summary, format);
        if (format == OutputFormat::Table)
          out << fmt::format("\nwall_time         {:.3f} s\n", summary.wall_time);
        else
          err << fmt::format("wall_time {:.3f} s\n", summary.wall_time);
      } else {
        err << "stopped after n = " << summary.primes_processed
            << ", p = " << summary.last_prime;
        if (config.checkpoint_path)
          err << "; resume with --resume --checkpoint " << checkpoint_path << '\n';
        else
          err << "; no checkpoint configured, progress is lost\n";
      }
      out.flush();
      if (cancel && cancel->load())
        return kExitInterrupted;
      return summary.total_violations() > 0 ? kExitFinding : kExitClean;
    }

    if (*pi) {
      const std::uint64_t count = count_primes(x, sieve);
      switch (format) {
      case OutputFormat::Csv: out << "x,pi\n" << x << ',' << count << '\n'; break;
      case OutputFormat::Jsonl:
        out << "{\"x\":" << x << ",\"pi\":" << count << "}\n";
        break;
      case OutputFormat::Table: out << count << '\n'; break;
      }
      return kExitClean;
    }

    if (*bounds) {
      out << render_bounds(bounds_at(p, sieve), format);
      return kExitClean;
    }

    if (*table1) {
      const Table1Result result = reproduce_table1(table_limit, sieve);
      switch (format) {
      case OutputFormat::Table:
        for (const auto& row : result.rows)
          out << format_table1_row(row, "  ") << '\n';
        break;
      case OutputFormat::Csv:
        out << "n,p,gap,is_maximal,theorem1_margin,empirical_bound\n";
        for (const auto& row : result.rows)
          out << row.n << ',' << row.p << ',' << row.gap << ',' << (row.starred ? "true" : "false")
              << ',' << row.margin << ',' << format_real(row.empirical) << '\n';
        break;
      case OutputFormat::Jsonl:
        for (const auto& row : result.rows)
          out << fmt::format("{{\"n\":{},\"p\":{},\"gap\":{},\"is_maximal\":{},"
                             "\"theorem1_margin\":{},\"empirical_bound\":{}}}\n",
                             row.n, row.p, row.gap, row.starred, row.margin,
                             format_real(row.empirical));
        break;
      }
      out.flush();
      for (const auto& m : result.mismatches)
        err << "mismatch: " << m << '\n';
      return result.matches() ? kExitClean : kExitFinding;
    }

    if (*witness) {
      out << render_witness(gap_witness(m), format);
      return kExitClean;
    }
  } catch (const std::exception& e) {
    out.flush();
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

} // namespace primegap
