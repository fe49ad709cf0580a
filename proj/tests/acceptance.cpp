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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "primegap/bounds.hpp"
#include "primegap/report.hpp"
#include "primegap/sieve.hpp"
#include "primegap/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace primegap;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "primegap");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& text, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto at = text.find(sep, pos);
    out.push_back(text.substr(pos, at - pos));
    if (at == std::string::npos)
      return out;
    pos = at + sep.size();
  }
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// A criterion reports failure by returning a non-empty reason.
using Criterion = std::function<std::string(std::string& detail)>;

// Maximal prime gaps (OEIS A005250) and the primes where they start
// (OEIS A002386), first 30 terms.
constexpr std::uint64_t kA005250[30] = {1,   2,   4,   6,   8,   14,  18,  20,  22,  34,
                                        36,  44,  52,  72,  86,  96,  112, 114, 118, 132,
                                        148, 154, 180, 210, 220, 222, 234, 248, 250, 282};
constexpr std::uint64_t kA002386[30] = {
    2,        3,        7,        23,       89,        113,       523,       887,
    1129,     1327,     9551,     15683,    19609,     31397,     155921,    360653,
    370261,   492113,   1349533,  1357201,  2010733,   4652353,   17051707,  20831323,
    47326693, 122164747, 189695659, 191912783, 387096133, 436273009};

// Compares `table1` output lines against the published rows.
std::string compare_table1(const std::vector<std::string>& lines, std::uint64_t max_p) {
  std::vector<Table1Expected> want;
  for (const auto& row : table1_expected())
    if (row.p <= max_p)
      want.push_back(row);
  if (lines.size() != want.size())
    return "expected " + std::to_string(want.size()) + " rows, got " +
           std::to_string(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto f = split(lines[i], "  ");
    const auto& w = want[i];
    const std::string gap = std::to_string(w.gap) + (w.starred ? "*" : "");
    if (f.size() != 5 || f[0] != std::to_string(w.n) || f[1] != std::to_string(w.p) ||
        f[2] != gap || f[3] != std::to_string(w.margin))
      return "row " + std::to_string(i + 1) + " integer columns differ: '" + lines[i] + "'";
    const double printed = static_cast<double>(w.empirical_tenths) / 10.0;
    const double exact = empirical_bound(w.p);
    if (std::fabs(std::stod(f[4]) - printed) > 0.05 + 1e-9 ||
        std::fabs(exact - printed) > 0.05 + 1e-9)
      return "row " + std::to_string(i + 1) + " column 5 off: '" + lines[i] + "'";
  }
  return {};
}

} // namespace

int main() {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const SieveOptions sieve{kDefaultSegmentSize, cores};

  std::vector<std::pair<std::string, Criterion>> criteria;

  criteria.emplace_back("1 Table 1 reproduction", [](std::string& detail) -> std::string {
    auto t0 = std::chrono::steady_clock::now();
    const auto subset = cli({"table1", "--limit", "1000000"});
    const double subset_time = seconds_since(t0);
    if (subset.code != 0)
      return "table1 --limit 1e6 exited " + std::to_string(subset.code) + ": " + subset.err;
    if (auto why = compare_table1(split_lines(subset.out), 1000000); !why.empty())
      return "subset: " + why;
    if (subset_time > 5.0)
      return "subset p <= 1e6 took " + std::to_string(subset_time) + " s (> 5 s)";

    t0 = std::chrono::steady_clock::now();
    const auto full = cli({"table1"});
    const double full_time = seconds_since(t0);
    if (full.code != 0)
      return "table1 exited " + std::to_string(full.code) + ": " + full.err;
    const auto lines = split_lines(full.out);
    if (auto why = compare_table1(lines, kTable1MaxPrime); !why.empty())
      return why;
    if (full_time > 600.0)
      return "full table took " + std::to_string(full_time) + " s (> 600 s)";
    detail = std::to_string(lines.size()) + " rows; subset " + std::to_string(subset_time) +
             " s, full " + std::to_string(full_time) + " s";
    return {};
  });

  criteria.emplace_back("2 Maximal gaps to 436273009", [](std::string& detail) -> std::string {
    const auto r = cli({"gaps", "--limit", "436273009", "--maximal-only", "--format", "csv"});
    if (r.code != 0)
      return "exit " + std::to_string(r.code) + ": " + r.err;
    auto lines = split_lines(r.out);
    if (lines.empty() || lines.front() != "n,p,gap,is_maximal,theorem1_margin")
      return "missing csv header";
    lines.erase(lines.begin());
    if (lines.size() != 30)
      return "expected 30 records, got " + std::to_string(lines.size());
    std::vector<Table1Expected> starred;
    for (const auto& row : table1_expected())
      if (row.starred)
        starred.push_back(row);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto f = split(lines[i], ",");
      const auto& w = starred.at(i);
      if (f[0] != std::to_string(w.n) || f[1] != std::to_string(w.p) ||
          f[2] != std::to_string(w.gap) || f[3] != "true" || f[4] != std::to_string(w.margin))
        return "record " + std::to_string(i + 1) + " differs from the table: " + lines[i];
      if (f[1] != std::to_string(kA002386[i]) || f[2] != std::to_string(kA005250[i]))
        return "record " + std::to_string(i + 1) + " differs from A005250/A002386";
    }
    detail = "first " + lines.front() + ", last " + lines.back();
    return {};
  });

  criteria.emplace_back("3 Theorem 1 to 1e8", [&](std::string& detail) -> std::string {
    const auto r = cli({"verify", "--limit", "100000000", "--checks", "theorem1", "--format",
                        "csv", "--emit", "violations"});
    if (r.code != 0)
      return "exit " + std::to_string(r.code);
    if (r.out.find("primes_processed,5761455\n") == std::string::npos)
      return "primes_processed is not 5761455";
    if (r.out.find("\ntheorem1,5761455,0,ok,,\n") == std::string::npos)
      return "theorem1 row is not 5761455 applied / 0 violations";
    const std::uint64_t pi = count_primes(100000000, sieve);
    if (pi != 5761455)
      return "pi(1e8) by segment popcount = " + std::to_string(pi);
    detail = "5761455 primes, 0 violations";
    return {};
  });

  criteria.emplace_back("4 Corollary 1 and empirical to 1e7", [](std::string& detail) -> std::string {
    const auto r = cli({"verify", "--limit", "10000000", "--checks", "corollary1,empirical",
                        "--format", "csv"});
    if (r.code != 0)
      return "exit " + std::to_string(r.code);
    if (r.out.find("\ncorollary1,664577,0,ok,,\n") == std::string::npos ||
        r.out.find("\nempirical,664579,0,ok,,\n") == std::string::npos)
      return "unexpected check rows:\n" + r.out;
    detail = "664579 primes, 0 violations";
    return {};
  });

  criteria.emplace_back("5 Dusart sandwich on [60184, 1e7]", [&](std::string& detail) -> std::string {
    const auto primes = primes_up_to(10000000, sieve);
    auto pi = [&](std::uint64_t x) {
      return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) -
                                        primes.begin());
    };
    std::uint64_t points = 0, failures = 0;
    auto check = [&](std::uint64_t x) {
      const std::uint64_t count = pi(x);
      ++points;
      if (!dusart_lower_verdict(x, count).holds || !dusart_upper_verdict(x, count).holds)
        ++failures;
    };
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      if (p < 60184)
        continue;
      check(p);
      if (p - 1 >= 60184)
        check(p - 1); // pi is smallest relative to x just below a prime
    }
    for (std::uint64_t x = 70000; x <= 10000000; x += 10000)
      check(x);
    if (failures)
      return std::to_string(failures) + " of " + std::to_string(points) + " points fail";
    detail = std::to_string(points) + " points, 0 failures";
    return {};
  });

  criteria.emplace_back("6 Proof chain at 1000 sampled primes", [&](std::string& detail) -> std::string {
    const auto primes = primes_up_to(110000000, sieve);
    auto pi = [&](std::uint64_t x) {
      return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) -
                                        primes.begin());
    };
    std::mt19937_64 rng(436273009);
    std::uniform_real_distribution<double> logx(std::log(60184.0), std::log(1e8));
    std::uint64_t failures = 0;
    double worst_identity = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto x = static_cast<std::uint64_t>(std::exp(logx(rng)));
      const std::uint64_t p = *std::upper_bound(primes.begin(), primes.end(), x);
      if (p <= 60184 || p >= 100000000) {
        --i;
        continue;
      }
      const std::uint64_t n = pi(p);
      const ProofChain chain = proof_chain_check(p, n, pi(p + n) - n);
      worst_identity = std::max(worst_identity,
                                std::fabs(chain.stage(2) - chain.stage(3)) / chain.stage(3));
      if (!chain.holds(1e-9))
        ++failures;
    }
    if (failures)
      return std::to_string(failures) + " of 1000 chains fail";
    detail = "1000 primes, max |S2-S3|/S3 = " + format_real(worst_identity);
    return {};
  });

  criteria.emplace_back("7 Oracle equivalence to 1e5", [](std::string& detail) -> std::string {
    const auto primes = primes_up_to(100000);
    std::vector<bool> member(100001, false);
    for (auto p : primes)
      member[p] = true;
    for (std::uint64_t n = 2; n <= 100000; ++n)
      if (member[n] != is_prime_oracle(n))
        return "sieve and trial division disagree at " + std::to_string(n);
    GapStream stream(100000);
    std::uint64_t records = 0;
    while (auto rec = stream.next()) {
      std::uint64_t brute = 0;
      for (std::uint64_t q = rec->p + 1; q <= rec->p + rec->n; ++q)
        brute += is_prime_oracle(q);
      if (brute != rec->theorem1_margin)
        return "margin differs at p = " + std::to_string(rec->p);
      ++records;
    }
    detail = std::to_string(records) + " margins";
    return {};
  });

  criteria.emplace_back("8 Resume equivalence to 1e7", [](std::string& detail) -> std::string {
    const fs::path dir = fs::temp_directory_path() /
                         ("primegap-acceptance-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const std::vector<std::string> common = {"verify", "--limit", "10000000", "--format", "csv",
                                             "--emit", "all", "--checks", "default,andrica,epsilon",
                                             "--checkpoint-interval", "50000"};
    auto run = [&](std::vector<std::string> extra) {
      auto args = common;
      args.insert(args.end(), extra.begin(), extra.end());
      return cli(args);
    };
    const auto whole = run({});
    if (whole.code != 0)
      return "uninterrupted run exited " + std::to_string(whole.code);

    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<std::uint64_t> point(1, 664578);
    std::string reason;
    for (int i = 0; i < 10 && reason.empty(); ++i) {
      const std::uint64_t k = point(rng);
      const std::string file = (dir / ("run" + std::to_string(i) + ".ckpt")).string();
      const auto part1 = run({"--checkpoint", file, "--stop-after", std::to_string(k)});
      const auto part2 = run({"--checkpoint", file, "--resume"});
      if (part1.code != 0 || part2.code != 0)
        reason = "interrupted at " + std::to_string(k) + ": exit codes " +
                 std::to_string(part1.code) + "/" + std::to_string(part2.code);
      else if (part1.out + part2.out != whole.out)
        reason = "output differs after interruption at n = " + std::to_string(k);
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    if (!reason.empty())
      return reason;
    detail = "10 interruptions, " + std::to_string(whole.out.size()) + " bytes identical";
    return {};
  });

  criteria.emplace_back("9 Witness construction", [](std::string& detail) -> std::string {
    const auto w4 = cli({"witness", "4", "--format", "csv"});
    const auto w5 = cli({"witness", "5", "--format", "csv"});
    if (w4.out != "m,p,next,gap,gap_lower_bound\n4,23,29,6,4\n")
      return "witness 4: " + w4.out;
    if (w5.out != "m,p,next,gap,gap_lower_bound\n5,113,127,14,5\n")
      return "witness 5: " + w5.out;
    detail = "m=4 -> p=23 g=6; m=5 -> p=113 g=14";
    return {};
  });

  int failed = 0;
  for (const auto& [name, criterion] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail, reason;
    try {
      reason = criterion(detail);
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (reason.empty()) {
      std::cout << "PASS  " << name << "  (" << detail << "; " << secs << " s)" << std::endl;
    } else {
      ++failed;
      std::cout << "FAIL  " << name << "  " << reason << std::endl;
    }
  }
  std::cout << (failed ? "acceptance: FAILED " + std::to_string(failed) + " criteria"
                       : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
