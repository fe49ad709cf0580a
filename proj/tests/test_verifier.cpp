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

#include "doctest.h"

#include "primegap/errors.hpp"
#include "primegap/report.hpp"
#include "primegap/verifier.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace primegap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("primegap-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct CollectSink : RecordSink {
  std::vector<GapRecord> records;
  void on_record(const GapRecord& rec, std::span<const BoundVerdict>) override {
    records.push_back(rec);
  }
};

RunConfig config_for(std::uint64_t limit, std::string_view checks) {
  RunConfig c;
  c.limit = limit;
  c.checks = parse_checks(checks);
  c.sieve = SieveOptions{4096, 1};
  return c;
}

} // namespace

TEST_CASE("run_verification: theorem1 to 150") {
  const auto s = run_verification(config_for(150, "theorem1"));
  CHECK(s.completed);
  CHECK(s.primes_processed == 35);
  CHECK(s.last_prime == 149);
  CHECK(s.total_violations() == 0);
  REQUIRE(s.maximal_gaps.size() == 6);
  const std::uint64_t ps[] = {2, 3, 7, 23, 89, 113};
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(s.maximal_gaps[i].p == ps[i]);
}

TEST_CASE("run_verification: bertrand to 10") {
  const auto s = run_verification(config_for(10, "bertrand"));
  CHECK(s.primes_processed == 4);
  CHECK(s.find(Check{BoundKind::Bertrand, {}})->applied == 4);
  CHECK(s.total_violations() == 0);
}

TEST_CASE("check application counts") {
  const auto s = run_verification(config_for(100000, "all"));
  REQUIRE(s.primes_processed == 9592);
  CHECK(s.total_violations() == s.find(Check::parse("andrica"))->violations);
  CHECK(s.find(Check::parse("andrica"))->violations == 0);
  CHECK(s.find(Check::parse("corollary1"))->applied == s.primes_processed - 2);
  CHECK(s.find(Check::parse("epsilon_1/5"))->applied == s.primes_processed - 9);
  CHECK(s.find(Check::parse("epsilon_1/13"))->applied == s.primes_processed - 118);
  CHECK(s.find(Check::parse("epsilon_1/16597"))->applied == 0);
  CHECK(check_status(*s.find(Check::parse("epsilon_1/16597"))) == "not reached");
  CHECK(s.find(Check::parse("theorem1"))->applied == s.primes_processed);
  CHECK(s.find(Check::parse("np_chain"))->applied == s.primes_processed - count_primes(60184));
}

TEST_CASE("violations are data") {
  // Epsilon 1/2 with n0 = 0 fails at p = 2, 3 and 7 (gaps 1, 2, 4).
  RunConfig c = config_for(50, "epsilon_1/2_0");
  CollectSink sink;
  c.emit = Emit::ViolationsOnly;
  const auto s = run_verification(c, &sink);
  CHECK(s.completed);
  const auto& st = s.checks.front();
  CHECK(st.violations == 3);
  REQUIRE(st.first_violation);
  CHECK(st.first_violation->p == 2);
  REQUIRE(sink.records.size() == 3);
  CHECK(sink.records[2].p == 7);
}

TEST_CASE("emit selectors") {
  RunConfig c = config_for(200, "theorem1");
  CollectSink all, maximal;
  c.emit = Emit::All;
  run_verification(c, &all);
  CHECK(all.records.size() == 46);
  c.emit = Emit::MaximalOnly;
  run_verification(c, &maximal);
  CHECK(maximal.records.size() == 6);
}

TEST_CASE("invalid configs") {
  CHECK_THROWS_AS(run_verification(config_for(2, "theorem1")), RangeError);
  RunConfig c = config_for(100, "theorem1");
  c.checks.clear();
  CHECK_THROWS_AS(run_verification(c), RangeError);
  c = config_for(100, "theorem1");
  c.checkpoint_interval = 0;
  CHECK_THROWS_AS(run_verification(c), RangeError);
  CHECK_THROWS_AS(parse_checks(""), RangeError);
  CHECK_THROWS_AS(parse_checks("theorem1,bogus"), RangeError);
}

TEST_CASE("checkpoint text format") {
  Checkpoint cp;
  cp.limit = 150;
  cp.checks = parse_checks("theorem1,bertrand");
  cp.stream = GapStreamState{30, 113, 14, {127, 131, 137, 139}};
  for (const auto& c : cp.checks)
    cp.stats.push_back(CheckStats{c, 30, 0, std::nullopt});
  cp.stats[0].violations = 1;
  cp.stats[0].first_violation = GapRecord{7, 17, 2, false, 2};
  cp.maximal_records = {{1, 2, 1, true, 1}, {2, 3, 2, true, 1}};

  const std::string text = serialize_checkpoint(cp);
  CHECK(text.find("format_version = 1\n") == 0);
  CHECK(text.find("lookahead_primes = 127,131,137,139\n") != std::string::npos);
  CHECK(text.find("last_p = 113\n") != std::string::npos);
  CHECK(text.find("maximal_records_so_far = 1/2/1/1/1;2/3/2/1/1\n") != std::string::npos);
  const auto hash_at = text.rfind("sha256 = ");
  REQUIRE(hash_at != std::string::npos);
  CHECK(text.substr(hash_at + 9, 64) == sha256_hex(text.substr(0, hash_at)));
  CHECK(text.back() == '\n');

  CHECK(parse_checkpoint(text) == cp);

  std::string corrupt = text;
  corrupt[corrupt.find("113")] = '9';
  CHECK_THROWS_AS(parse_checkpoint(corrupt), CheckpointError);

  std::string future = text;
  future.replace(0, 18, "format_version = 2");
  CHECK_THROWS_AS(parse_checkpoint(future), UnsupportedVersionError);

  CHECK_THROWS_AS(parse_checkpoint("limit = 5\n"), CheckpointError);
}

TEST_CASE("sha256 known answer") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("checkpoint at p = 97 resumes to the same summary") {
  TempDir dir;
  const fs::path file = dir.path / "run.ckpt";
  const auto direct = run_verification(config_for(150, "default"));

  RunConfig first = config_for(97, "default");
  first.checkpoint_path = file;
  const auto partial = run_verification(first);
  CHECK(partial.last_prime == 97);

  const Checkpoint cp = read_checkpoint(file);
  CHECK(cp.stream.last_p == 97);
  const auto resumed = resume(cp, config_for(150, "default"));
  CHECK(resumed == direct);
}

TEST_CASE("resume is byte-identical at random split points") {
  TempDir dir;
  const fs::path file = dir.path / "split.ckpt";
  const std::uint64_t limit = 200000;

  auto render = [](const std::vector<GapRecord>& recs) {
    std::ostringstream os;
    RecordWriter w(os, OutputFormat::Csv);
    for (const auto& r : recs)
      w.write(r);
    w.flush();
    return os.str();
  };

  RunConfig base = config_for(limit, "all");
  base.emit = Emit::All;
  CollectSink whole;
  const auto direct = run_verification(base, &whole);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    std::uniform_int_distribution<std::uint64_t> at(1, direct.primes_processed - 1);
    RunConfig c = base;
    c.checkpoint_path = file;
    c.checkpoint_interval = 997;
    c.stop_after = at(rng);
    CollectSink part1, part2;
    const auto stopped = run_verification(c, &part1);
    CHECK_FALSE(stopped.completed);
    CHECK(stopped.primes_processed == *c.stop_after);

    RunConfig r = base;
    r.checkpoint_path = file;
    r.checkpoint_interval = 997;
    const auto finished = resume(read_checkpoint(file), r, &part2);
    CHECK(finished == direct);
    CHECK(render_summary(finished, OutputFormat::Csv) == render_summary(direct, OutputFormat::Csv));
    CHECK(render(part1.records) + render(part2.records) == render(whole.records));
  }
}

TEST_CASE("periodic checkpoints are readable mid-run") {
  TempDir dir;
  const fs::path file = dir.path / "periodic.ckpt";
  RunConfig c = config_for(5000, "theorem1");
  c.checkpoint_path = file;
  c.checkpoint_interval = 100;
  c.stop_after = 250;
  run_verification(c);
  const auto cp = read_checkpoint(file);
  CHECK(cp.stream.last_n == 250);
  CHECK_FALSE(fs::exists(dir.path / "periodic.ckpt.tmp"));
}

TEST_CASE("cancellation flag stops the run with a checkpoint") {
  TempDir dir;
  std::atomic<bool> cancel{true};
  RunConfig c = config_for(5000, "theorem1");
  c.checkpoint_path = dir.path / "cancel.ckpt";
  c.cancel = &cancel;
  const auto s = run_verification(c);
  CHECK_FALSE(s.completed);
  CHECK(s.primes_processed == 0);
  // Nothing processed, so nothing to save.
  CHECK_FALSE(fs::exists(*c.checkpoint_path));
}

TEST_CASE("incompatible resumes") {
  TempDir dir;
  const fs::path file = dir.path / "x.ckpt";
  RunConfig c = config_for(1000, "theorem1,bertrand");
  c.checkpoint_path = file;
  c.stop_after = 50;
  run_verification(c);
  const auto cp = read_checkpoint(file);

  CHECK_THROWS_AS(resume(cp, config_for(1000, "theorem1")), IncompatibleResumeError);
  CHECK_THROWS_AS(resume(cp, config_for(100, "theorem1,bertrand")), IncompatibleResumeError);
  CHECK_NOTHROW(resume(cp, config_for(1000, "bertrand,theorem1")));

  Checkpoint old = cp;
  old.format_version = 0;
  CHECK_THROWS_AS(resume(old, config_for(1000, "theorem1,bertrand")), UnsupportedVersionError);
}

TEST_CASE("checkpoint write failure leaves the previous file intact") {
  TempDir dir;
  const fs::path file = dir.path / "keep.ckpt";
  RunConfig c = config_for(1000, "theorem1");
  c.checkpoint_path = file;
  c.stop_after = 20;
  run_verification(c);
  const std::string before = [&] {
    std::ifstream in(file);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }();

  // Block the temporary file's path with a directory so the write fails.
  fs::create_directory(dir.path / "keep.ckpt.tmp");
  RunConfig r = config_for(1000, "theorem1");
  r.checkpoint_path = file;
  CHECK_THROWS_AS(resume(read_checkpoint(file), r), CheckpointError);
  std::ifstream in(file);
  CHECK(std::string(std::istreambuf_iterator<char>(in), {}) == before);
  CHECK_THROWS_AS(read_checkpoint(dir.path / "missing.ckpt"), CheckpointError);
}

TEST_CASE("table1 rows up to 1e6") {
  const auto t = reproduce_table1(1000000);
  CHECK(t.matches());
  REQUIRE(t.rows.size() == 42);
  CHECK(format_table1_row(t.rows[23]) == "24, 89, 8*, 6, 20.1");
  CHECK(format_table1_row(t.rows[1]) == "2, 3, 2*, 1, 3.6");
  CHECK(format_table1_row(t.rows[0], "  ") == "1  2  1*  1  4.3");
  const auto it = std::find_if(t.rows.begin(), t.rows.end(),
                               [](const Table1Row& r) { return r.n == 1183; });
  REQUIRE(it != t.rows.end());
  CHECK(format_table1_row(*it) == "1183, 9551, 36*, 126, 1042.3");
  CHECK(table1_expected().size() == 54);
}

TEST_CASE("table1 self-check detects a disagreement") {
  // Restricting to p <= 120 produces the 30 small rows only; the published
  // table must agree on all of them.
  const auto t = reproduce_table1(120);
  CHECK(t.matches());
  CHECK(t.rows.size() == 30);
  Table1Row altered = t.rows[4];
  altered.empirical += 0.1;
  CHECK(altered.empirical_tenths() != table1_expected()[4].empirical_tenths);
}
