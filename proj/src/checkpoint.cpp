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
#include "primegap/verifier.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace primegap {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw CheckpointError("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

// Records are n/p/gap/is_maximal/margin.
std::string encode_record(const GapRecord& r) {
  return std::to_string(r.n) + "/" + std::to_string(r.p) + "/" + std::to_string(r.gap) + "/" +
         (r.is_maximal ? "1" : "0") + "/" + std::to_string(r.theorem1_margin);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  if (text.empty())
    return out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos)
      return out;
    text.remove_prefix(pos + 1);
  }
}

std::uint64_t to_u64(std::string_view text, std::string_view key) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw CheckpointError("checkpoint key '" + std::string(key) + "': bad integer '" +
                          std::string(text) + "'");
  return value;
}

GapRecord decode_record(std::string_view text, std::string_view key) {
  const auto f = split(text, '/');
  if (f.size() != 5 || (f[3] != "0" && f[3] != "1"))
    throw CheckpointError("checkpoint key '" + std::string(key) + "': bad record '" +
                          std::string(text) + "'");
  return GapRecord{to_u64(f[0], key), to_u64(f[1], key), to_u64(f[2], key), f[3] == "1",
                   to_u64(f[4], key)};
}

// name:value pairs keyed by check name.
std::map<std::string, std::string_view, std::less<>> decode_map(std::string_view text,
                                                               std::string_view key) {
  std::map<std::string, std::string_view, std::less<>> out;
  for (auto item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw CheckpointError("checkpoint key '" + std::string(key) + "': bad entry '" +
                            std::string(item) + "'");
    out.emplace(std::string(item.substr(0, colon)), item.substr(colon + 1));
  }
  return out;
}

} // namespace

std::string serialize_checkpoint(const Checkpoint& cp) {
  std::ostringstream out;
  out << "format_version = " << cp.format_version << '\n';
  out << "limit = " << cp.limit << '\n';
  out << "checks = " << format_checks(cp.checks) << '\n';
  out << "last_n = " << cp.stream.last_n << '\n';
  out << "last_p = " << cp.stream.last_p << '\n';
  out << "gap_max_so_far = " << cp.stream.gap_max << '\n';
  out << "lookahead_primes = ";
  for (std::size_t i = 0; i < cp.stream.lookahead.size(); ++i)
    out << (i ? "," : "") << cp.stream.lookahead[i];
  out << '\n';

  auto join_stats = [&](auto&& field) {
    std::string s;
    for (const auto& st : cp.stats) {
      std::string v = field(st);
      if (v.empty())
        continue;
      if (!s.empty())
        s += ',';
      s += st.check.name() + ":" + v;
    }
    return s;
  };
  out << "violation_counts = "
      << join_stats([](const CheckStats& s) { return std::to_string(s.violations); }) << '\n';
  out << "applied_counts = "
      << join_stats([](const CheckStats& s) { return std::to_string(s.applied); }) << '\n';
  out << "first_violations = " << join_stats([](const CheckStats& s) {
    return s.first_violation ? encode_record(*s.first_violation) : std::string{};
  }) << '\n';

  out << "maximal_records_so_far = ";
  for (std::size_t i = 0; i < cp.maximal_records.size(); ++i)
    out << (i ? ";" : "") << encode_record(cp.maximal_records[i]);
  out << '\n';

  std::string body = out.str();
  body += "sha256 = " + sha256_hex(body) + "\n";
  return body;
}

Checkpoint parse_checkpoint(std::string_view text) {
  std::map<std::string, std::string_view, std::less<>> values;
  std::size_t pos = 0;
  std::size_t hash_line = std::string_view::npos;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    const auto eq = line.find(" = ");
    if (eq == std::string_view::npos)
      throw CheckpointError("malformed checkpoint line: '" + std::string(line) + "'");
    const std::string key(line.substr(0, eq));
    if (key == "sha256")
      hash_line = pos;
    if (!values.emplace(key, line.substr(eq + 3)).second)
      throw CheckpointError("duplicate checkpoint key '" + key + "'");
    pos = eol + 1;
    if (hash_line != std::string_view::npos)
      break;
  }
  if (pos < text.size())
    throw CheckpointError("trailing data after checkpoint hash");

  auto get = [&](std::string_view key) -> std::string_view {
    const auto it = values.find(key);
    if (it == values.end())
      throw CheckpointError("checkpoint is missing key '" + std::string(key) + "'");
    return it->second;
  };

  Checkpoint cp;
  const std::uint64_t version = to_u64(get("format_version"), "format_version");
  if (version != static_cast<std::uint64_t>(Checkpoint::kFormatVersion))
    throw UnsupportedVersionError("checkpoint format version " + std::to_string(version) +
                                  " is not supported (expected " +
                                  std::to_string(Checkpoint::kFormatVersion) + ")");
  if (hash_line == std::string_view::npos)
    throw CheckpointError("checkpoint has no sha256 line");
  if (sha256_hex(text.substr(0, hash_line)) != get("sha256"))
    throw CheckpointError("checkpoint integrity hash does not match its contents");

  cp.format_version = static_cast<int>(version);
  cp.limit = to_u64(get("limit"), "limit");
  try {
    cp.checks = parse_checks(get("checks"));
  } catch (const RangeError& e) {
    throw CheckpointError(std::string("checkpoint key 'checks': ") + e.what());
  }
  cp.stream.last_n = to_u64(get("last_n"), "last_n");
  cp.stream.last_p = to_u64(get("last_p"), "last_p");
  cp.stream.gap_max = to_u64(get("gap_max_so_far"), "gap_max_so_far");
  for (auto item : split(get("lookahead_primes"), ','))
    cp.stream.lookahead.push_back(to_u64(item, "lookahead_primes"));

  const auto violations = decode_map(get("violation_counts"), "violation_counts");
  const auto applied = decode_map(get("applied_counts"), "applied_counts");
  const auto firsts = decode_map(get("first_violations"), "first_violations");
  for (const auto& check : cp.checks) {
    const std::string name = check.name();
    CheckStats st{check, 0, 0, std::nullopt};
    const auto v = violations.find(name);
    const auto a = applied.find(name);
    if (v == violations.end() || a == applied.end())
      throw CheckpointError("checkpoint has no counts for check '" + name + "'");
    st.violations = to_u64(v->second, "violation_counts");
    st.applied = to_u64(a->second, "applied_counts");
    if (const auto f = firsts.find(name); f != firsts.end())
      st.first_violation = decode_record(f->second, "first_violations");
    cp.stats.push_back(st);
  }
  if (violations.size() != cp.checks.size() || applied.size() != cp.checks.size())
    throw CheckpointError("checkpoint counts name checks outside its check list");

  for (auto item : split(get("maximal_records_so_far"), ';'))
    cp.maximal_records.push_back(decode_record(item, "maximal_records_so_far"));
  return cp;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  const std::string text = serialize_checkpoint(cp);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f)
    throw CheckpointError("cannot open " + tmp.string() + " for writing");
  const bool written = std::fwrite(text.data(), 1, text.size(), f) == text.size() &&
                       std::fflush(f) == 0 && ::fsync(::fileno(f)) == 0;
  if (std::fclose(f) != 0 || !written) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw CheckpointError("failed writing checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw CheckpointError("cannot move checkpoint into place at " + path.string() + ": " +
                          ec.message());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CheckpointError("cannot open checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

} // namespace primegap
