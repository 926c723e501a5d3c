// Copyright 2026 The klmu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "klmu/store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <list>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "absl/container/flat_hash_map.h"
#include "absl/hash/hash.h"
#include "klmu/error.hpp"

namespace klmu {
namespace {

constexpr std::string_view kMagic = "KLMU";
constexpr unsigned char kVersion = 0x01;

// Raw key: n, then the bytes of x and w.
std::string raw_key(const PairKey& key) {
  const Pair p = key.pair();
  std::string out(1, static_cast<char>(key.n));
  for (auto b : p.x.bytes()) out.push_back(static_cast<char>(b));
  for (auto b : p.w.bytes()) out.push_back(static_cast<char>(b));
  return out;
}

PairKey key_from_raw(std::string_view raw) {
  const int n = static_cast<unsigned char>(raw[0]);
  auto word = [&](std::size_t offset) {
    return Permutation::from_bytes_unchecked(
        {reinterpret_cast<const std::uint8_t*>(raw.data() + offset), static_cast<std::size_t>(n)});
  };
  return PairKey{n, word(1).compact(), word(1 + static_cast<std::size_t>(n)).compact()};
}

void append_record(std::string& out, std::string_view raw, const IntPoly& poly) {
  out.append(raw);
  const std::size_t count = poly.coeffs().size();
  out.push_back(static_cast<char>(count & 0xff));
  out.push_back(static_cast<char>(count >> 8));
  for (const BigInt& c : poly.coeffs()) {
    std::string mag;
    for (BigInt rest = c; rest != 0; rest >>= 8) {
      mag.push_back(static_cast<char>(static_cast<unsigned>(rest & 0xff)));
    }
    out.push_back(static_cast<char>(mag.size()));
    out.append(mag);
  }
}

std::size_t encoded_size(std::string_view raw, const IntPoly& poly) {
  std::string tmp;
  append_record(tmp, raw, poly);
  return tmp.size();
}

void check_storable(const PairKey& key, const IntPoly& poly) {
  if (key.n < 1 || key.n > 255) throw DomainError("database: size out of range in " + key.to_string());
  if (poly.coeffs().size() > 0xffff) throw DomainError("database: too many coefficients");
  for (const BigInt& c : poly.coeffs()) {
    if (c < 0) throw DomainError("database: negative coefficient for " + key.to_string());
    if (boost::multiprecision::msb(c == 0 ? BigInt(1) : c) >= 255 * 8) {
      throw DomainError("database: coefficient too large for " + key.to_string());
    }
  }
}

std::vector<std::pair<std::string, IntPoly>> decode_raw(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + 1 || bytes.substr(0, kMagic.size()) != kMagic) {
    throw CorruptionError("database: bad magic at offset 0");
  }
  if (static_cast<unsigned char>(bytes[kMagic.size()]) != kVersion) {
    throw CorruptionError("database: unsupported version " +
                          std::to_string(static_cast<unsigned char>(bytes[kMagic.size()])) + " at offset 4");
  }
  std::vector<std::pair<std::string, IntPoly>> out;
  std::size_t pos = kMagic.size() + 1;
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
  while (pos < bytes.size()) {
    const std::size_t start = pos;
    auto fail = [&](const std::string& why) {
      throw CorruptionError("database: " + why + " in record at offset " + std::to_string(start));
    };
    const std::size_t n = byte(pos);
    if (n == 0) fail("zero size");
    if (bytes.size() - pos < 1 + 2 * n + 2) fail("truncated record");
    for (std::size_t word = 0; word < 2; ++word) {
      std::uint64_t seen[4] = {0, 0, 0, 0};
      for (std::size_t i = 0; i < n; ++i) {
        const unsigned v = byte(pos + 1 + word * n + i);
        if (v >= n || (seen[v / 64] >> (v % 64) & 1)) fail("word is not a permutation");
        seen[v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
    std::string raw(bytes.substr(pos, 1 + 2 * n));
    pos += 1 + 2 * n;
    const std::size_t count = byte(pos) | std::size_t{byte(pos + 1)} << 8;
    pos += 2;
    std::vector<BigInt> coeffs;
    coeffs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (pos >= bytes.size()) fail("truncated coefficients");
      const std::size_t len = byte(pos++);
      if (bytes.size() - pos < len) fail("truncated coefficient");
      if (len > 0 && byte(pos + len - 1) == 0) fail("non-canonical coefficient");
      BigInt c = 0;
      for (std::size_t i = len; i-- > 0;) c = (c << 8) | byte(pos + i);
      coeffs.push_back(std::move(c));
      pos += len;
    }
    if (!coeffs.empty() && coeffs.back() == 0) fail("untrimmed coefficient list");
    out.emplace_back(std::move(raw), IntPoly(std::move(coeffs)));
  }
  return out;
}

}  // namespace

struct Database::Impl {
  struct Shard {
    mutable std::shared_mutex m;
    absl::flat_hash_map<std::string, IntPoly> map;
  };

  explicit Impl(DbOptions opts) : options(std::move(opts)), shards(std::max<std::size_t>(1, options.shards)) {}

  DbOptions options;
  std::vector<Shard> shards;

  // LRU bookkeeping, only used with a memory budget.
  mutable std::mutex lru_mutex;
  mutable std::list<std::string> lru;
  mutable absl::flat_hash_map<std::string, std::list<std::string>::iterator> lru_pos;
  std::size_t bytes = 0;
  std::size_t evicted = 0;

  std::mutex log_mutex;
  std::ofstream log;

  Shard& shard(const std::string& raw) { return shards[absl::Hash<std::string>()(raw) % shards.size()]; }
  const Shard& shard(const std::string& raw) const {
    return shards[absl::Hash<std::string>()(raw) % shards.size()];
  }

  void open_log() {
    if (!options.write_through) return;
    const bool fresh = !std::filesystem::exists(*options.write_through) ||
                       std::filesystem::file_size(*options.write_through) == 0;
    log.open(*options.write_through, std::ios::binary | std::ios::app);
    if (!log) throw IoError("database: cannot open " + options.write_through->string());
    if (fresh) {
      log.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
      log.put(static_cast<char>(kVersion));
      log.flush();
    }
  }

  void touch(const std::string& raw) const {
    std::lock_guard lock(lru_mutex);
    auto it = lru_pos.find(raw);
    if (it != lru_pos.end()) lru.splice(lru.begin(), lru, it->second);
  }

  // Returns true if the record is new.
  bool insert(std::string raw, const IntPoly& poly, const std::string& label) {
    Shard& s = shard(raw);
    {
      std::unique_lock lock(s.m);
      auto [it, inserted] = s.map.try_emplace(raw, poly);
      if (!inserted) {
        if (!(it->second == poly)) {
          throw CorruptionError("database: conflicting polynomials for " + label + ": " +
                                it->second.to_string() + " vs " + poly.to_string());
        }
        return false;
      }
    }
    if (log.is_open()) {
      std::string rec;
      append_record(rec, raw, poly);
      std::lock_guard lock(log_mutex);
      log.write(rec.data(), static_cast<std::streamsize>(rec.size()));
      log.flush();
      if (!log) throw IoError("database: write-through append failed");
    }
    if (options.memory_budget_bytes != 0) {
      std::lock_guard lock(lru_mutex);
      bytes += encoded_size(raw, poly);
      lru.push_front(raw);
      lru_pos[raw] = lru.begin();
      while (bytes > options.memory_budget_bytes && lru.size() > 1) {
        std::string victim = std::move(lru.back());
        lru.pop_back();
        lru_pos.erase(victim);
        Shard& vs = shard(victim);
        std::unique_lock vlock(vs.m);
        auto vit = vs.map.find(victim);
        bytes -= encoded_size(victim, vit->second);
        vs.map.erase(vit);
        ++evicted;
      }
    }
    return true;
  }
};

Database::Database(DbOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {
  impl_->open_log();
}

Database::~Database() = default;

void Database::put(const PairKey& key, const IntPoly& poly) {
  check_storable(key, poly);
  impl_->insert(raw_key(key), poly, key.to_string());
}

std::optional<IntPoly> Database::get(const PairKey& key) const {
  const std::string raw = raw_key(key);
  const auto& s = impl_->shard(raw);
  std::optional<IntPoly> out;
  {
    std::shared_lock lock(s.m);
    auto it = s.map.find(raw);
    if (it == s.map.end()) return std::nullopt;
    out = it->second;
  }
  if (impl_->options.memory_budget_bytes != 0) impl_->touch(raw);
  return out;
}

std::size_t Database::size() const {
  std::size_t total = 0;
  for (const auto& s : impl_->shards) {
    std::shared_lock lock(s.m);
    total += s.map.size();
  }
  return total;
}

std::size_t Database::evicted() const {
  std::lock_guard lock(impl_->lru_mutex);
  return impl_->evicted;
}

std::vector<std::pair<PairKey, IntPoly>> Database::records() const {
  std::vector<std::pair<std::string, IntPoly>> raw;
  for (const auto& s : impl_->shards) {
    std::shared_lock lock(s.m);
    for (const auto& [k, v] : s.map) raw.emplace_back(k, v);
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<PairKey, IntPoly>> out;
  out.reserve(raw.size());
  for (auto& [k, v] : raw) out.emplace_back(key_from_raw(k), std::move(v));
  return out;
}

std::string encode_records(const std::vector<std::pair<PairKey, IntPoly>>& records) {
  std::string out(kMagic);
  out.push_back(static_cast<char>(kVersion));
  for (const auto& [key, poly] : records) {
    check_storable(key, poly);
    append_record(out, raw_key(key), poly);
  }
  return out;
}

std::vector<std::pair<PairKey, IntPoly>> decode_records(std::string_view bytes) {
  std::vector<std::pair<PairKey, IntPoly>> out;
  for (auto& [raw, poly] : decode_raw(bytes)) out.emplace_back(key_from_raw(raw), std::move(poly));
  return out;
}

void Database::save(const std::filesystem::path& path) const {
  const std::string bytes = encode_records(records());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("database: cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("database: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("database: cannot rename to " + path.string() + ": " + ec.message());
}

std::unique_ptr<Database> Database::load(const std::filesystem::path& path, DbOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("database: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  auto db = std::make_unique<Database>(std::move(options));
  for (auto& [raw, poly] : decode_raw(bytes)) {
    const std::string label = key_from_raw(raw).to_string();
    db->impl_->insert(std::move(raw), poly, label);
  }
  return db;
}

std::string Database::export_text() const {
  std::string out;
  for (const auto& [key, poly] : records()) {
    out += std::to_string(key.n) + ";" + key.x_word + ";" + key.w_word + ";" + poly.to_string() + "\n";
  }
  return out;
}

std::size_t Database::import_text(std::string_view text) {
  std::size_t lines = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const std::size_t sep = line.find(';', start);
      fields.push_back(line.substr(start, sep == std::string_view::npos ? sep : sep - start));
      if (sep == std::string_view::npos) break;
      start = sep + 1;
    }
    if (fields.size() != 4) throw ParseError("database import: line " + std::to_string(line_no) + ": expected 4 fields");
    const Permutation x = parse_permutation(fields[1]);
    const Permutation w = parse_permutation(fields[2]);
    int n = 0;
    const auto [end, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), n);
    if (ec != std::errc() || end != fields[0].data() + fields[0].size()) {
      throw ParseError("database import: line " + std::to_string(line_no) + ": bad size field");
    }
    if (x.size() != n || w.size() != n) {
      throw ParseError("database import: line " + std::to_string(line_no) + ": size mismatch");
    }
    put(PairKey{n, x.compact(), w.compact()}, IntPoly::parse(fields[3]));
    ++lines;
  }
  return lines;
}

}  // namespace klmu
