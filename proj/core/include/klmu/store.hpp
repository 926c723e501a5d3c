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

#ifndef KLMU_STORE_HPP
#define KLMU_STORE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klmu/moves.hpp"
#include "klmu/poly.hpp"

namespace klmu {

struct DbOptions {
  std::size_t shards = 64;
  /// Zero keeps every record in memory. Otherwise least recently used
  /// records are dropped once their encoded size exceeds the budget; a
  /// dropped record reads as absent but stays in the write-through log.
  std::size_t memory_budget_bytes = 0;
  /// Records are appended here as they are first inserted.
  std::optional<std::filesystem::path> write_through;
};

/// Sharded map from pair keys to polynomials with a compact binary format.
///
/// put() is idempotent and safe from many threads; a second put of a
/// different polynomial under the same key raises CorruptionError.
class Database {
 public:
  explicit Database(DbOptions options = {});
  ~Database();
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;

  void put(const PairKey& key, const IntPoly& poly);
  std::optional<IntPoly> get(const PairKey& key) const;
  std::size_t size() const;
  std::size_t evicted() const;

  /// Records sorted by (n, x, w).
  std::vector<std::pair<PairKey, IntPoly>> records() const;

  void save(const std::filesystem::path& path) const;
  static std::unique_ptr<Database> load(const std::filesystem::path& path, DbOptions options = {});

  /// One "n;x;w;a0,a1,..." line per record, sorted.
  std::string export_text() const;
  /// Returns the number of lines read.
  std::size_t import_text(std::string_view text);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// KLMU v1 encoding of the given records, header included.
std::string encode_records(const std::vector<std::pair<PairKey, IntPoly>>& records);
/// Inverse of encode_records. Throws CorruptionError with the byte offset of
/// the first bad record.
std::vector<std::pair<PairKey, IntPoly>> decode_records(std::string_view bytes);

}  // namespace klmu

#endif  // KLMU_STORE_HPP
