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

#include "klmu/classes.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <numeric>
#include <thread>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "klmu/census.hpp"
#include "klmu/detail/packed.hpp"
#include "klmu/error.hpp"

namespace klmu {
namespace {

using detail::PackedPair;

enum class Verdict { kOpen, kReducible };

// Condition on a single orbit member that rules out a new mu value.
bool reducible_member(const Pair& p) {
  if (!bruhat_leq(p.x, p.w)) return true;
  if (length(p.x) < length(p.w) - 1 && !is_extremal(p)) return true;
  return is_compressible(p);
}

PackedPair node_key(const Pair& p, bool symmetries) {
  if (!symmetries) return PackedPair(p);
  return PackedPair(symmetry_orbit(p).front());
}

// kCanonical identifies symmetric pairs; kRawWithSymmetries keeps concrete
// pairs apart and adds the symmetries as explicit edges instead.
enum class Keying { kCanonical, kRaw, kRawWithSymmetries };

struct SearchNode {
  PackedPair pair;
  std::int32_t parent;
  Move move;
};

struct SearchResult {
  bool sink = false;
  std::int32_t sink_node = -1;
  bool complete = false;
  std::vector<SearchNode> nodes;
};

// Breadth-first search over the moves of the class relation. Pairs smaller
// than `floor` are sinks: they end the search when `stop_at_sink` is set and
// are never expanded. Decompressions are limited to size <= `ceiling`.
template <typename Visit>
SearchResult explore(const Pair& start, int floor, int ceiling, std::size_t node_limit,
                     Keying keying, bool stop_at_sink, Visit&& visit) {
  const bool symmetries = keying == Keying::kCanonical;
  SearchResult out;
  absl::flat_hash_set<PackedPair> seen;
  const Pair origin = orient(start);
  seen.insert(node_key(origin, symmetries));
  out.nodes.push_back({PackedPair(origin), -1, Move{}});
  visit(node_key(origin, symmetries));

  auto offer = [&](const Pair& raw, const Move& move, std::int32_t parent) -> bool {
    const Pair p = orient(raw);
    detail::require_packable(p.size(), "class search");
    const PackedPair key = node_key(p, symmetries);
    if (!seen.insert(key).second) return false;
    if (out.nodes.size() >= node_limit) {
      throw PartialResultError("class search: node limit of " + std::to_string(node_limit) +
                                   " reached from " + start.to_string(),
                               out.nodes.size());
    }
    out.nodes.push_back({PackedPair(p), parent, move});
    visit(key);
    if (p.size() < floor) {
      out.sink = true;
      if (out.sink_node < 0) out.sink_node = static_cast<std::int32_t>(out.nodes.size() - 1);
      return stop_at_sink;
    }
    return false;
  };

  for (std::size_t head = 0; head < out.nodes.size(); ++head) {
    const Pair p = out.nodes[head].pair.unpacked();
    const auto parent = static_cast<std::int32_t>(head);
    if (p.size() < floor) continue;
    for (const auto& [move, image] : ls_moves(p)) {
      if (offer(image, move, parent)) return out;
    }
    if (bruhat_leq(p.x, p.w)) {
      for (int i : naked_capitols(p)) {
        if (offer(compress(p, i), Move::compress(i), parent)) return out;
      }
    }
    if (p.size() + 1 <= ceiling) {
      for (int i = 0; i <= p.size(); ++i) {
        for (int v = 0; v <= p.size(); ++v) {
          if (auto d = decompress(p, i, v)) {
            if (offer(*d, Move::decompress(i, v), parent)) return out;
          }
        }
      }
    }
    if (keying == Keying::kRawWithSymmetries) {
      for (Symmetry s : {Symmetry::kInverse, Symmetry::kLeftLong, Symmetry::kRightLong}) {
        if (offer(apply_symmetry(p, s), Move::symmetry_move(s), parent)) return out;
      }
    }
  }
  out.complete = true;
  return out;
}

std::vector<Move> path_to(const SearchResult& r, std::int32_t node) {
  std::vector<Move> moves;
  for (; r.nodes[static_cast<std::size_t>(node)].parent >= 0; node = r.nodes[static_cast<std::size_t>(node)].parent) {
    moves.push_back(r.nodes[static_cast<std::size_t>(node)].move);
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

OrbitResult ls_orbit(const Pair& pair, std::size_t node_limit) {
  OrbitResult out;
  absl::flat_hash_set<PackedPair> seen;
  detail::require_packable(pair.size(), "ls_orbit");
  out.members.push_back(orient(pair));
  seen.insert(PackedPair(out.members.back()));
  for (std::size_t head = 0; head < out.members.size(); ++head) {
    for (const auto& [move, image] : ls_moves(out.members[head])) {
      const Pair p = orient(image);
      if (!seen.insert(PackedPair(p)).second) continue;
      if (out.members.size() >= node_limit) {
        out.truncated = true;
        return out;
      }
      out.members.push_back(p);
    }
  }
  return out;
}

struct IrreducibilityChecker::Impl {
  std::size_t node_limit;
  std::mutex m;
  absl::flat_hash_map<PackedPair, bool> memo;
};

IrreducibilityChecker::IrreducibilityChecker(std::size_t node_limit) : impl_(std::make_unique<Impl>()) {
  impl_->node_limit = node_limit;
}

IrreducibilityChecker::~IrreducibilityChecker() = default;

std::size_t IrreducibilityChecker::memo_size() const {
  std::lock_guard lock(impl_->m);
  return impl_->memo.size();
}

bool IrreducibilityChecker::is_irreducible(const Pair& pair) {
  const int gap = length(pair.w) - length(pair.x);
  const bool comparable = bruhat_leq(pair.x, pair.w);
  if (gap % 2 == 0 || gap < 0 || !comparable || (gap > 1 && !is_extremal(pair))) {
    throw DomainError("irreducibility is defined for odd extremal pairs and covers; got " +
                      pair.to_string());
  }
  detail::require_packable(pair.size(), "is_irreducible");
  const PackedPair key(pair);
  {
    std::lock_guard lock(impl_->m);
    if (auto it = impl_->memo.find(key); it != impl_->memo.end()) return it->second;
  }
  std::vector<PackedPair> members{key};
  absl::flat_hash_set<PackedPair> seen{key};
  bool irreducible = !reducible_member(pair);
  for (std::size_t head = 0; irreducible && head < members.size(); ++head) {
    for (const auto& [move, image] : ls_moves(members[head].unpacked())) {
      const Pair p = orient(image);
      const PackedPair pk(p);
      if (!seen.insert(pk).second) continue;
      {
        std::lock_guard lock(impl_->m);
        if (auto it = impl_->memo.find(pk); it != impl_->memo.end()) {
          irreducible = it->second;
          if (!irreducible) break;
        }
      }
      if (members.size() >= impl_->node_limit) {
        throw PartialResultError("irreducibility: orbit of " + pair.to_string() + " exceeds " +
                                     std::to_string(impl_->node_limit) + " pairs",
                                 members.size());
      }
      members.push_back(pk);
      if (reducible_member(p)) {
        irreducible = false;
        break;
      }
    }
  }
  std::lock_guard lock(impl_->m);
  for (const PackedPair& m : members) impl_->memo.emplace(m, irreducible);
  return irreducible;
}

bool is_irreducible(const Pair& pair, std::size_t node_limit) {
  IrreducibilityChecker checker(node_limit);
  return checker.is_irreducible(pair);
}

std::vector<Pair> irreducible_pairs(int n, IrreducibilityChecker& checker) {
  std::vector<Pair> out;
  ExtremalPairStream stream(n);
  Pair p(Permutation::identity(1), Permutation::identity(1));
  while (stream.next(p)) {
    if ((length(p.w) - length(p.x)) % 2 == 0 || is_compressible(p)) continue;
    if (checker.is_irreducible(p)) out.push_back(p);
  }
  return out;
}

std::vector<Pair> minimal_pairs(int n, KlCache& cache, std::size_t node_limit) {
  IrreducibilityChecker checker(node_limit);
  std::vector<Pair> out;
  for (const Pair& p : irreducible_pairs(n, checker)) {
    if (cache.mu(p.x, p.w) > 0) out.push_back(p);
  }
  return out;
}

ClassReport k_class_partition(const std::vector<Pair>& seeds, int n, const ClassOptions& options,
                              KlCache& cache) {
  if (options.k < 0) throw DomainError("class partition: k must be nonnegative");
  detail::require_packable(n + options.k, "class partition");
  ClassReport report;
  report.n = n;
  report.k = options.k;
  report.seeds = seeds;
  report.pair_count = seeds.size();

  const std::size_t count = seeds.size();
  std::vector<BigInt> mus(count);
  absl::flat_hash_map<PackedPair, std::vector<std::size_t>> seed_index;
  for (std::size_t i = 0; i < count; ++i) {
    if (seeds[i].size() != n) throw DomainError("class partition: seed " + seeds[i].to_string() + " is not in S_" + std::to_string(n));
    mus[i] = cache.mu_bracket(seeds[i].x, seeds[i].w);
    if (mus[i] <= 0) throw DomainError("class partition: seed " + seeds[i].to_string() + " has mu = 0");
    seed_index[node_key(orient(seeds[i]), options.use_symmetries)].push_back(i);
  }

  // Per seed: the seeds its search touched, whether it hit the sink, and
  // whether the search covered its whole class.
  struct Outcome {
    std::vector<std::size_t> touched;
    bool sink = false;
    bool complete = false;
    bool ran = false;
  };
  std::vector<Outcome> outcomes(count);
  std::vector<std::atomic<bool>> covered(count);
  for (auto& c : covered) c = false;
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= count) return;
      if (covered[i]) continue;
      try {
        Outcome o;
        SearchResult r = explore(seeds[i], n, n + options.k, options.node_limit,
                                 options.use_symmetries ? Keying::kCanonical : Keying::kRaw, true, [&](const PackedPair& key) {
                                   if (auto it = seed_index.find(key); it != seed_index.end()) {
                                     o.touched.insert(o.touched.end(), it->second.begin(), it->second.end());
                                   }
                                 });
        o.sink = r.sink;
        o.complete = r.complete;
        o.ran = true;
        if (o.complete && !o.sink) {
          for (std::size_t j : o.touched) covered[j] = true;
        }
        outcomes[i] = std::move(o);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  const std::size_t sink = count;
  UnionFind uf(count + 1);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j : outcomes[i].touched) uf.unite(i, j);
    if (outcomes[i].sink) uf.unite(i, sink);
  }

  absl::flat_hash_map<std::size_t, std::size_t> class_of_root;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t root = uf.find(i);
    auto [it, inserted] = class_of_root.try_emplace(root, report.classes.size());
    if (inserted) {
      EquivalenceClass c;
      c.mu = mus[i];
      c.sink = root == uf.find(sink);
      c.representative = canonical_key(orient(seeds[i]));
      report.classes.push_back(std::move(c));
    }
    EquivalenceClass& c = report.classes[it->second];
    if (c.mu != mus[i]) {
      throw CorruptionError("class partition: mu differs inside the class of " + seeds[i].to_string());
    }
    c.seeds.push_back(i);
  }
  for (const auto& c : report.classes) {
    if (c.sink) {
      report.sink_reached = true;
    } else {
      ++report.class_count;
    }
  }
  return report;
}

std::string ClassReport::to_text() const {
  std::string out;
  out += "n " + std::to_string(n) + "\n";
  out += "k " + std::to_string(k) + "\n";
  out += "pairs " + std::to_string(pair_count) + "\n";
  out += "classes " + std::to_string(class_count) + "\n";
  out += std::string("sink ") + (sink_reached ? "yes" : "no") + "\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    out += "\nclass " + std::to_string(c + 1) + "\n";
    out += "  mu " + cls.mu.str() + "\n";
    out += "  size " + std::to_string(cls.seeds.size()) + "\n";
    out += "  representative " + cls.representative.to_string() + "\n";
    out += std::string("  sink ") + (cls.sink ? "yes" : "no") + "\n";
    for (std::size_t i : cls.seeds) out += "  seed " + seeds[i].to_string() + "\n";
  }
  return out;
}

std::vector<Move> reduction_certificate(const Pair& seed, int k, std::size_t node_limit) {
  if (k < 0) throw DomainError("reduction certificate: k must be nonnegative");
  const int bound = seed.size() + k;
  detail::require_packable(bound, "reduction certificate");
  std::vector<Move> chain;
  Pair current = orient(seed);
  while (current.size() > 2) {
    const int m = current.size();
    bool reduced = false;
    for (int room = 0; m + room <= bound && !reduced; ++room) {
      SearchResult r = explore(current, m, m + room, node_limit, Keying::kRawWithSymmetries, true, [](const PackedPair&) {});
      if (!r.sink) continue;
      const std::vector<Move> phase = path_to(r, r.sink_node);
      chain.insert(chain.end(), phase.begin(), phase.end());
      current = r.nodes[static_cast<std::size_t>(r.sink_node)].pair.unpacked();
      reduced = true;
    }
    if (!reduced) {
      throw DomainError("reduction certificate: " + current.to_string() + " does not reach S_" +
                        std::to_string(m - 1) + " within S_" + std::to_string(bound));
    }
  }
  const Pair target(Permutation{0, 1}, Permutation{1, 0});
  if (!(current == target)) {
    throw DomainError("reduction certificate: chain ends at " + current.to_string());
  }
  return chain;
}

}  // namespace klmu
