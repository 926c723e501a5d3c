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

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "klmu/census.hpp"
#include "klmu/classes.hpp"
#include "klmu/error.hpp"
#include "klmu/kl.hpp"
#include "klmu/moves.hpp"
#include "klmu/picture.hpp"
#include "klmu/store.hpp"

namespace klmu::cli {
namespace {

struct Globals {
  std::string db_path;
  int threads = 1;
  int max_n = 10;
  std::size_t seed_limit = 0;
};

void require_size(int n, const Globals& g) {
  if (n < 1) throw DomainError("n must be positive");
  if (n > g.max_n) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds --max-n " + std::to_string(g.max_n));
  }
}

std::string mu_set_text(const std::vector<BigInt>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].str();
  return out + "}";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kazhdan-Lusztig polynomials and mu-coefficients for symmetric groups", "klmu"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  if (const char* env = std::getenv("KLMU_DB")) g.db_path = env;
  app.add_option("--db", g.db_path, "Polynomial database file (default: $KLMU_DB)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--max-n", g.max_n, "Largest n accepted by enumeration commands")->check(CLI::Range(1, 16));
  app.add_option("--seed-limit", g.seed_limit, "Use at most this many seeds in `classes` (0 = all)");

  std::string xs, ws;
  int n = 0;
  auto add_pair_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("X", xs, "Lower permutation, compact or comma form")->required();
    sub->add_option("W", ws, "Upper permutation")->required();
    return sub;
  };
  auto add_size_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("N", n, "Group size")->required();
    return sub;
  };

  auto* poly_cmd = add_pair_command("poly", "Print P_{x,w} as a coefficient list");
  auto* mu_cmd = add_pair_command("mu", "Print mu(x,w)");
  auto* bracket_cmd = add_pair_command("mubracket", "Print mu[x,w], which ignores orientation");
  auto* normalize_cmd = add_pair_command("normalize", "Extremalize and compress until stable");
  auto* picture_cmd = add_pair_command("picture", "Render the Bruhat picture");
  std::string format = "ascii";
  picture_cmd->add_option("--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));

  auto* extremal_cmd = add_size_command("extremal", "List extremal pairs x < w");
  bool count_only = false;
  extremal_cmd->add_flag("--count", count_only, "Print only the number of pairs");
  auto* census_cmd = add_size_command("census", "Table of extremal-pair statistics");
  auto* muvalues_cmd = add_size_command("muvalues", "The set M(n) of nonzero mu values");
  auto* irreducible_cmd = add_size_command("irreducible", "List irreducible odd extremal pairs");
  auto* classes_cmd = add_size_command("classes", "Partition the minimal pairs into classes");
  int k = 0;
  std::size_t node_limit = kDefaultNodeLimit;
  bool no_symmetries = false;
  bool certificate = false;
  classes_cmd->add_option("--k", k, "Decompression allowance")->required()->check(CLI::Range(0, 8));
  classes_cmd->add_option("--node-limit", node_limit, "Per-seed search budget");
  classes_cmd->add_flag("--no-symmetries", no_symmetries, "Keep symmetric pairs apart");
  classes_cmd->add_flag("--certificate", certificate, "Print a move chain to (01,10) for each sink class");
  auto* crosshatch_cmd = add_size_command("crosshatch", "Count crosshatch extremal pairs");

  auto* db_cmd = app.add_subcommand("db", "Database maintenance");
  db_cmd->require_subcommand(1);
  std::string db_arg;
  auto* export_cmd = db_cmd->add_subcommand("export", "Print the records of a database file as text");
  export_cmd->add_option("PATH", db_arg)->required();
  auto* import_cmd = db_cmd->add_subcommand("import", "Add text records from PATH to the --db database");
  import_cmd->add_option("PATH", db_arg)->required();
  auto* stats_cmd = db_cmd->add_subcommand("stats", "Summarize a database file");
  stats_cmd->add_option("PATH", db_arg)->required();

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    std::unique_ptr<Database> db;
    if (!g.db_path.empty()) {
      db = std::filesystem::exists(g.db_path) ? Database::load(g.db_path) : std::make_unique<Database>();
    }
    const std::size_t db_before = db ? db->size() : 0;
    KlCache cache;
    if (db) cache.attach(db.get());

    auto pair_arg = [&] { return Pair(parse_permutation(xs), parse_permutation(ws)); };

    if (poly_cmd->parsed()) {
      const Pair p = pair_arg();
      out << cache.poly(p.x, p.w).to_string() << "\n";
    } else if (mu_cmd->parsed()) {
      const Pair p = pair_arg();
      out << cache.mu(p.x, p.w) << "\n";
    } else if (bracket_cmd->parsed()) {
      const Pair p = pair_arg();
      out << cache.mu_bracket(p.x, p.w) << "\n";
    } else if (normalize_cmd->parsed()) {
      const Pair p = pair_arg();
      if (!bruhat_leq(p.x, p.w)) throw DomainError("normalize: " + p.to_string() + " has x not below w");
      out << normalize(p).to_string() << "\n";
    } else if (picture_cmd->parsed()) {
      out << render_picture(pair_arg(), parse_picture_format(format));
    } else if (extremal_cmd->parsed()) {
      require_size(n, g);
      ExtremalPairStream stream(n);
      Pair p(Permutation::identity(1), Permutation::identity(1));
      std::uint64_t count = 0;
      while (stream.next(p)) {
        ++count;
        if (!count_only) out << p.x.compact() << " " << p.w.compact() << "\n";
      }
      if (count_only) out << count << "\n";
    } else if (census_cmd->parsed()) {
      require_size(n, g);
      CensusOptions options;
      options.threads = g.threads;
      out << census_stats(n, cache, options).to_text();
    } else if (muvalues_cmd->parsed()) {
      require_size(n, g);
      out << mu_set_text(mu_values(n, cache)) << "\n";
    } else if (irreducible_cmd->parsed()) {
      require_size(n, g);
      IrreducibilityChecker checker;
      const auto pairs = irreducible_pairs(n, checker);
      for (const Pair& p : pairs) out << p.x.compact() << " " << p.w.compact() << " mu " << cache.mu(p.x, p.w) << "\n";
      out << "count " << pairs.size() << "\n";
    } else if (classes_cmd->parsed()) {
      require_size(n, g);
      if (n + k > 16) throw DomainError("classes: n + k must not exceed 16");
      std::vector<Pair> seeds = minimal_pairs(n, cache, node_limit);
      if (g.seed_limit != 0 && seeds.size() > g.seed_limit) seeds.resize(g.seed_limit);
      ClassOptions options;
      options.k = k;
      options.node_limit = node_limit;
      options.use_symmetries = !no_symmetries;
      options.threads = g.threads;
      const ClassReport report = k_class_partition(seeds, n, options, cache);
      out << report.to_text();
      if (certificate) {
        for (const auto& cls : report.classes) {
          if (!cls.sink) continue;
          const Pair& seed = report.seeds[cls.seeds.front()];
          out << "\ncertificate " << seed.to_string() << "\n"
              << write_move_log(reduction_certificate(seed, k, node_limit));
        }
      }
    } else if (crosshatch_cmd->parsed()) {
      require_size(n, g);
      out << crosshatch_census(n) << "\n";
    } else if (export_cmd->parsed()) {
      out << Database::load(db_arg)->export_text();
    } else if (import_cmd->parsed()) {
      if (!db) throw DomainError("db import needs --db or KLMU_DB");
      out << "imported " << db->import_text(read_file(db_arg)) << "\n";
    } else if (stats_cmd->parsed()) {
      const auto loaded = Database::load(db_arg);
      std::map<int, std::size_t> by_size;
      for (const auto& [key, poly] : loaded->records()) ++by_size[key.n];
      out << "records " << loaded->size() << "\n";
      out << "bytes " << std::filesystem::file_size(db_arg) << "\n";
      for (const auto& [size, count] : by_size) out << "n " << size << " " << count << "\n";
    }

    if (db && db->size() != db_before) db->save(g.db_path);
    return kExitOk;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace klmu::cli
