// cpaut: class-preserving automorphisms of finite groups.
//
// Exit codes: 0 success, 1 input error, 2 verification failure,
// 3 resource overflow.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpa/automorphisms.hpp"
#include "cpa/database.hpp"
#include "cpa/kernels.hpp"
#include "cpa/structure.hpp"
#include "cpa/theorem.hpp"

namespace fs = std::filesystem;
using namespace cpa;

namespace {

struct Common {
  std::string format = "auto";
  std::size_t max_cosets = kDefaultMaxCosets;
  std::string report = "text";
  std::string out;
  std::size_t jobs = 1;
  std::string cache;
  bool witness = false;
};

LoadOptions load_options(const Common& c) {
  LoadOptions o;
  o.format = parse_input_format(c.format);
  o.max_cosets = c.max_cosets;
  return o;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::optional<AnalysisCache> open_cache(const Common& c) {
  if (!c.cache.empty()) return AnalysisCache(c.cache);
  if (auto dir = AnalysisCache::default_dir()) return AnalysisCache(*dir);
  return std::nullopt;
}

std::string size_or(const std::optional<std::size_t>& v, const char* fallback) {
  return v ? std::to_string(*v) : fallback;
}

void write_conjugators(std::ostream& out, const GroupTable& t, const Automorphism& a) {
  if (!a.conjugators) return;
  for (ElementIndex x = 0; x < t.order(); ++x) {
    out << "    " << t.label(x) << " -> " << t.label(a.image[x]) << " via "
        << t.label((*a.conjugators)[x]) << '\n';
  }
}

int cmd_analyze(const std::string& input, const Common& c) {
  const GroupEntry g = load_group(input, load_options(c));
  const GroupTable& t = g.table;
  auto cache = open_cache(c);
  const StructureReport s = cache ? cache->structure(t) : structure_report(t);

  const auto gens = minimal_generating_tuple(t);
  SearchOptions search;
  search.jobs = c.jobs;
  search.witnesses = c.witness;
  const AutomorphismAnalysis a = analyze_automorphisms(t, gens, search);
  std::optional<std::size_t> aut_z;
  try {
    aut_z = central_automorphisms(t).set.size();
  } catch (const OverflowError&) {
  }
  const CenterFactorizationReport lemma = center_factorization_check(t, a, search);
  std::optional<TheoremVerdict> verdict;
  if (s.prime && s.prime->exponent == 5) verdict = evaluate_conditions(t);

  Sink sink(c.out);
  std::ostream& out = sink.stream();
  if (c.report == "machine") {
    out << "name: " << g.name << '\n';
    out << "digest: " << table_digest(t) << '\n';
    write_machine(out, s);
    out << "inner_order: " << a.inner.size() << '\n';
    out << "aut_c_order: " << a.class_preserving.size() << '\n';
    out << "aut_z_order: " << size_or(aut_z, "not-computed") << '\n';
    out << "aut_c_central_order: " << a.class_preserving_central.size() << '\n';
    out << "center_of_inner_order: " << a.center_of_inner << '\n';
    out << "outc_order: " << a.outc_order << '\n';
    out << "quotient_outc_trivial: " << (lemma.hypothesis_verified ? "true" : "false") << '\n';
    out << "order_formula: " << (lemma.formula_holds ? "true" : "false") << '\n';
    out << "factorization: " << (lemma.factorization_holds ? "true" : "false") << '\n';
    if (verdict) out << "theorem_predicted: " << (verdict->predicted_nontrivial ? "true" : "false") << '\n';
  } else {
    out << g.name << " (" << g.source.string() << ")\n";
    write_text(out, s);
    out << "  |Inn(G)|              " << a.inner.size() << '\n';
    out << "  |Aut_c(G)|            " << a.class_preserving.size() << '\n';
    out << "  |Aut_z(G)|            " << size_or(aut_z, "not computed") << '\n';
    out << "  |Aut_c n Aut_z|       " << a.class_preserving_central.size() << '\n';
    out << "  |Z(Inn(G))|           " << a.center_of_inner << '\n';
    out << "  |Out_c(G)|            " << a.outc_order << '\n';
    out << "  Out_c(G/Z(G)) = 1     " << (lemma.hypothesis_verified ? "yes" : "no") << '\n';
    out << "  factorization         " << (lemma.holds ? "holds" : "fails") << '\n';
    if (verdict) {
      out << "  order p^5 prediction  Out_c "
          << (verdict->predicted_nontrivial ? "non-trivial" : "trivial") << '\n';
    }
  }
  if (c.witness) {
    out << (c.report == "machine" ? "" : "\n") << "outer representatives: "
        << a.outer_representatives.size() << '\n';
    for (std::size_t i = 0; i < a.outer_representatives.size(); ++i) {
      const auto& r = a.outer_representatives[i];
      out << "  [" << i << "] " << describe_on_generators(t, gens, r)
          << (r.is_inner == Tri::yes ? " (inner)" : "") << '\n';
      write_conjugators(out, t, r);
    }
  }
  if (cache && c.report != "machine") {
    std::cerr << "cache: " << cache->hits() << " hit, " << cache->misses() << " miss\n";
  }
  return 0;
}

int cmd_verify_theorem(const std::string& dir, const Common& c) {
  const GroupDatabase db = GroupDatabase::load_directory(dir, load_options(c));
  std::vector<std::pair<std::string, GroupTable>> groups;
  for (const auto& e : db.entries()) groups.emplace_back(e.name, e.table);
  const ScanReport report = scan_database(groups, c.jobs);
  Sink sink(c.out);
  write_scan_report(sink.stream(), report);
  return 0;
}

int cmd_oracle(const std::vector<std::string>& dirs, std::size_t max_order, bool inject_fault,
               const Common& c) {
  if (max_order > 16) {
    std::cerr << "warning: brute force over all n^d generator images grows quickly above order 16\n";
  }
  Sink sink(c.out);
  std::ostream& out = sink.stream();
  std::size_t checked = 0, failed = 0;
  for (const auto& d : dirs) {
    std::vector<GroupEntry> entries;
    if (fs::is_directory(d)) {
      const GroupDatabase db = GroupDatabase::load_directory(d, load_options(c));
      entries = db.entries();
    } else {
      entries.push_back(load_group(d, load_options(c)));
    }
    for (const auto& e : entries) {
      if (e.table.order() > max_order) continue;
      const auto gens = minimal_generating_tuple(e.table);
      SearchOptions search;
      search.jobs = c.jobs;
      search.witnesses = false;
      AutomorphismSet cp = enumerate_class_preserving(e.table, gens, search);
      if (inject_fault) {
        auto elements = cp.elements();
        elements.pop_back();
        cp = AutomorphismSet(std::move(elements));
      }
      const OracleComparison cmp = compare_with_oracle(e.table, gens, cp);
      ++checked;
      if (!cmp.match) ++failed;
      out << (cmp.match ? "PASS " : "FAIL ") << e.name << " order=" << e.table.order()
          << " aut=" << cmp.all_automorphisms << " aut_c_bruteforce=" << cmp.bruteforce_class_preserving
          << " aut_c_backtracking=" << cmp.backtracking_class_preserving << '\n';
    }
  }
  out << "oracle: " << checked << " groups, " << failed << " mismatches\n";
  return failed == 0 ? 0 : 2;
}

int cmd_table(const std::string& input, const Common& c) {
  const GroupEntry g = load_group(input, load_options(c));
  Sink sink(c.out);
  write_table(sink.stream(), g.table);
  return 0;
}

void add_common(CLI::App* cmd, Common& c, bool reports) {
  cmd->add_option("--format", c.format, "Input format")
      ->check(CLI::IsMember({"auto", "table", "presentation"}))
      ->capture_default_str();
  cmd->add_option("--max-cosets", c.max_cosets, "Coset table row limit")->capture_default_str();
  cmd->add_option("--out", c.out, "Write the report to a file");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  if (reports) {
    cmd->add_option("--report", c.report, "Report style")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    cmd->add_option("--cache", c.cache, "Structure cache directory (default $CPAUT_CACHE_DIR)");
    cmd->add_flag("--witness", c.witness, "Emit conjugator tables for outer representatives");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class-preserving automorphisms of finite groups"};
  app.require_subcommand(1);
  Common common;

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Structure and automorphism report for one group");
  analyze->add_option("input", input, "Table (.tbl) or presentation (.pres) file")->required();
  add_common(analyze, common, true);

  std::string dir;
  auto* verify_cmd =
      app.add_subcommand("verify-theorem", "Check the order-p^5 criterion on every group in a directory");
  verify_cmd->add_option("dir", dir, "Directory of .tbl/.pres files")->required();
  add_common(verify_cmd, common, false);

  std::vector<std::string> oracle_inputs;
  std::size_t max_order = 16;
  bool inject_fault = false;
  auto* oracle = app.add_subcommand("oracle", "Compare backtracking Aut_c with brute force");
  oracle->add_option("inputs", oracle_inputs, "Directories or files")->required();
  oracle->add_option("--max-order", max_order, "Skip groups above this order")->capture_default_str();
  oracle->add_flag("--inject-fault", inject_fault)->group("");
  add_common(oracle, common, false);

  auto* table = app.add_subcommand("table", "Print the canonical multiplication table");
  table->add_option("input", input, "Table or presentation file")->required();
  add_common(table, common, false);

  auto* kernels_cmd = app.add_subcommand("kernels", "Print the active kernel set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(input, common);
    if (verify_cmd->parsed()) return cmd_verify_theorem(dir, common);
    if (oracle->parsed()) return cmd_oracle(oracle_inputs, max_order, inject_fault, common);
    if (table->parsed()) return cmd_table(input, common);
    if (kernels_cmd->parsed()) {
      std::cout << kernels::active().name << '\n';
      return 0;
    }
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
