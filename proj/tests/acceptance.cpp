// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cpa/automorphisms.hpp"
#include "cpa/structure.hpp"
#include "cpa/theorem.hpp"
#include "support.hpp"

using namespace cpa;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::pair<std::string, GroupTable>> directory(const std::string& relative) {
  std::vector<std::pair<std::string, GroupTable>> out;
  const GroupDatabase db = GroupDatabase::load_directory(support::corpus() / relative);
  for (const auto& e : db.entries()) out.emplace_back(e.name, e.table);
  return out;
}

std::size_t outc(const GroupTable& t) {
  SearchOptions o;
  o.witnesses = false;
  return outc_order(t, minimal_generating_tuple(t), o);
}

Outcome maximal_class_trio() {
  Outcome r;
  for (const std::string name : {"dihedral32", "semidihedral32", "quaternion32"}) {
    const auto start = Clock::now();
    const PresentedGroup g = support::bundled("maxclass32/" + name + ".pres");
    const GroupTable& t = g.table;
    const ElementIndex x = g.generator_images[0];
    const ElementIndex x8 = t.power(x, 8);
    const SubgroupSet z = center(t);
    r.expect(t.order() == 32, name + ": order " + std::to_string(t.order()));
    r.expect(z.size() == 2 && z.contains(x8), name + ": Z is not {1, x^8}");
    r.expect(nilpotency_class(t) == 4u, name + ": class is not 4");
    const TheoremVerdict v = verify(t, g.generator_images);
    r.expect(v.computed_outc_order == 1u, name + ": Out_c is not 1");
    r.expect(!v.predicted_nontrivial && v.agree, name + ": prediction disagrees");
    const auto set = commutator_set(t, x);
    r.expect(std::find(set.begin(), set.end(), x8) == set.end(), name + ": x^8 lies in [x,G]");
    r.expect(v.conditions.camina_gap && v.conditions.camina_gap->missing == x8,
             name + ": Camina witness is not x^8");
    const double s = seconds_since(start);
    r.expect(s < 5.0, name + ": took " + std::to_string(s) + " s");
  }
  return r;
}

Outcome baseline() {
  Outcome r;
  const auto start = Clock::now();
  std::vector<std::pair<std::string, GroupTable>> groups;
  for (const std::string file : {"dihedral8.pres", "quaternion8.pres", "heisenberg27.pres",
                                 "extraspecial27_exp9.pres"}) {
    groups.emplace_back(file, support::bundled(file).table);
  }
  for (const std::string dir : {"tables/order16", "presentations/order81"}) {
    for (auto& g : directory(dir)) groups.push_back(std::move(g));
  }
  std::size_t p4 = 0;
  for (const auto& [name, t] : groups) {
    p4 += t.order() == 16 || t.order() == 81;
    r.expect(outc(t) == 1, name + ": Out_c is not 1");
  }
  r.expect(p4 == 14 + 15, "expected 29 groups of order p^4, got " + std::to_string(p4));
  const double s = seconds_since(start);
  r.expect(s < 10.0, "took " + std::to_string(s) + " s");
  if (r.ok) r.note = std::to_string(groups.size()) + " groups";
  return r;
}

Outcome center_factorization() {
  Outcome r;
  const auto start = Clock::now();
  std::size_t n = 0;
  for (const auto& e : support::corpus_groups(243)) {
    const CenterFactorizationReport l = center_factorization_check(e.table, minimal_generating_tuple(e.table));
    r.expect(l.hypothesis_verified, e.name + ": Out_c(G/Z) is " + std::to_string(l.quotient_outc_order));
    r.expect(l.formula_holds, e.name + ": order formula fails");
    r.expect(l.factorization_holds, e.name + ": factorization fails");
    ++n;
  }
  const double s = seconds_since(start);
  r.expect(s < 60.0, "took " + std::to_string(s) + " s");
  if (r.ok) r.note = std::to_string(n) + " groups";
  return r;
}

Outcome biconditional() {
  Outcome r;
  std::size_t total = 0, disagreements = 0;
  for (const std::string dir : {"tables/order32", "presentations/order243", "presentations/maxclass32"}) {
    const auto groups = directory(dir);
    const ScanReport report = scan_database(groups, 4);
    total += report.records.size();
    for (const auto& rec : report.records) {
      if (!rec.verdict.agree) {
        ++disagreements;
        r.fail(rec.name + ": prediction disagrees with Out_c");
      }
    }
    if (dir == "tables/order32") {
      r.expect(groups.size() == 51, "order-32 database has " + std::to_string(groups.size()) + " groups");
      const auto flagged = report.flagged_names();
      r.expect(flagged.size() == 2, std::to_string(flagged.size()) + " groups flagged at order 32");
      for (const auto& rec : report.records) {
        if (rec.verdict.predicted_nontrivial)
          r.expect(rec.verdict.computed_outc_order == 2u, rec.name + ": Out_c is not 2");
      }
    }
  }
  if (r.ok) r.note = std::to_string(total) + " groups, " + std::to_string(disagreements) + " disagreements";
  return r;
}

Outcome oracle() {
  Outcome r;
  const auto start = Clock::now();
  std::size_t n = 0;
  for (const auto& e : support::corpus_groups(16)) {
    const auto gens = minimal_generating_tuple(e.table);
    SearchOptions o;
    o.witnesses = false;
    const AutomorphismSet cp = enumerate_class_preserving(e.table, gens, o);
    r.expect(compare_with_oracle(e.table, gens, cp).match, e.name + ": oracle mismatch");
    ++n;
  }
  const double s = seconds_since(start);
  r.expect(s < 30.0, "took " + std::to_string(s) + " s");
  if (r.ok) r.note = std::to_string(n) + " groups";
  return r;
}

Outcome invariants() {
  Outcome r;
  std::size_t n = 0, criteria = 0;
  for (const auto& e : support::corpus_groups(kDefaultMaxOrder)) {
    const GroupTable& t = e.table;
    const std::size_t order = t.order();
    const ConjugacyClasses cc = conjugacy_classes(t);
    std::size_t sum = 0, singletons = 0;
    for (const auto& c : cc.classes) {
      sum += c.size();
      singletons += c.size() == 1;
    }
    r.expect(sum == order && singletons == center(t).size(), e.name + ": class equation fails");
    for (ElementIndex x = 0; x < order; ++x) {
      const std::size_t cls = cc.size_of_class_of(x);
      r.expect(cls * centralizer(t, x).size() == order, e.name + ": orbit-stabilizer fails");
      r.expect(commutator_set(t, x).size() == cls, e.name + ": |[x,G]| != |x^G|");
    }
    ++n;
    if (!prime_power(order)) continue;
    r.expect(frattini_via_maximal_subgroups(t) == frattini_via_powers(t), e.name + ": Frattini mismatch");
    const bool abelian_maximal = find_abelian_subgroup_of_index_p(t).has_value();
    const SubgroupSet d = derived_subgroup(t);
    bool cyclic_derived = false;
    for (auto x : d.members()) cyclic_derived |= element_order(t, x) == d.size();
    if (abelian_maximal || (nilpotency_class(t) == 2u && cyclic_derived)) {
      ++criteria;
      r.expect(outc(t) == 1, e.name + ": sufficient condition holds but Out_c != 1");
    }
  }
  if (r.ok) r.note = std::to_string(n) + " groups, " + std::to_string(criteria) + " meet a sufficient condition";
  return r;
}

Outcome coset_enumeration() {
  Outcome r;
  auto order_of = [](const std::string& text) { return resolve(parse_presentation(text)).table.order(); };
  for (std::size_t n = 1; n <= 64; ++n) {
    r.expect(order_of("< a | a^" + std::to_string(n) + " >") == n, "C" + std::to_string(n));
  }
  for (std::size_t n = 2; n <= 16; ++n) {
    const std::string d = "< r, s | r^" + std::to_string(n) + ", s^2, s^-1*r*s = r^-1 >";
    r.expect(order_of(d) == 2 * n, "dihedral of order " + std::to_string(2 * n));
    if (n % 2 == 0 && n >= 4) {
      const std::string q = "< r, s | r^" + std::to_string(n) + ", s^2 = r^" + std::to_string(n / 2) +
                            ", s^-1*r*s = r^-1 >";
      r.expect(order_of(q) == 2 * n, "quaternion of order " + std::to_string(2 * n));
    }
  }
  const std::vector<std::pair<std::string, std::size_t>> named{
      {"klein4", 4},        {"s3", 6},            {"dihedral8", 8},      {"quaternion8", 8},
      {"dihedral12", 12},   {"dicyclic12", 12},   {"alternating4", 12},  {"dihedral16", 16},
      {"quaternion16", 16}, {"semidihedral16", 16}, {"modular16", 16},   {"c2xd8", 16},
      {"heisenberg27", 27}, {"extraspecial27_exp9", 27}, {"maxclass32/dihedral32", 32},
      {"maxclass32/semidihedral32", 32}, {"maxclass32/quaternion32", 32}};
  std::size_t files = 0;
  for (const auto& [name, n] : named) {
    r.expect(support::bundled(name + ".pres").table.order() == n, name);
    ++files;
  }
  for (const std::string dir : {"order27", "order81", "order243"}) {
    const std::size_t n = std::stoul(dir.substr(5));
    for (const auto& f : std::filesystem::directory_iterator(support::corpus() / "presentations" / dir)) {
      const Presentation p = load_presentation_file(f.path().string());
      const CosetTable a = todd_coxeter(p);
      const CosetTable b = todd_coxeter(p);
      r.expect(a.complete() && a.coset_count == n, f.path().filename().string());
      r.expect(a.entries == b.entries, f.path().filename().string() + ": coset tables differ");
      std::ostringstream sa, sb;
      write_table(sa, resolve(p).table);
      write_table(sb, resolve(p).table);
      r.expect(sa.str() == sb.str(), f.path().filename().string() + ": tables differ");
      ++files;
    }
  }
  if (r.ok) r.note = std::to_string(files) + " presentation files";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"maximal-class trio", maximal_class_trio},
      {"extraspecial and order p^4 groups", baseline},
      {"order formula and factorization", center_factorization},
      {"order p^5 biconditional", biconditional},
      {"brute-force oracle", oracle},
      {"structural invariants", invariants},
      {"coset enumeration", coset_enumeration},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.ok;
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), seconds_since(start), o.note.empty() ? "" : ": ",
                o.note.c_str());
  }
  return failures == 0 ? 0 : 1;
}
