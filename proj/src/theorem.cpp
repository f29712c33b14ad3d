#include "cpa/theorem.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

namespace cpa {

namespace {

PrimePower require_p5(const GroupTable& t) {
  const auto pp = prime_power(t.order());
  if (!pp || pp->exponent != 5) {
    throw InputError("expected a group of order p^5, got order " + std::to_string(t.order()));
  }
  return *pp;
}

std::size_t ipow(std::size_t base, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void write_conditions(std::ostream& out, const TheoremVerdict& v) {
  const auto& c = v.conditions;
  out << "center_order: " << c.center_order << '\n';
  out << "center_lt_derived: " << yes_no(c.center_lt_derived) << '\n';
  out << "class: " << c.nilpotency_class << '\n';
  out << "rank: " << c.rank_d << '\n';
  out << "camina_on_nonderived: "
      << (c.camina_on_nonderived ? yes_no(*c.camina_on_nonderived) : "not-evaluated") << '\n';
}

[[noreturn]] void fail(const GroupTable& t, const TheoremVerdict& v, const std::string& why) {
  std::ostringstream dump;
  dump << why << '\n';
  write_conditions(dump, v);
  dump << "predicted: " << yes_no(v.predicted_nontrivial) << '\n';
  if (v.computed_outc_order) dump << "computed: " << *v.computed_outc_order << '\n';
  write_text(dump, structure_report(t));
  throw VerificationFailure(dump.str());
}

}  // namespace

TheoremVerdict evaluate_conditions(const GroupTable& t) {
  const PrimePower pp = require_p5(t);
  TheoremVerdict v;
  v.order = t.order();
  v.prime = pp.prime;
  const SubgroupSet z = center(t);
  const SubgroupSet d = derived_subgroup(t);
  auto& c = v.conditions;
  c.center_order = z.size();
  c.center_lt_derived = z.size() < d.size() && z.is_subset_of(d);
  c.nilpotency_class = nilpotency_class(t).value_or(0);
  c.rank_d = rank_d(t);
  if (!t.is_abelian()) {
    // Literal quantifier over every x outside G'.
    c.camina_gap = first_commutator_gap(t, z, d);
    c.camina_on_nonderived = !c.camina_gap.has_value();
  }
  const bool case_i = c.nilpotency_class == 3 && c.rank_d == 3;
  const bool case_ii = c.nilpotency_class == 4 && c.camina_on_nonderived.value_or(false);
  v.predicted_nontrivial = c.center_order == pp.prime && c.center_lt_derived && (case_i || case_ii);
  return v;
}

TheoremVerdict verify(const GroupTable& t, const SearchOptions& options) {
  require_p5(t);
  const auto gens = minimal_generating_tuple(t);
  return verify(t, gens, options);
}

TheoremVerdict verify(const GroupTable& t, std::span<const ElementIndex> gens,
                      const SearchOptions& options) {
  TheoremVerdict v = evaluate_conditions(t);
  const AutomorphismAnalysis a = analyze_automorphisms(t, gens, options);
  v.computed_outc_order = a.outc_order;
  v.agree = v.predicted_nontrivial == (a.outc_order > 1);
  if (!v.agree) fail(t, v, "prediction and enumeration disagree");
  if (!v.predicted_nontrivial) return v;

  const std::size_t p = v.prime;
  if (a.outc_order != p) fail(t, v, "flagged group with |Out_c| != p");
  const auto& c = v.conditions;
  if (c.nilpotency_class != 3 && c.nilpotency_class != 4) fail(t, v, "flagged group of class outside {3,4}");
  if (c.rank_d != 2 && c.rank_d != 3) fail(t, v, "flagged group with d(G) outside {2,3}");
  if (c.nilpotency_class == 3) {
    if (derived_subgroup(t).size() != p * p) fail(t, v, "flagged class-3 group with |G'| != p^2");
    if (!is_camina_pair(t, center(t)).holds) fail(t, v, "flagged class-3 group: (G, Z) not a Camina pair");
  }
  const auto z = central_automorphisms(t);
  for (const auto& alpha : z.set.elements()) {
    if (!a.class_preserving.contains(alpha.image)) fail(t, v, "flagged group: Aut_z not inside Aut_c");
  }
  v.witness = find_noninner_witness(t, a);
  if (!v.witness) fail(t, v, "flagged group without a non-inner witness");
  v.witness_text = describe_on_generators(t, gens, *v.witness);
  return v;
}

std::vector<std::string> ScanReport::flagged_names() const {
  std::vector<std::string> names;
  for (const auto& r : records)
    if (r.verdict.predicted_nontrivial) names.push_back(r.name);
  return names;
}

ScanReport scan_database(const std::vector<std::pair<std::string, GroupTable>>& groups,
                         std::size_t jobs) {
  ScanReport report;
  if (groups.empty()) return report;
  for (const auto& [name, t] : groups) {
    if (t.order() != groups.front().second.order()) {
      throw InputError("mixed orders in database: " + groups.front().first + " has order " +
                       std::to_string(groups.front().second.order()) + ", " + name + " has order " +
                       std::to_string(t.order()));
    }
  }
  require_p5(groups.front().second);

  report.records.resize(groups.size());
  std::vector<std::exception_ptr> errors(groups.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) {
      try {
        report.records[i].name = groups[i].first;
        report.records[i].verdict = verify(groups[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, groups.size()));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    for (std::size_t j = 0; j < jobs; ++j) workers.emplace_back(work);
    for (auto& w : workers) w.join();
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const VerificationFailure& e) {
      throw VerificationFailure(groups[i].first + ": " + e.what());
    }
  }
  return report;
}

void write_scan_report(std::ostream& out, const ScanReport& report) {
  std::size_t disagreements = 0;
  for (const auto& r : report.records) {
    const auto& v = r.verdict;
    out << "name: " << r.name << '\n';
    out << "order: " << v.order << '\n';
    out << "p: " << v.prime << '\n';
    write_conditions(out, v);
    out << "predicted: " << yes_no(v.predicted_nontrivial) << '\n';
    out << "computed: "
        << (v.computed_outc_order ? std::to_string(*v.computed_outc_order) : "not-computed") << '\n';
    if (!v.witness_text.empty()) out << "witness: " << v.witness_text << '\n';
    out << "agree: " << yes_no(v.agree) << "\n\n";
    if (v.computed_outc_order && !v.agree) ++disagreements;
  }
  const auto flagged = report.flagged_names();
  out << "summary: groups=" << report.records.size() << " flagged=" << flagged.size()
      << " disagreements=" << disagreements << " names=";
  for (std::size_t i = 0; i < flagged.size(); ++i) out << (i ? "," : "") << flagged[i];
  out << '\n';
}

std::string to_string(LargeCenterBranch b) {
  switch (b) {
    case LargeCenterBranch::abelian: return "abelian";
    case LargeCenterBranch::large_center: return "center of order >= p^3";
    case LargeCenterBranch::class2_cyclic_derived: return "class 2, cyclic G'";
    case LargeCenterBranch::class2_elementary_derived: return "class 2, Z = G' elementary of rank 2";
    case LargeCenterBranch::class3_small_derived: return "class 3, |G'| = p^2";
    case LargeCenterBranch::class3_small_class: return "class 3, |G'| = p^3, class of size p outside G'";
    case LargeCenterBranch::class3_large_classes: return "class 3, |G'| = p^3, classes outside G' of size p^2";
  }
  return "unknown";
}

namespace {

// Class 2 with Z = G' = Cp x Cp: some generator a has [a,b], [a,c] spanning
// G'; then [b,c] = [a,b]^m [a,c]^n and <b a^-n, c a^m, G'> is abelian of
// index p.
SubgroupSet class2_elementary_subgroup(const GroupTable& t, const SubgroupSet& derived,
                                       std::uint64_t p, std::string& detail) {
  const auto gens = minimal_generating_tuple(t);
  if (gens.size() != 3) throw VerificationFailure("class 2 with Z = G' of rank 2 but d(G) != 3");
  static constexpr int kRotations[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& r : kRotations) {
    const ElementIndex a = gens[r[0]], b = gens[r[1]], c = gens[r[2]];
    const ElementIndex ab = commutator(t, a, b), ac = commutator(t, a, c);
    if (closure(t, {ab, ac}).size() != derived.size()) continue;
    const ElementIndex bc = commutator(t, b, c);
    for (std::uint64_t m = 0; m < p; ++m) {
      for (std::uint64_t n = 0; n < p; ++n) {
        if (t(t.power(ab, static_cast<long long>(m)), t.power(ac, static_cast<long long>(n))) != bc) {
          continue;
        }
        const ElementIndex u = t(b, t.power(a, -static_cast<long long>(n)));
        const ElementIndex v = t(c, t.power(a, static_cast<long long>(m)));
        if (commutator(t, u, v) != kIdentity) throw VerificationFailure("[u,v] != 1");
        std::vector<ElementIndex> seed(derived.members().begin(), derived.members().end());
        seed.push_back(u);
        seed.push_back(v);
        SubgroupSet h = closure(t, seed);
        if (!h.is_subset_of(centralizer(t, h)) || h.size() * p != t.order()) {
          throw VerificationFailure("<u, v, G'> is not abelian of index p");
        }
        detail = "a=" + t.label(a) + " b=" + t.label(b) + " c=" + t.label(c) + " m=" +
                 std::to_string(m) + " n=" + std::to_string(n) + " u=" + t.label(u) +
                 " v=" + t.label(v);
        return h;
      }
    }
    throw VerificationFailure("[b,c] not in the span of [a,b], [a,c]");
  }
  throw VerificationFailure("no generator a with [a,b], [a,c] spanning G'");
}

}  // namespace

LargeCenterReport large_center_check(const GroupTable& t, std::span<const ElementIndex> gens,
                          const SearchOptions& options) {
  const PrimePower pp = require_p5(t);
  const std::uint64_t p = pp.prime;
  const SubgroupSet z = center(t);
  if (z.size() < p * p) {
    throw InputError("requires |Z(G)| >= p^2, got " + std::to_string(z.size()));
  }
  LargeCenterReport r;
  SearchOptions quiet = options;
  quiet.witnesses = false;
  const AutomorphismSet cp = enumerate_class_preserving(t, gens, quiet);
  const AutomorphismSet inn = inner_automorphisms(t);
  r.aut_c_order = cp.size();
  r.outc_order = cp.size() / inn.size();
  if (cp.size() != inn.size()) throw VerificationFailure("|Z(G)| >= p^2 but Out_c(G) != 1");

  auto require_abelian_maximal = [&] {
    r.abelian_maximal = find_abelian_subgroup_of_index_p(t);
    if (!r.abelian_maximal) throw VerificationFailure("no abelian subgroup of index p");
  };
  const SubgroupSet d = derived_subgroup(t);
  const std::size_t cls = nilpotency_class(t).value_or(0);
  if (t.is_abelian()) {
    r.branch = LargeCenterBranch::abelian;
  } else if (z.size() >= ipow(p, 3)) {
    r.branch = LargeCenterBranch::large_center;
    require_abelian_maximal();
  } else if (cls == 2) {
    if (std::any_of(d.members().begin(), d.members().end(),
                    [&](ElementIndex x) { return element_order(t, x) == d.size(); })) {
      r.branch = LargeCenterBranch::class2_cyclic_derived;
    } else {
      r.branch = LargeCenterBranch::class2_elementary_derived;
      if (!(d == z) || d.size() != p * p) throw VerificationFailure("expected Z = G' of order p^2");
      if (exponent(quotient(t, z).table) != p) throw VerificationFailure("exp(G/Z) != p");
      r.abelian_maximal = class2_elementary_subgroup(t, d, p, r.detail);
    }
  } else if (cls == 3 && d.size() == p * p) {
    r.branch = LargeCenterBranch::class3_small_derived;
    SubgroupSet c = centralizer(t, d);
    if (c.size() * p != t.order() || !c.is_subset_of(centralizer(t, c))) {
      throw VerificationFailure("C_G(G') is not abelian of index p");
    }
    r.abelian_maximal = std::move(c);
  } else if (cls == 3 && d.size() == ipow(p, 3)) {
    const ConjugacyClasses classes = conjugacy_classes(t);
    std::optional<ElementIndex> h;
    for (ElementIndex x = 0; x < t.order() && !h; ++x) {
      const std::size_t s = classes.size_of_class_of(x);
      if (d.contains(x)) continue;
      if (s == p) h = x;
      if (s != p && s != p * p) throw VerificationFailure("class outside G' of size other than p, p^2");
    }
    if (h) {
      r.branch = LargeCenterBranch::class3_small_class;
      SubgroupSet c = centralizer(t, *h);
      std::vector<ElementIndex> seed(d.members().begin(), d.members().end());
      seed.push_back(*h);
      if (!(c == closure(t, seed)) || !c.is_subset_of(centralizer(t, c))) {
        throw VerificationFailure("C_G(h) != <h, G'> or not abelian");
      }
      r.abelian_maximal = std::move(c);
      r.detail = "h=" + t.label(*h);
    } else {
      r.branch = LargeCenterBranch::class3_large_classes;
      if (cp.size() > ipow(p, 4)) throw VerificationFailure("|Aut_c| > p^4");
    }
  } else {
    throw VerificationFailure("|Z(G)| = p^2 with unexpected class " + std::to_string(cls) +
                              " and |G'| = " + std::to_string(d.size()));
  }
  return r;
}

}  // namespace cpa
