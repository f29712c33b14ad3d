#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cpa/automorphisms.hpp"
#include "cpa/structure.hpp"
#include "support.hpp"

using namespace cpa;

namespace {

AutomorphismAnalysis analyze(const GroupTable& t) {
  return analyze_automorphisms(t, minimal_generating_tuple(t));
}

}  // namespace

TEST_CASE("map helpers") {
  const GroupTable t = support::dihedral8();
  const auto id = identity_map(8);
  CHECK(is_automorphism(t, id));
  for (ElementIndex g = 0; g < 8; ++g) {
    const auto m = inner_map(t, g);
    CHECK(is_automorphism(t, m));
    CHECK(compose(m, invert(m)) == id);
    const auto w = conjugator_witnesses(t, m);
    REQUIRE(w);
    for (ElementIndex x = 0; x < 8; ++x) CHECK(conjugate(t, x, (*w)[x]) == m[x]);
  }
  // Swapping elements of orders 4 and 2 breaks the homomorphism law.
  std::vector<ElementIndex> swap = id;
  ElementIndex four = 1, two = 1;
  while (element_order(t, four) != 4) ++four;
  while (element_order(t, two) != 2 || center(t).contains(two)) ++two;
  std::swap(swap[four], swap[two]);
  CHECK_FALSE(is_automorphism(t, swap));
  CHECK_FALSE(conjugator_witnesses(t, swap));
}

TEST_CASE("D8: every class-preserving automorphism is inner") {
  const AutomorphismAnalysis a = analyze(support::dihedral8());
  CHECK(a.inner.size() == 4);
  CHECK(a.class_preserving.size() == 4);
  CHECK(a.outc_order == 1);
  CHECK(a.center_of_inner == 4);
  REQUIRE(a.outer_representatives.size() == 1);
  CHECK(a.outer_representatives[0].is_inner == Tri::yes);
  for (const auto& alpha : a.class_preserving.elements()) {
    REQUIRE(alpha.conjugators);
    CHECK(alpha.is_class_preserving == Tri::yes);
  }
}

TEST_CASE("D8: order formula against brute-forced sets") {
  const GroupTable t = support::dihedral8();
  const auto gens = minimal_generating_tuple(t);
  // Independent oracle: every automorphism, filtered by direct search.
  const AutomorphismSet all = all_automorphisms_bruteforce(t, gens);
  REQUIRE(all.size() == 8);
  const AutomorphismSet cp = filter_class_preserving_bruteforce(t, all);
  std::size_t cp_central = 0;
  for (const auto& a : cp.elements()) {
    bool central = true;
    for (ElementIndex x = 0; x < 8; ++x) {
      const ElementIndex d = t(t.inverse(x), a.image[x]);
      for (ElementIndex y = 0; y < 8; ++y) central &= t(d, y) == t(y, d);
    }
    cp_central += central;
  }
  std::set<std::vector<ElementIndex>> inner;
  for (ElementIndex g = 0; g < 8; ++g) {
    std::vector<ElementIndex> m(8);
    for (ElementIndex x = 0; x < 8; ++x) m[x] = t(t(t.inverse(g), x), g);
    inner.insert(m);
  }
  // Inn(D8) is a Klein four-group, so it is its own center; class 2 makes
  // every inner automorphism central.
  CHECK(cp.size() == 4);
  CHECK(cp_central == 4);
  CHECK(inner.size() == 4);

  const CenterFactorizationReport r = center_factorization_check(t, gens);
  CHECK(r.hypothesis_verified);
  CHECK(r.aut_c == cp.size());
  CHECK(r.aut_c_central == cp_central);
  CHECK(r.inner == inner.size());
  CHECK(r.center_of_inner == 4);
  REQUIRE(r.rhs);
  CHECK(*r.rhs == 4);
  CHECK(r.formula_holds);
  CHECK(r.factorization_holds);
}

TEST_CASE("Q8 central automorphisms") {
  const GroupTable t = support::quaternion8();
  const CentralAutomorphisms z = central_automorphisms(t);
  CHECK(z.set.size() == 4);
  CHECK(z.hom_count == 4);
  CHECK(outc_order(t, minimal_generating_tuple(t)) == 1);
}

TEST_CASE("maximal-class groups of order 32") {
  for (const std::string name : {"dihedral32", "semidihedral32", "quaternion32"}) {
    CAPTURE(name);
    const GroupTable t = support::bundled("maxclass32/" + name + ".pres").table;
    const AutomorphismAnalysis a = analyze(t);
    CHECK(a.inner.size() == 16);
    CHECK(a.class_preserving.size() == 16);
    CHECK(a.outc_order == 1);
    const CentralAutomorphisms z = central_automorphisms(t);
    CHECK(z.set.size() == 4);
    CHECK(z.hom_count == 4);
    // Only half of Aut_z is class-preserving: x -> x^9 is not conjugation.
    CHECK(a.class_preserving_central.size() == 2);
  }
}

TEST_CASE("groups with non-inner class-preserving automorphisms") {
  for (const std::string file : {"order32/sg32_43.tbl", "order32/sg32_44.tbl"}) {
    CAPTURE(file);
    const GroupTable t = support::sourced(file);
    const AutomorphismAnalysis a = analyze(t);
    CHECK(a.inner.size() == 16);
    CHECK(a.class_preserving.size() == 32);
    CHECK(a.outc_order == 2);
    const auto w = find_noninner_witness(t, a);
    REQUIRE(w);
    CHECK(w->is_inner == Tri::no);
    CHECK_FALSE(a.inner.contains(w->image));
    for (ElementIndex g = 0; g < t.order(); ++g) CHECK(inner_map(t, g) != w->image);
    REQUIRE(w->conjugators);
    for (ElementIndex x = 0; x < t.order(); ++x) CHECK(conjugate(t, x, (*w->conjugators)[x]) == w->image[x]);
  }
}

TEST_CASE("automorphism sets are groups") {
  const GroupTable t = support::sourced("order32/sg32_44.tbl");
  AutomorphismAnalysis a = analyze(t);
  CHECK(a.class_preserving.verify_group());
  CHECK(a.class_preserving.closure_verified());
  AutomorphismSet inn = inner_automorphisms(t);
  CHECK(inn.verify_group());
  CHECK(center_of(inn).size() == a.center_of_inner);
  CHECK(intersect(a.class_preserving, inn).size() == inn.size());
}

TEST_CASE("parallel search matches the sequential one") {
  const GroupTable t = support::bundled("order243/sg243_56.pres").table;
  const auto gens = minimal_generating_tuple(t);
  const AutomorphismSet one = enumerate_class_preserving(t, gens, {1, false});
  const AutomorphismSet four = enumerate_class_preserving(t, gens, {4, false});
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one.elements()[i].image == four.elements()[i].image);
}

TEST_CASE("search rejects a non-generating tuple") {
  const GroupTable t = support::dihedral8();
  CHECK_THROWS_AS(enumerate_class_preserving(t, std::vector<ElementIndex>{center(t).members()[1]}),
                  InputError);
}

TEST_CASE("central automorphism search space is capped") {
  const GroupTable t = GroupTable::direct_product(
      GroupTable::direct_product(GroupTable::cyclic(3), GroupTable::cyclic(3)),
      GroupTable::direct_product(GroupTable::cyclic(3), GroupTable::cyclic(9)));
  CHECK_THROWS_AS(central_automorphisms(t, 1000), OverflowError);
}

TEST_CASE("oracle agrees on small groups") {
  for (const auto& e : support::corpus_groups(16)) {
    CAPTURE(e.name);
    const auto gens = minimal_generating_tuple(e.table);
    const AutomorphismSet cp = enumerate_class_preserving(e.table, gens, {1, false});
    const OracleComparison c = compare_with_oracle(e.table, gens, cp);
    CHECK(c.match);
  }
  // Aut(D8) has order 8, Aut(Q8) order 24, Aut(C2^3) order 168.
  const GroupTable d8 = support::dihedral8();
  CHECK(all_automorphisms_bruteforce(d8, minimal_generating_tuple(d8)).size() == 8);
  const GroupTable q8 = support::quaternion8();
  CHECK(all_automorphisms_bruteforce(q8, minimal_generating_tuple(q8)).size() == 24);
  const GroupTable e8 = support::sourced("order8/sg8_05.tbl");
  CHECK(all_automorphisms_bruteforce(e8, minimal_generating_tuple(e8)).size() == 168);
}

TEST_CASE("oracle detects a corrupted enumeration") {
  const GroupTable t = support::dihedral8();
  const auto gens = minimal_generating_tuple(t);
  auto elements = enumerate_class_preserving(t, gens).elements();
  elements.pop_back();
  CHECK_FALSE(compare_with_oracle(t, gens, AutomorphismSet(elements)).match);
}

TEST_CASE("abelian groups have only the identity") {
  const GroupTable t = GroupTable::direct_product(GroupTable::cyclic(4), GroupTable::cyclic(2));
  const AutomorphismAnalysis a = analyze(t);
  CHECK(a.class_preserving.size() == 1);
  CHECK(a.inner.size() == 1);
}

TEST_CASE("generator images render through labels") {
  const PresentedGroup g = support::bundled("dihedral8.pres");
  const auto gens = g.generator_images;
  Automorphism a;
  a.image = inner_map(g.table, gens[1]);
  CHECK(describe_on_generators(g.table, gens, a) == "r -> " + g.table.label(g.table.inverse(gens[0])) + ", s -> s");
}
