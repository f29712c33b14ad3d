#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>
#include <sstream>

#include "cpa/automorphisms.hpp"
#include "cpa/structure.hpp"
#include "support.hpp"

using namespace cpa;

namespace {

// Brute-force center, independent of the kernels.
std::size_t naive_center_size(const GroupTable& t) {
  std::size_t k = 0;
  for (ElementIndex x = 0; x < t.order(); ++x) {
    bool central = true;
    for (ElementIndex y = 0; y < t.order() && central; ++y) central = t(x, y) == t(y, x);
    k += central;
  }
  return k;
}

const std::vector<support::Perm> kD8Elements = [] {
  std::vector<support::Perm> e;
  support::dihedral8(&e);
  return e;
}();

}  // namespace

TEST_CASE("prime powers") {
  CHECK_FALSE(prime_power(1));
  CHECK_FALSE(prime_power(12));
  CHECK(prime_power(243)->prime == 3);
  CHECK(prime_power(243)->exponent == 5);
  CHECK(prime_power(7)->exponent == 1);
}

TEST_CASE("abelian groups") {
  const GroupTable t = GroupTable::direct_product(GroupTable::cyclic(4), GroupTable::cyclic(2));
  CHECK(center(t).is_whole());
  CHECK(derived_subgroup(t).is_trivial());
  CHECK(nilpotency_class(t) == 1u);
  CHECK(rank_d(t) == 2);
  CHECK(exponent(t) == 4);
  CHECK(frattini(t).size() == 2);
  CHECK(nilpotency_class(GroupTable::cyclic(1)) == 0u);
}

TEST_CASE("cyclic group of prime order") {
  const GroupTable t = GroupTable::cyclic(7);
  CHECK(frattini(t).is_trivial());
  CHECK(rank_d(t) == 1);
}

TEST_CASE("D8 structure") {
  const GroupTable t = support::dihedral8();
  const SubgroupSet z = center(t);
  CHECK(z.size() == 2);
  CHECK(derived_subgroup(t) == z);
  CHECK(frattini(t) == z);
  CHECK(nilpotency_class(t) == 2u);
  CHECK(rank_d(t) == 2);
  CHECK(exponent(t) == 4);
  const auto lcs = lower_central_series(t);
  REQUIRE(lcs.size() == 3);
  CHECK(lcs[0].is_whole());
  CHECK(lcs[2].is_trivial());
  const auto gens = minimal_generating_tuple(t);
  CHECK(gens.size() == 2);
  CHECK(generates(t, gens));
  CHECK(maximal_subgroups(t).size() == 3);
}

TEST_CASE("non-nilpotent groups") {
  const GroupTable s3 = support::permutation_group({{1, 0, 2}, {1, 2, 0}});
  CHECK(s3.order() == 6);
  CHECK_FALSE(nilpotency_class(s3));
  CHECK(frattini(s3).is_trivial());
  CHECK(rank_d(s3) == 2);
  const GroupTable a4 = support::bundled("alternating4.pres").table;
  CHECK_FALSE(nilpotency_class(a4));
  CHECK(rank_d(a4) == 2);
  CHECK(frattini(a4).is_trivial());
}

TEST_CASE("extraspecial groups of order 27") {
  for (const std::string file : {"heisenberg27.pres", "extraspecial27_exp9.pres"}) {
    CAPTURE(file);
    const GroupTable t = support::bundled(file).table;
    CHECK(center(t).size() == naive_center_size(t));
    CHECK(center(t).size() == 3);
    CHECK(derived_subgroup(t) == center(t));
    CHECK(frattini(t) == center(t));
  }
  CHECK(exponent(support::bundled("heisenberg27.pres").table) == 3);
  CHECK(exponent(support::bundled("extraspecial27_exp9.pres").table) == 9);
}

TEST_CASE("maximal-class groups of order 32") {
  for (const std::string name : {"dihedral32", "semidihedral32", "quaternion32"}) {
    CAPTURE(name);
    const PresentedGroup g = support::bundled("maxclass32/" + name + ".pres");
    const ElementIndex x = g.generator_images[0];
    const SubgroupSet z = center(g.table);
    CHECK(z == closure(g.table, {g.table.power(x, 8)}));
    CHECK(z.size() == 2);
    CHECK(nilpotency_class(g.table) == 4u);
    CHECK(rank_d(g.table) == 2);
  }
}

TEST_CASE("commutator sets") {
  const GroupTable t = support::dihedral8();
  for (ElementIndex x = 0; x < t.order(); ++x) {
    const auto set = commutator_set(t, x);
    CHECK(set.size() == conjugacy_classes(t).size_of_class_of(x));
    CHECK(std::is_sorted(set.begin(), set.end()));
  }
}

TEST_CASE("Camina pairs") {
  const GroupTable d8 = support::dihedral8();
  // Extraspecial groups: (G, Z) is a Camina pair.
  CHECK(is_camina_pair(d8, center(d8)).holds);
  CHECK(is_camina_pair(support::quaternion8(), center(support::quaternion8())).holds);
  const GroupTable h = support::bundled("heisenberg27.pres").table;
  CHECK(is_camina_pair(h, center(h)).holds);
  // C2 x D8: central elements outside Z(D8) have trivial commutator sets.
  const GroupTable c = support::bundled("c2xd8.pres").table;
  const SubgroupSet d = derived_subgroup(c);
  const CaminaVerdict v = is_camina_pair(c, d);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK_FALSE(d.contains(v.witness->x));
  const auto set = commutator_set(c, v.witness->x);
  CHECK(std::find(set.begin(), set.end(), v.witness->missing) == set.end());
  CHECK_THROWS_AS(is_camina_pair(d8, SubgroupSet::whole(d8)), InputError);
  CHECK_THROWS_AS(is_camina_pair(d8, SubgroupSet::trivial(d8)), InputError);
}

TEST_CASE("abelian subgroups of index p") {
  const GroupTable d8 = support::dihedral8();
  const auto a = find_abelian_subgroup_of_index_p(d8);
  REQUIRE(a);
  CHECK(a->size() == 4);
  CHECK(a->is_subset_of(centralizer(d8, *a)));
  // Maximal class 2-groups have the cyclic maximal subgroup <x>.
  const PresentedGroup q = support::bundled("maxclass32/quaternion32.pres");
  const auto b = find_abelian_subgroup_of_index_p(q.table);
  REQUIRE(b);
  CHECK(b->size() == 16);
  // Groups of order p^4 always have one.
  for (const auto& e : support::corpus_groups(81)) {
    if (e.table.order() != 16 && e.table.order() != 81) continue;
    CAPTURE(e.name);
    CHECK(find_abelian_subgroup_of_index_p(e.table));
  }
}

TEST_CASE("purely non-abelian") {
  CHECK(is_purely_nonabelian(support::quaternion8()));
  CHECK(is_purely_nonabelian(support::dihedral8()));
  CHECK_FALSE(is_purely_nonabelian(support::bundled("c2xd8.pres").table));
  CHECK_FALSE(is_purely_nonabelian(GroupTable::direct_product(support::quaternion8(), GroupTable::cyclic(4))));
  CHECK_FALSE(is_purely_nonabelian(GroupTable::cyclic(3)));
}

TEST_CASE("machine report round-trip") {
  const GroupTable t = support::bundled("maxclass32/semidihedral32.pres").table;
  const StructureReport r = structure_report(t);
  std::stringstream ss;
  write_machine(ss, r);
  CHECK(read_machine(ss, t) == r);
  std::istringstream broken("order: 32\n");
  CHECK_THROWS_AS(read_machine(broken, t), InputError);
}

// Invariants over every ingested group.
TEST_CASE("structural invariants on the corpus") {
  for (const auto& e : support::corpus_groups(kDefaultMaxOrder)) {
    CAPTURE(e.name);
    const GroupTable& t = e.table;
    const std::size_t n = t.order();
    const ConjugacyClasses cc = conjugacy_classes(t);
    std::size_t sum = 0;
    for (const auto& c : cc.classes) sum += c.size();
    CHECK(sum == n);
    const SubgroupSet z = center(t);
    std::size_t singletons = 0;
    for (const auto& c : cc.classes) singletons += c.size() == 1;
    CHECK(singletons == z.size());
    const bool small = n <= 81;
    for (ElementIndex x = 0; x < n; ++x) {
      const std::size_t cls = cc.size_of_class_of(x);
      if (x % (small ? 1 : 7) == 0) {
        CHECK(cls * centralizer(t, x).size() == n);
        CHECK(commutator_set(t, x).size() == cls);
      }
    }
    const auto lcs = lower_central_series(t);
    for (std::size_t i = 1; i < lcs.size(); ++i) CHECK(lcs[i].is_subset_of(lcs[i - 1]));
    if (lcs.size() > 1) CHECK(lcs[1] == derived_subgroup(t));
    const auto pp = prime_power(n);
    if (!pp) continue;
    CHECK(frattini_via_maximal_subgroups(t) == frattini_via_powers(t));
    std::size_t index = n / frattini(t).size(), d = 0;
    while (index > 1) index /= pp->prime, ++d;
    CHECK(rank_d(t) == d);
    CHECK(nilpotency_class(t) == lcs.size() - 1);
  }
}

TEST_CASE("sufficient conditions for Out_c = 1 on the corpus") {
  for (const auto& e : support::corpus_groups(kDefaultMaxOrder)) {
    const GroupTable& t = e.table;
    if (!prime_power(t.order())) continue;
    CAPTURE(e.name);
    const bool abelian_maximal = find_abelian_subgroup_of_index_p(t).has_value();
    const auto d = derived_subgroup(t);
    bool cyclic_derived = false;
    for (auto x : d.members()) cyclic_derived |= element_order(t, x) == d.size();
    const bool class2_cyclic = nilpotency_class(t) == 2u && cyclic_derived;
    if (!abelian_maximal && !class2_cyclic) continue;
    CHECK(outc_order(t, minimal_generating_tuple(t)) == 1);
  }
}
