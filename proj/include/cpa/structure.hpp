#pragma once

// Structural invariants of a finite group: center, lower central series,
// Frattini subgroup, generator rank, commutator sets, Camina pairs and
// abelian subgroups of prime index.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpa/group_table.hpp"

namespace cpa {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
};

/// p and k with n = p^k, or nullopt when n is not a prime power (n = 1
/// included).
std::optional<PrimePower> prime_power(std::uint64_t n);

SubgroupSet center(const GroupTable& t);
SubgroupSet derived_subgroup(const GroupTable& t);

/// gamma_1 = G, gamma_{i+1} = <[gamma_i, G]>, up to and including the first
/// term equal to its predecessor or trivial.
std::vector<SubgroupSet> lower_central_series(const GroupTable& t);

/// Nilpotency class (0 for the trivial group), or nullopt when the lower
/// central series stabilizes above the trivial subgroup.
std::optional<std::size_t> nilpotency_class(const GroupTable& t);

/// Intersection of all maximal subgroups. For prime-power order these are
/// the kernels of the epimorphisms onto C_p; otherwise the subgroup lattice
/// is enumerated.
SubgroupSet frattini_via_maximal_subgroups(const GroupTable& t);

/// G' G^p; prime-power order only.
SubgroupSet frattini_via_powers(const GroupTable& t);

/// Frattini subgroup. Both routes run (and must agree) when order <= 512.
SubgroupSet frattini(const GroupTable& t);

std::vector<SubgroupSet> maximal_subgroups(const GroupTable& t);

/// Smallest cardinality of a generating set.
std::size_t rank_d(const GroupTable& t);

/// A generating tuple of size rank_d. For p-groups it is a Burnside basis
/// built greedily, preferring small conjugacy classes, then small indices.
std::vector<ElementIndex> minimal_generating_tuple(const GroupTable& t);

/// Least common multiple of element orders.
std::size_t exponent(const GroupTable& t);

/// [x,G] = { [x,g] : g in G }, sorted. Asserts |[x,G]| = |x^G|.
std::vector<ElementIndex> commutator_set(const GroupTable& t, ElementIndex x);

struct CommutatorGap {
  ElementIndex x;        ///< element whose commutator set misses ...
  ElementIndex missing;  ///< ... this member of the subgroup
};

/// First x outside `outside` (ascending) with h not contained in [x,G].
std::optional<CommutatorGap> first_commutator_gap(const GroupTable& t, const SubgroupSet& h,
                                                  const SubgroupSet& outside);

struct CaminaVerdict {
  bool holds = false;
  std::optional<CommutatorGap> witness;
};

/// (G, H) is a Camina pair iff H is contained in [x,G] for every x outside H.
/// H must be normal, proper and non-trivial (InputError otherwise).
CaminaVerdict is_camina_pair(const GroupTable& t, const SubgroupSet& h);

/// An abelian subgroup of index p (prime-power order required). For an
/// abelian group the whole group is returned. Breadth-first over abelian
/// subgroups containing Z(G), extending by centralizing elements in index
/// order, so the result is deterministic.
std::optional<SubgroupSet> find_abelian_subgroup_of_index_p(const GroupTable& t);

/// No non-trivial abelian direct factor. Decided by searching, for each
/// cyclic central subgroup A meeting G' trivially, for a retraction G -> A.
bool is_purely_nonabelian(const GroupTable& t);

struct StructureReport {
  std::size_t order = 0;
  std::optional<PrimePower> prime;
  bool abelian = false;
  SubgroupSet center;
  SubgroupSet derived;
  std::vector<SubgroupSet> lower_central;
  SubgroupSet frattini;
  std::optional<std::size_t> nilpotency_class;
  std::size_t rank_d = 0;
  std::size_t exponent = 0;
  /// Sizes of conjugacy classes, classes ordered by smallest member.
  std::vector<std::size_t> class_sizes;
};

StructureReport structure_report(const GroupTable& t);

/// Line-oriented "key: value" form with a fixed key order.
void write_machine(std::ostream& out, const StructureReport& r);
void write_text(std::ostream& out, const StructureReport& r);

/// Inverse of write_machine; subgroups are re-verified against `t`.
StructureReport read_machine(std::istream& in, const GroupTable& t);

bool operator==(const StructureReport& a, const StructureReport& b);

}  // namespace cpa
