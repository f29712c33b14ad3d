#pragma once

// Decision conditions for Out_c(G) != 1 on groups of order p^5, checked
// against direct enumeration of class-preserving automorphisms.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpa/automorphisms.hpp"
#include "cpa/structure.hpp"

namespace cpa {

struct TheoremConditions {
  std::size_t center_order = 0;
  bool center_lt_derived = false;
  std::size_t nilpotency_class = 0;
  std::size_t rank_d = 0;
  /// Z(G) inside [x,G] for every x outside G'; nullopt for abelian G.
  std::optional<bool> camina_on_nonderived;
  /// First x outside G' whose commutator set misses part of Z(G).
  std::optional<CommutatorGap> camina_gap;
};

struct TheoremVerdict {
  std::size_t order = 0;
  std::uint64_t prime = 0;
  TheoremConditions conditions;
  bool predicted_nontrivial = false;
  std::optional<std::size_t> computed_outc_order;
  /// Meaningful once computed_outc_order is set.
  bool agree = false;
  std::optional<Automorphism> witness;
  /// Witness as generator images, empty without a witness.
  std::string witness_text;
};

/// Prediction only. Throws InputError unless the order is p^5.
TheoremVerdict evaluate_conditions(const GroupTable& t);

/// Prediction plus enumeration. Throws VerificationFailure with a full
/// structural dump when prediction and computation disagree, or when a
/// flagged group violates the expected shape (Out_c of order p, class 3
/// or 4, d in {2,3}, |G'| = p^2 and (G, Z) Camina in class 3, Aut_z inside
/// Aut_c).
TheoremVerdict verify(const GroupTable& t, std::span<const ElementIndex> gens,
                      const SearchOptions& options = {});
TheoremVerdict verify(const GroupTable& t, const SearchOptions& options = {});

struct ScanRecord {
  std::string name;
  TheoremVerdict verdict;
};

struct ScanReport {
  std::vector<ScanRecord> records;
  std::vector<std::string> flagged_names() const;
};

/// Verifies every group, in parallel across `jobs` workers; records keep
/// input order. Mixed orders are an InputError. The first disagreement (in
/// input order) is rethrown.
ScanReport scan_database(const std::vector<std::pair<std::string, GroupTable>>& groups,
                         std::size_t jobs = 1);

void write_scan_report(std::ostream& out, const ScanReport& report);

enum class LargeCenterBranch {
  abelian,
  large_center,                 ///< |Z| >= p^3
  class2_cyclic_derived,
  class2_elementary_derived,    ///< Z = G' = Cp x Cp
  class3_small_derived,         ///< |G'| = p^2
  class3_small_class,           ///< |G'| = p^3, some class of size p outside G'
  class3_large_classes,         ///< |G'| = p^3, all classes outside G' of size p^2
};

std::string to_string(LargeCenterBranch b);

struct LargeCenterReport {
  LargeCenterBranch branch = LargeCenterBranch::abelian;
  std::size_t outc_order = 0;
  /// Abelian subgroup of index p produced by the branch, when it makes one.
  std::optional<SubgroupSet> abelian_maximal;
  std::size_t aut_c_order = 0;
  std::string detail;
};

/// For |G| = p^5 with |Z(G)| >= p^2: asserts Out_c = 1 and replays the
/// mechanism of the applicable case. InputError when the hypothesis fails,
/// VerificationFailure when a step does not go through.
LargeCenterReport large_center_check(const GroupTable& t, std::span<const ElementIndex> gens,
                          const SearchOptions& options = {});

}  // namespace cpa
