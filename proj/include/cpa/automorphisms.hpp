#pragma once

// Automorphism sets of a finite group: inner, class-preserving and central
// automorphisms, the factorization Aut_c = (Aut_c n Aut_z) Inn when
// Out_c(G/Z(G)) = 1, and an unrestricted brute-force oracle.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpa/group_table.hpp"

namespace cpa {

enum class Tri : std::uint8_t { unchecked, yes, no };

struct Automorphism {
  std::vector<ElementIndex> image;
  Tri is_inner = Tri::unchecked;
  Tri is_class_preserving = Tri::unchecked;
  Tri is_central = Tri::unchecked;
  /// conjugators[x] = g_x with image[x] = g_x^-1 x g_x (smallest such g_x).
  std::optional<std::vector<ElementIndex>> conjugators;
};

/// Automorphisms deduplicated by image and sorted lexicographically.
class AutomorphismSet {
 public:
  AutomorphismSet() = default;
  explicit AutomorphismSet(std::vector<Automorphism> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Automorphism>& elements() const noexcept { return elements_; }
  bool contains(std::span<const ElementIndex> image) const;
  const Automorphism* find(std::span<const ElementIndex> image) const;

  /// Closure under composition and inverse, identity present. Sets the
  /// closure certificate on success.
  bool verify_group();
  bool closure_verified() const noexcept { return closure_verified_; }

 private:
  std::vector<Automorphism> elements_;
  bool closure_verified_ = false;
};

/// (outer o inner)(x) = outer(inner(x)).
std::vector<ElementIndex> compose(std::span<const ElementIndex> outer,
                                  std::span<const ElementIndex> inner);
std::vector<ElementIndex> invert(std::span<const ElementIndex> image);
std::vector<ElementIndex> identity_map(std::size_t n);

/// x -> g^-1 x g.
std::vector<ElementIndex> inner_map(const GroupTable& t, ElementIndex g);

/// Smallest conjugators g_x with image[x] = g_x^-1 x g_x, or nullopt when
/// some image[x] is not conjugate to x.
std::optional<std::vector<ElementIndex>> conjugator_witnesses(const GroupTable& t,
                                                              std::span<const ElementIndex> image);

/// image[a*b] = image[a]*image[b] for all a, b and image is a bijection.
bool is_automorphism(const GroupTable& t, std::span<const ElementIndex> image);
bool is_central_map(const GroupTable& t, const SubgroupSet& center,
                    std::span<const ElementIndex> image);

struct SearchOptions {
  /// Worker threads for the generator-image search.
  std::size_t jobs = 1;
  /// Attach conjugator witnesses to every class-preserving automorphism.
  bool witnesses = true;
};

AutomorphismSet inner_automorphisms(const GroupTable& t);

/// All class-preserving automorphisms. Backtracks over images of `gens`
/// drawn from their own conjugacy classes, pruning on inconsistent or
/// non-injective partial homomorphisms and on elements of the generated
/// subgroup leaving their class; every survivor is re-verified elementwise.
/// Throws InputError if `gens` does not generate.
AutomorphismSet enumerate_class_preserving(const GroupTable& t, std::span<const ElementIndex> gens,
                                           const SearchOptions& options = {});

/// Maps x -> x f(xG') over homomorphisms f: G/G' -> Z(G), kept when
/// bijective. Throws OverflowError when the homomorphism search would
/// exceed `max_candidates` generator-image tuples.
struct CentralAutomorphisms {
  AutomorphismSet set;
  /// |Hom(G/G', Z(G))|; equals set.size() for purely non-abelian G.
  std::size_t hom_count = 0;
};
CentralAutomorphisms central_automorphisms(const GroupTable& t,
                                           std::size_t max_candidates = std::size_t{1} << 22);

AutomorphismSet intersect(const AutomorphismSet& a, const AutomorphismSet& b);

/// Center of a group of automorphisms under composition.
AutomorphismSet center_of(const AutomorphismSet& group);

/// |Aut_c(G)| / |Inn(G)|; exact divisibility and Inn <= Aut_c asserted.
std::size_t outc_order(const GroupTable& t, std::span<const ElementIndex> gens,
                       const SearchOptions& options = {});

struct AutomorphismAnalysis {
  AutomorphismSet inner;
  AutomorphismSet class_preserving;
  /// Aut_c n Aut_z, filtered from class_preserving.
  AutomorphismSet class_preserving_central;
  std::size_t center_of_inner = 0;
  std::size_t outc_order = 0;
  /// One representative per coset of Inn in Aut_c, the identity first.
  std::vector<Automorphism> outer_representatives;
};

/// Aut_c, Inn and derived data, with Inn <= Aut_c and normality asserted.
AutomorphismAnalysis analyze_automorphisms(const GroupTable& t, std::span<const ElementIndex> gens,
                                           const SearchOptions& options = {});

struct CenterFactorizationReport {
  bool hypothesis_verified = false;  ///< Out_c(G/Z(G)) = 1
  std::size_t quotient_outc_order = 0;
  std::size_t aut_c = 0;
  std::size_t aut_c_central = 0;
  std::size_t inner = 0;
  std::size_t center_of_inner = 0;
  /// |Aut_c|, and |Aut_c n Aut_z| |Inn| / |Z(Inn)| when that is an integer.
  std::size_t lhs = 0;
  std::optional<std::size_t> rhs;
  bool formula_holds = false;
  /// Every alpha in Aut_c equals i_a o beta with beta in Aut_c n Aut_z.
  bool factorization_holds = false;
  bool holds = false;
};

CenterFactorizationReport center_factorization_check(const GroupTable& t, std::span<const ElementIndex> gens,
                            const SearchOptions& options = {});
CenterFactorizationReport center_factorization_check(const GroupTable& t, const AutomorphismAnalysis& analysis,
                            const SearchOptions& options = {});

/// First class-preserving automorphism (enumeration order) that is not
/// inner, with conjugator witnesses, or nullopt when Out_c(G) = 1. Non-
/// innerness is certified against all |G/Z(G)| inner maps.
std::optional<Automorphism> find_noninner_witness(const GroupTable& t,
                                                  std::span<const ElementIndex> gens,
                                                  const SearchOptions& options = {});
std::optional<Automorphism> find_noninner_witness(const GroupTable& t,
                                                  const AutomorphismAnalysis& analysis);

// Brute-force oracle ----------------------------------------------------------

/// Every automorphism, by trying all n^d generator-image tuples without
/// pruning and checking the homomorphism law on all n^2 pairs.
AutomorphismSet all_automorphisms_bruteforce(const GroupTable& t,
                                             std::span<const ElementIndex> gens);

/// Filter by searching a conjugator for every element.
AutomorphismSet filter_class_preserving_bruteforce(const GroupTable& t, const AutomorphismSet& all);

struct OracleComparison {
  std::size_t all_automorphisms = 0;
  std::size_t bruteforce_class_preserving = 0;
  std::size_t backtracking_class_preserving = 0;
  bool match = false;
};

OracleComparison compare_with_oracle(const GroupTable& t, std::span<const ElementIndex> gens,
                                     const AutomorphismSet& backtracking);

/// Generator images rendered through table labels, e.g. "x -> x^3, y -> y*x".
std::string describe_on_generators(const GroupTable& t, std::span<const ElementIndex> gens,
                                   const Automorphism& a);

}  // namespace cpa
