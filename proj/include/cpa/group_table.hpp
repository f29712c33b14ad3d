#pragma once

// Finite groups as dense multiplication tables, plus the subgroup and
// quotient machinery the rest of the library is built on.
//
// Conventions used everywhere:
//   commutator  [a,b] = a^-1 b^-1 a b
//   conjugation x^g   = g^-1 x g

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpa/types.hpp"

namespace cpa {

/// Immutable finite group given by its full Cayley table.
///
/// Construction validates the group axioms: identity at index 0, every row
/// and column a permutation, inverses, and associativity (exhaustive for
/// order <= 512, 10^5 random triples above). Violations throw
/// StructuralError naming the failing element(s).
class GroupTable {
 public:
  /// `product` is row-major, product[i*n + j] = i*j.
  static GroupTable from_products(std::vector<ElementIndex> product, std::size_t n,
                                  std::vector<std::string> labels = {},
                                  std::size_t max_order = kDefaultMaxOrder);

  /// The cyclic group of order n, element k = g^k.
  static GroupTable cyclic(std::size_t n);

  /// Direct product; element (a, b) has index a * |rhs| + b.
  static GroupTable direct_product(const GroupTable& lhs, const GroupTable& rhs);

  std::size_t order() const noexcept { return n_; }

  /// Unchecked product lookup.
  ElementIndex operator()(ElementIndex a, ElementIndex b) const noexcept {
    return product_[static_cast<std::size_t>(a) * n_ + b];
  }
  ElementIndex inverse(ElementIndex x) const noexcept { return inverse_[x]; }

  std::span<const ElementIndex> products() const noexcept { return product_; }
  std::span<const ElementIndex> inverses() const noexcept { return inverse_; }
  std::span<const ElementIndex> row(ElementIndex a) const noexcept {
    return std::span<const ElementIndex>(product_).subspan(static_cast<std::size_t>(a) * n_, n_);
  }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Display name of x: its label, or "e<x>" when the table is unlabelled.
  std::string label(ElementIndex x) const;

  bool is_abelian() const;
  ElementIndex power(ElementIndex x, long long k) const;

  void check_index(ElementIndex x) const;

  friend bool operator==(const GroupTable& a, const GroupTable& b) {
    return a.n_ == b.n_ && a.product_ == b.product_;
  }

 private:
  GroupTable() = default;
  void validate();

  std::size_t n_ = 0;
  std::vector<ElementIndex> product_;
  std::vector<ElementIndex> inverse_;
  std::vector<std::string> labels_;
};

/// A subgroup, stored as the sorted list of its members.
class SubgroupSet {
 public:
  /// Throws StructuralError unless `members` is closed under product and
  /// inverse and contains the identity.
  static SubgroupSet verified(const GroupTable& t, std::vector<ElementIndex> members);

  static SubgroupSet whole(const GroupTable& t);
  static SubgroupSet trivial(const GroupTable& t);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t parent_order() const noexcept { return mask_.size(); }
  bool contains(ElementIndex x) const noexcept { return x < mask_.size() && mask_[x] != 0; }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == mask_.size(); }
  std::span<const ElementIndex> members() const noexcept { return members_; }

  bool is_subset_of(const SubgroupSet& other) const;

  friend bool operator==(const SubgroupSet& a, const SubgroupSet& b) {
    return a.members_ == b.members_ && a.mask_.size() == b.mask_.size();
  }

 private:
  friend SubgroupSet closure(const GroupTable& t, std::span<const ElementIndex> seed);
  SubgroupSet(std::vector<ElementIndex> sorted_members, std::size_t parent_order);

  std::vector<ElementIndex> members_;
  std::vector<unsigned char> mask_;
};

struct QuotientGroup {
  GroupTable table;
  /// projection[x] = index of the coset x N in `table`.
  std::vector<ElementIndex> projection;
  /// Smallest parent element of each coset.
  std::vector<ElementIndex> representatives;
};

struct ConjugacyClasses {
  /// Classes ordered by smallest member; each class sorted.
  std::vector<std::vector<ElementIndex>> classes;
  /// class_of[x] = position of x's class in `classes`.
  std::vector<std::size_t> class_of;

  std::size_t size_of_class_of(ElementIndex x) const { return classes[class_of[x]].size(); }
  ElementIndex representative(std::size_t c) const { return classes[c].front(); }
};

ElementIndex multiply(const GroupTable& t, ElementIndex a, ElementIndex b);
ElementIndex commutator(const GroupTable& t, ElementIndex a, ElementIndex b);
ElementIndex conjugate(const GroupTable& t, ElementIndex x, ElementIndex g);
std::size_t element_order(const GroupTable& t, ElementIndex x);

/// Smallest subgroup containing `seed`.
SubgroupSet closure(const GroupTable& t, std::span<const ElementIndex> seed);
SubgroupSet closure(const GroupTable& t, std::initializer_list<ElementIndex> seed);

/// Subgroup generated by the union of two subgroups.
SubgroupSet join(const GroupTable& t, const SubgroupSet& a, const SubgroupSet& b);
SubgroupSet intersection(const GroupTable& t, const SubgroupSet& a, const SubgroupSet& b);

SubgroupSet centralizer(const GroupTable& t, ElementIndex x);
/// Centralizer of a subset.
SubgroupSet centralizer(const GroupTable& t, const SubgroupSet& h);

bool is_normal(const GroupTable& t, const SubgroupSet& h);

/// Quotient by a normal subgroup; cosets ordered by smallest member, so the
/// identity coset is index 0. Throws StructuralError if `n` is not normal.
QuotientGroup quotient(const GroupTable& t, const SubgroupSet& n);

ConjugacyClasses conjugacy_classes(const GroupTable& t);

/// Generated subgroup is the whole group.
bool generates(const GroupTable& t, std::span<const ElementIndex> gens);

inline constexpr ElementIndex kUnset = std::numeric_limits<ElementIndex>::max();

/// Extends gens[i] -> images[i] to a homomorphism on <gens> by breadth-first
/// traversal of the Cayley graph. Entries outside <gens> stay kUnset.
/// Returns nullopt when some relation of the source is violated.
std::optional<std::vector<ElementIndex>> extend_on_subgroup(const GroupTable& source,
                                                            std::span<const ElementIndex> gens,
                                                            std::span<const ElementIndex> images,
                                                            const GroupTable& target);

/// Like extend_on_subgroup but requires <gens> = source (InputError otherwise).
std::optional<std::vector<ElementIndex>> extend_to_homomorphism(
    const GroupTable& source, std::span<const ElementIndex> gens,
    std::span<const ElementIndex> images, const GroupTable& target);

/// Relabel by breadth-first search from the identity over a greedily chosen
/// generating set (smallest index not yet generated). Labels travel along.
GroupTable canonical_form(const GroupTable& t);

// Multiplication-table file format:
//   line 1: n
//   n lines of n space-separated indices (row i holds i*j)
//   optional trailing "# <index> <label>" lines
GroupTable read_table(std::istream& in, std::size_t max_order = kDefaultMaxOrder);
void write_table(std::ostream& out, const GroupTable& t);
GroupTable load_table_file(const std::string& path, std::size_t max_order = kDefaultMaxOrder);

}  // namespace cpa
