#include "cpa/automorphisms.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "cpa/kernels.hpp"
#include "cpa/structure.hpp"

namespace cpa {

namespace {

bool image_less(const Automorphism& a, const Automorphism& b) { return a.image < b.image; }

// conj[g*n + x] = x^g, computed once per search.
class ConjugationTable {
 public:
  explicit ConjugationTable(const GroupTable& t) : n_(t.order()), data_(n_ * n_) {
    for (ElementIndex g = 0; g < n_; ++g) {
      kernels::conjugate_all(t.products(), n_, g, t.inverse(g),
                             std::span<ElementIndex>(data_).subspan(g * n_, n_));
    }
  }

  std::optional<std::vector<ElementIndex>> witnesses(std::span<const ElementIndex> image) const {
    std::vector<ElementIndex> w(n_, kUnset);
    std::size_t unresolved = n_;
    for (std::size_t g = 0; g < n_ && unresolved != 0; ++g) {
      const ElementIndex* row = data_.data() + g * n_;
      for (std::size_t x = 0; x < n_; ++x) {
        if (w[x] == kUnset && row[x] == image[x]) {
          w[x] = static_cast<ElementIndex>(g);
          --unresolved;
        }
      }
    }
    if (unresolved != 0) return std::nullopt;
    return w;
  }

 private:
  std::size_t n_;
  std::vector<ElementIndex> data_;
};

}  // namespace

// AutomorphismSet -------------------------------------------------------------

AutomorphismSet::AutomorphismSet(std::vector<Automorphism> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), image_less);
  elements_.erase(std::unique(elements_.begin(), elements_.end(),
                              [](const Automorphism& a, const Automorphism& b) {
                                return a.image == b.image;
                              }),
                  elements_.end());
}

const Automorphism* AutomorphismSet::find(std::span<const ElementIndex> image) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), image,
                                   [](const Automorphism& a, std::span<const ElementIndex> key) {
                                     return std::lexicographical_compare(
                                         a.image.begin(), a.image.end(), key.begin(), key.end());
                                   });
  if (it == elements_.end() || !std::equal(it->image.begin(), it->image.end(), image.begin(),
                                           image.end())) {
    return nullptr;
  }
  return &*it;
}

bool AutomorphismSet::contains(std::span<const ElementIndex> image) const {
  return find(image) != nullptr;
}

bool AutomorphismSet::verify_group() {
  if (elements_.empty()) return false;
  const std::size_t n = elements_.front().image.size();
  if (!contains(identity_map(n))) return false;
  std::vector<ElementIndex> product(n);
  for (const auto& a : elements_) {
    if (!contains(invert(a.image))) return false;
    for (const auto& b : elements_) {
      kernels::compose(a.image, b.image, product);
      if (!contains(product)) return false;
    }
  }
  closure_verified_ = true;
  return true;
}

// Maps -----------------------------------------------------------------------

std::vector<ElementIndex> compose(std::span<const ElementIndex> outer,
                                  std::span<const ElementIndex> inner) {
  std::vector<ElementIndex> out(inner.size());
  kernels::compose(outer, inner, out);
  return out;
}

std::vector<ElementIndex> invert(std::span<const ElementIndex> image) {
  std::vector<ElementIndex> out(image.size());
  for (std::size_t x = 0; x < image.size(); ++x) out[image[x]] = static_cast<ElementIndex>(x);
  return out;
}

std::vector<ElementIndex> identity_map(std::size_t n) {
  std::vector<ElementIndex> id(n);
  std::iota(id.begin(), id.end(), ElementIndex{0});
  return id;
}

std::vector<ElementIndex> inner_map(const GroupTable& t, ElementIndex g) {
  t.check_index(g);
  std::vector<ElementIndex> image(t.order());
  kernels::conjugate_all(t.products(), t.order(), g, t.inverse(g), image);
  return image;
}

std::optional<std::vector<ElementIndex>> conjugator_witnesses(const GroupTable& t,
                                                              std::span<const ElementIndex> image) {
  if (image.size() != t.order()) throw InputError("map has the wrong length");
  return ConjugationTable(t).witnesses(image);
}

bool is_automorphism(const GroupTable& t, std::span<const ElementIndex> image) {
  const std::size_t n = t.order();
  if (image.size() != n || image[kIdentity] != kIdentity) return false;
  std::vector<unsigned char> hit(n, 0);
  for (auto y : image) {
    if (y >= n || hit[y]++) return false;
  }
  for (ElementIndex a = 0; a < n; ++a) {
    if (!kernels::respects_row(t.products(), n, image, a)) return false;
  }
  return true;
}

bool is_central_map(const GroupTable& t, const SubgroupSet& center,
                    std::span<const ElementIndex> image) {
  std::vector<ElementIndex> shift(t.order());
  kernels::displacement(t.products(), t.inverses(), image, shift);
  return std::all_of(shift.begin(), shift.end(), [&](ElementIndex z) { return center.contains(z); });
}

// Inner ----------------------------------------------------------------------

AutomorphismSet inner_automorphisms(const GroupTable& t) {
  const SubgroupSet z = center(t);
  std::vector<Automorphism> maps;
  for (ElementIndex g = 0; g < t.order(); ++g) {
    Automorphism a;
    a.image = inner_map(t, g);
    a.is_inner = Tri::yes;
    a.is_class_preserving = Tri::yes;
    a.is_central = is_central_map(t, z, a.image) ? Tri::yes : Tri::no;
    a.conjugators = std::vector<ElementIndex>(t.order(), g);
    maps.push_back(std::move(a));
  }
  // Keep the smallest g per map as its conjugator.
  std::stable_sort(maps.begin(), maps.end(), image_less);
  return AutomorphismSet(std::move(maps));
}

// Class-preserving search ------------------------------------------------------

namespace {

class ClassPreservingSearch {
 public:
  ClassPreservingSearch(const GroupTable& t, std::span<const ElementIndex> gens,
                        const ConjugacyClasses& classes)
      : t_(t), gens_(gens.begin(), gens.end()), classes_(classes) {}

  /// Images found with gens[0] mapped to one of `first_choices`.
  std::vector<std::vector<ElementIndex>> run(const std::vector<ElementIndex>& first_choices) {
    std::vector<std::vector<ElementIndex>> found;
    std::vector<ElementIndex> images(gens_.size());
    for (auto c : first_choices) {
      images[0] = c;
      descend(0, images, found);
    }
    return found;
  }

  const std::vector<ElementIndex>& candidates(std::size_t level) const {
    return classes_.classes[classes_.class_of[gens_[level]]];
  }

 private:
  void descend(std::size_t level, std::vector<ElementIndex>& images,
               std::vector<std::vector<ElementIndex>>& found) {
    const std::span<const ElementIndex> gens(gens_.data(), level + 1);
    const std::span<const ElementIndex> imgs(images.data(), level + 1);
    auto partial = extend_on_subgroup(t_, gens, imgs, t_);
    if (!partial) return;
    for (ElementIndex x = 0; x < t_.order(); ++x) {
      const ElementIndex y = (*partial)[x];
      if (y == kUnset) continue;
      if (y == kIdentity && x != kIdentity) return;  // not injective
      if (classes_.class_of[y] != classes_.class_of[x]) return;
    }
    if (level + 1 == gens_.size()) {
      found.push_back(std::move(*partial));
      return;
    }
    for (auto c : candidates(level + 1)) {
      images[level + 1] = c;
      descend(level + 1, images, found);
    }
  }

  const GroupTable& t_;
  std::vector<ElementIndex> gens_;
  const ConjugacyClasses& classes_;
};

}  // namespace

AutomorphismSet enumerate_class_preserving(const GroupTable& t, std::span<const ElementIndex> gens,
                                           const SearchOptions& options) {
  for (auto g : gens) t.check_index(g);
  if (!generates(t, gens)) throw InputError("generating tuple does not generate the group");
  if (gens.empty()) {
    Automorphism id;
    id.image = identity_map(t.order());
    id.is_inner = id.is_class_preserving = id.is_central = Tri::yes;
    id.conjugators = std::vector<ElementIndex>(t.order(), kIdentity);
    return AutomorphismSet({std::move(id)});
  }
  const ConjugacyClasses classes = conjugacy_classes(t);
  ClassPreservingSearch search(t, gens, classes);

  const auto& first = search.candidates(0);
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, first.size()));
  std::vector<std::vector<ElementIndex>> shares(jobs);
  for (std::size_t i = 0; i < first.size(); ++i) shares[i % jobs].push_back(first[i]);
  std::vector<std::vector<std::vector<ElementIndex>>> results(jobs);
  if (jobs == 1) {
    results[0] = search.run(shares[0]);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] { results[j] = search.run(shares[j]); });
    }
    for (auto& w : workers) w.join();
  }

  const SubgroupSet z = center(t);
  std::optional<ConjugationTable> conj;
  if (options.witnesses) conj.emplace(t);
  std::vector<Automorphism> maps;
  for (auto& part : results) {
    for (auto& image : part) {
      // The generator restriction is only necessary; certify every element.
      if (!is_automorphism(t, image)) {
        throw VerificationFailure("search produced a map that is not an automorphism");
      }
      for (ElementIndex x = 0; x < t.order(); ++x) {
        if (classes.class_of[image[x]] != classes.class_of[x]) {
          throw VerificationFailure("search produced a map that is not class-preserving");
        }
      }
      Automorphism a;
      a.is_class_preserving = Tri::yes;
      a.is_central = is_central_map(t, z, image) ? Tri::yes : Tri::no;
      if (conj) {
        a.conjugators = conj->witnesses(image);
        if (!a.conjugators) throw VerificationFailure("missing conjugator witness");
      }
      a.image = std::move(image);
      maps.push_back(std::move(a));
    }
  }
  return AutomorphismSet(std::move(maps));
}

// Central --------------------------------------------------------------------

CentralAutomorphisms central_automorphisms(const GroupTable& t, std::size_t max_candidates) {
  const SubgroupSet z = center(t);
  const QuotientGroup ab = quotient(t, derived_subgroup(t));
  const auto gens = minimal_generating_tuple(ab.table);

  std::vector<std::vector<ElementIndex>> choices(gens.size());
  double space = 1.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::size_t order = element_order(ab.table, gens[i]);
    for (auto c : z.members())
      if (order % element_order(t, c) == 0) choices[i].push_back(c);
    space *= static_cast<double>(choices[i].size());
  }
  if (space > static_cast<double>(max_candidates)) {
    throw OverflowError("central automorphism search space too large (" +
                        std::to_string(static_cast<unsigned long long>(space)) + " tuples)");
  }

  CentralAutomorphisms out;
  std::vector<Automorphism> maps;
  std::vector<ElementIndex> images(gens.size());
  // Backtrack with partial extension so relations prune early.
  auto descend = [&](auto&& self, std::size_t level) -> void {
    if (level == gens.size()) {
      const auto f = extend_to_homomorphism(ab.table, gens, images, t);
      if (!f) return;
      ++out.hom_count;
      std::vector<ElementIndex> image(t.order());
      for (ElementIndex x = 0; x < t.order(); ++x) image[x] = t(x, (*f)[ab.projection[x]]);
      std::vector<unsigned char> hit(t.order(), 0);
      for (auto y : image)
        if (hit[y]++) return;
      Automorphism a;
      a.image = std::move(image);
      a.is_central = Tri::yes;
      maps.push_back(std::move(a));
      return;
    }
    for (auto c : choices[level]) {
      images[level] = c;
      const std::span<const ElementIndex> g(gens.data(), level + 1);
      const std::span<const ElementIndex> im(images.data(), level + 1);
      if (!extend_on_subgroup(ab.table, g, im, t)) continue;
      self(self, level + 1);
    }
  };
  descend(descend, 0);
  out.set = AutomorphismSet(std::move(maps));
  if (is_purely_nonabelian(t) && out.set.size() != out.hom_count) {
    throw VerificationFailure("purely non-abelian group with |Aut_z| != |Hom(G/G', Z(G))|");
  }
  return out;
}

AutomorphismSet intersect(const AutomorphismSet& a, const AutomorphismSet& b) {
  std::vector<Automorphism> common;
  for (const auto& x : a.elements())
    if (b.contains(x.image)) common.push_back(x);
  return AutomorphismSet(std::move(common));
}

AutomorphismSet center_of(const AutomorphismSet& group) {
  std::vector<Automorphism> central;
  if (group.size() == 0) return {};
  const std::size_t n = group.elements().front().image.size();
  std::vector<ElementIndex> ab(n), ba(n);
  for (const auto& a : group.elements()) {
    bool commutes = true;
    for (const auto& b : group.elements()) {
      kernels::compose(a.image, b.image, ab);
      kernels::compose(b.image, a.image, ba);
      if (ab != ba) {
        commutes = false;
        break;
      }
    }
    if (commutes) central.push_back(a);
  }
  return AutomorphismSet(std::move(central));
}

// Analysis -------------------------------------------------------------------

AutomorphismAnalysis analyze_automorphisms(const GroupTable& t, std::span<const ElementIndex> gens,
                                           const SearchOptions& options) {
  AutomorphismAnalysis r;
  r.inner = inner_automorphisms(t);
  r.class_preserving = enumerate_class_preserving(t, gens, options);
  for (const auto& i : r.inner.elements()) {
    if (!r.class_preserving.contains(i.image)) {
      throw VerificationFailure("inner automorphism missing from Aut_c");
    }
  }
  if (r.class_preserving.size() % r.inner.size() != 0) {
    throw VerificationFailure("|Inn| does not divide |Aut_c|");
  }
  // Inn is normal in Aut_c: alpha i_g alpha^-1 = i_alpha(g).
  for (const auto& a : r.class_preserving.elements()) {
    const auto a_inv = invert(a.image);
    for (const auto& i : r.inner.elements()) {
      if (!r.inner.contains(compose(a.image, compose(i.image, a_inv)))) {
        throw VerificationFailure("Inn is not normal in Aut_c");
      }
    }
  }
  std::vector<Automorphism> cz;
  for (const auto& a : r.class_preserving.elements())
    if (a.is_central == Tri::yes) cz.push_back(a);
  r.class_preserving_central = AutomorphismSet(std::move(cz));
  r.center_of_inner = center_of(r.inner).size();
  r.outc_order = r.class_preserving.size() / r.inner.size();

  std::vector<unsigned char> covered(r.class_preserving.size(), 0);
  const auto& cp = r.class_preserving.elements();
  for (std::size_t k = 0; k < cp.size(); ++k) {
    if (covered[k]) continue;
    Automorphism rep = cp[k];
    rep.is_inner = r.inner.contains(rep.image) ? Tri::yes : Tri::no;
    for (const auto& i : r.inner.elements()) {
      const auto image = compose(cp[k].image, i.image);
      const auto it = std::lower_bound(cp.begin(), cp.end(), image,
                                       [](const Automorphism& a, const std::vector<ElementIndex>& key) {
                                         return a.image < key;
                                       });
      covered[static_cast<std::size_t>(it - cp.begin())] = 1;
    }
    r.outer_representatives.push_back(std::move(rep));
  }
  if (r.outer_representatives.size() != r.outc_order) {
    throw VerificationFailure("coset count of Inn in Aut_c disagrees with |Aut_c|/|Inn|");
  }
  return r;
}

std::size_t outc_order(const GroupTable& t, std::span<const ElementIndex> gens,
                       const SearchOptions& options) {
  SearchOptions quiet = options;
  quiet.witnesses = false;
  const auto cp = enumerate_class_preserving(t, gens, quiet);
  const auto inn = inner_automorphisms(t);
  for (const auto& i : inn.elements()) {
    if (!cp.contains(i.image)) throw VerificationFailure("inner automorphism missing from Aut_c");
  }
  if (cp.size() % inn.size() != 0) throw VerificationFailure("|Inn| does not divide |Aut_c|");
  return cp.size() / inn.size();
}

CenterFactorizationReport center_factorization_check(const GroupTable& t, std::span<const ElementIndex> gens,
                            const SearchOptions& options) {
  return center_factorization_check(t, analyze_automorphisms(t, gens, options), options);
}

CenterFactorizationReport center_factorization_check(const GroupTable& t, const AutomorphismAnalysis& analysis,
                            const SearchOptions& options) {
  CenterFactorizationReport r;
  const SubgroupSet z = center(t);
  const QuotientGroup q = quotient(t, z);
  if (q.table.order() == 1) {
    r.quotient_outc_order = 1;
  } else {
    SearchOptions quiet = options;
    quiet.witnesses = false;
    r.quotient_outc_order = outc_order(q.table, minimal_generating_tuple(q.table), quiet);
  }
  r.hypothesis_verified = r.quotient_outc_order == 1;
  r.aut_c = analysis.class_preserving.size();
  r.aut_c_central = analysis.class_preserving_central.size();
  r.inner = analysis.inner.size();
  r.center_of_inner = analysis.center_of_inner;
  r.lhs = r.aut_c;
  const std::size_t numerator = r.aut_c_central * r.inner;
  if (numerator % r.center_of_inner == 0) r.rhs = numerator / r.center_of_inner;
  r.formula_holds = r.rhs && *r.rhs == r.lhs;

  // alpha = i_a o beta with beta(x) = a alpha(x) a^-1 central and class-preserving.
  r.factorization_holds = true;
  for (const auto& alpha : analysis.class_preserving.elements()) {
    bool factored = false;
    for (ElementIndex a = 0; a < t.order() && !factored; ++a) {
      const ElementIndex a_inv = t.inverse(a);
      bool same_mod_center = true;
      for (ElementIndex x = 0; x < t.order() && same_mod_center; ++x) {
        same_mod_center =
            q.projection[alpha.image[x]] == q.projection[t(t(a_inv, x), a)];
      }
      if (!same_mod_center) continue;
      std::vector<ElementIndex> beta(t.order());
      for (ElementIndex x = 0; x < t.order(); ++x) beta[x] = t(t(a, alpha.image[x]), a_inv);
      factored = analysis.class_preserving_central.contains(beta) &&
                 compose(inner_map(t, a), beta) == alpha.image;
    }
    if (!factored) {
      r.factorization_holds = false;
      break;
    }
  }
  r.holds = r.formula_holds && r.factorization_holds;
  return r;
}

std::optional<Automorphism> find_noninner_witness(const GroupTable& t,
                                                  std::span<const ElementIndex> gens,
                                                  const SearchOptions& options) {
  return find_noninner_witness(t, analyze_automorphisms(t, gens, options));
}

std::optional<Automorphism> find_noninner_witness(const GroupTable& t,
                                                  const AutomorphismAnalysis& analysis) {
  for (const auto& a : analysis.class_preserving.elements()) {
    if (analysis.inner.contains(a.image)) continue;
    // Certify against every inner map, one per coset of the center.
    const QuotientGroup q = quotient(t, center(t));
    for (auto g : q.representatives) {
      if (inner_map(t, g) == a.image) {
        throw VerificationFailure("witness coincides with an inner automorphism");
      }
    }
    Automorphism w = a;
    w.is_inner = Tri::no;
    if (!w.conjugators) w.conjugators = conjugator_witnesses(t, w.image);
    if (!w.conjugators) throw VerificationFailure("witness is not class-preserving");
    return w;
  }
  return std::nullopt;
}

// Oracle ---------------------------------------------------------------------

AutomorphismSet all_automorphisms_bruteforce(const GroupTable& t,
                                             std::span<const ElementIndex> gens) {
  const std::size_t n = t.order();
  // Every element as a word: element = parent * gens[via].
  std::vector<ElementIndex> parent(n, kUnset), via(n, 0), order{kIdentity};
  std::vector<unsigned char> seen(n, 0);
  seen[kIdentity] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const ElementIndex y = t(order[i], gens[k]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = order[i];
        via[y] = static_cast<ElementIndex>(k);
        order.push_back(y);
      }
    }
  }
  if (order.size() != n) throw InputError("generating tuple does not generate the group");

  std::vector<Automorphism> found;
  std::vector<ElementIndex> images(gens.size(), 0);
  std::vector<ElementIndex> map(n);
  std::vector<unsigned char> hit(n);
  while (true) {
    map[kIdentity] = kIdentity;
    for (std::size_t i = 1; i < n; ++i) map[order[i]] = t(map[parent[order[i]]], images[via[order[i]]]);
    std::fill(hit.begin(), hit.end(), 0);
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = !hit[map[x]]++;
    for (ElementIndex a = 0; a < n && ok; ++a)
      for (ElementIndex b = 0; b < n && ok; ++b) ok = map[t(a, b)] == t(map[a], map[b]);
    if (ok) {
      Automorphism a;
      a.image = map;
      found.push_back(std::move(a));
    }
    std::size_t k = 0;
    while (k < images.size() && images[k] == n - 1) images[k++] = 0;
    if (k == images.size()) break;
    ++images[k];
  }
  return AutomorphismSet(std::move(found));
}

AutomorphismSet filter_class_preserving_bruteforce(const GroupTable& t,
                                                   const AutomorphismSet& all) {
  std::vector<Automorphism> kept;
  for (const auto& a : all.elements()) {
    bool preserving = true;
    for (ElementIndex x = 0; x < t.order() && preserving; ++x) {
      bool conjugate_found = false;
      for (ElementIndex g = 0; g < t.order() && !conjugate_found; ++g) {
        conjugate_found = t(t(t.inverse(g), x), g) == a.image[x];
      }
      preserving = conjugate_found;
    }
    if (preserving) {
      Automorphism c = a;
      c.is_class_preserving = Tri::yes;
      kept.push_back(std::move(c));
    }
  }
  return AutomorphismSet(std::move(kept));
}

OracleComparison compare_with_oracle(const GroupTable& t, std::span<const ElementIndex> gens,
                                     const AutomorphismSet& backtracking) {
  const AutomorphismSet all = all_automorphisms_bruteforce(t, gens);
  const AutomorphismSet filtered = filter_class_preserving_bruteforce(t, all);
  OracleComparison c;
  c.all_automorphisms = all.size();
  c.bruteforce_class_preserving = filtered.size();
  c.backtracking_class_preserving = backtracking.size();
  c.match = filtered.size() == backtracking.size() &&
            std::equal(filtered.elements().begin(), filtered.elements().end(),
                       backtracking.elements().begin(),
                       [](const Automorphism& a, const Automorphism& b) { return a.image == b.image; });
  return c;
}

std::string describe_on_generators(const GroupTable& t, std::span<const ElementIndex> gens,
                                   const Automorphism& a) {
  std::string out;
  for (auto g : gens) {
    if (!out.empty()) out += ", ";
    out += t.label(g) + " -> " + t.label(a.image[g]);
  }
  return out;
}

}  // namespace cpa
