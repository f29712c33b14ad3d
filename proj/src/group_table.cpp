#include "cpa/group_table.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "cpa/kernels.hpp"

namespace cpa {

namespace {

constexpr std::size_t kFullAssociativityLimit = 512;
constexpr std::size_t kAssociativitySamples = 100000;

std::string triple(ElementIndex a, ElementIndex b, ElementIndex c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

GroupTable GroupTable::from_products(std::vector<ElementIndex> product, std::size_t n,
                                     std::vector<std::string> labels, std::size_t max_order) {
  if (n == 0) throw InputError("group order must be positive");
  if (n > max_order) {
    throw OverflowError("group order " + std::to_string(n) + " exceeds table cap " +
                        std::to_string(max_order));
  }
  if (product.size() != n * n) {
    throw InputError("product table has " + std::to_string(product.size()) +
                     " entries, expected " + std::to_string(n * n));
  }
  if (!labels.empty() && labels.size() != n) {
    throw InputError("label count " + std::to_string(labels.size()) +
                     " does not match order " + std::to_string(n));
  }
  GroupTable t;
  t.n_ = n;
  t.product_ = std::move(product);
  t.labels_ = std::move(labels);
  t.validate();
  return t;
}

void GroupTable::validate() {
  const std::size_t n = n_;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (product_[k] >= n) {
      throw StructuralError("product " + std::to_string(k / n) + "*" + std::to_string(k % n) +
                            " = " + std::to_string(product_[k]) + " is out of range");
    }
  }
  for (ElementIndex i = 0; i < n; ++i) {
    if ((*this)(0, i) != i || (*this)(i, 0) != i) {
      throw StructuralError("index 0 is not a two-sided identity (fails at element " +
                            std::to_string(i) + ")");
    }
  }
  std::vector<unsigned char> seen(n);
  for (ElementIndex i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (ElementIndex j = 0; j < n; ++j) {
      if (seen[(*this)(i, j)]++) {
        throw StructuralError("row " + std::to_string(i) + " repeats element " +
                              std::to_string((*this)(i, j)));
      }
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (ElementIndex j = 0; j < n; ++j) {
      if (seen[(*this)(j, i)]++) {
        throw StructuralError("column " + std::to_string(i) + " repeats element " +
                              std::to_string((*this)(j, i)));
      }
    }
  }
  inverse_.assign(n, 0);
  for (ElementIndex i = 0; i < n; ++i) {
    auto r = row(i);
    const auto it = std::find(r.begin(), r.end(), kIdentity);
    const auto j = static_cast<ElementIndex>(it - r.begin());
    if ((*this)(j, i) != kIdentity) {
      throw StructuralError("element " + std::to_string(i) + " has no two-sided inverse");
    }
    inverse_[i] = j;
  }
  auto check = [&](ElementIndex a, ElementIndex b, ElementIndex c) {
    if ((*this)((*this)(a, b), c) != (*this)(a, (*this)(b, c))) {
      throw StructuralError("associativity fails at " + triple(a, b, c));
    }
  };
  if (n <= kFullAssociativityLimit) {
    for (ElementIndex a = 0; a < n; ++a)
      for (ElementIndex b = 0; b < n; ++b)
        for (ElementIndex c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<ElementIndex> pick(0, static_cast<ElementIndex>(n - 1));
    for (std::size_t s = 0; s < kAssociativitySamples; ++s) check(pick(rng), pick(rng), pick(rng));
  }
}

GroupTable GroupTable::cyclic(std::size_t n) {
  std::vector<ElementIndex> product(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) product[i * n + j] = static_cast<ElementIndex>((i + j) % n);
  std::vector<std::string> labels(n);
  labels[0] = "1";
  for (std::size_t k = 1; k < n; ++k) labels[k] = k == 1 ? "g" : "g^" + std::to_string(k);
  return from_products(std::move(product), n, std::move(labels));
}

GroupTable GroupTable::direct_product(const GroupTable& lhs, const GroupTable& rhs) {
  const std::size_t m = lhs.order();
  const std::size_t k = rhs.order();
  const std::size_t n = m * k;
  std::vector<ElementIndex> product(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto first = lhs(static_cast<ElementIndex>(a / k), static_cast<ElementIndex>(b / k));
      const auto second = rhs(static_cast<ElementIndex>(a % k), static_cast<ElementIndex>(b % k));
      product[a * n + b] = static_cast<ElementIndex>(first * k + second);
    }
  }
  std::vector<std::string> labels;
  if (lhs.has_labels() || rhs.has_labels()) {
    labels.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      labels[a] = "(" + lhs.label(static_cast<ElementIndex>(a / k)) + "," +
                  rhs.label(static_cast<ElementIndex>(a % k)) + ")";
    }
  }
  return from_products(std::move(product), n, std::move(labels), std::max(n, kDefaultMaxOrder));
}

std::string GroupTable::label(ElementIndex x) const {
  if (!labels_.empty()) return labels_[x];
  return "e" + std::to_string(x);
}

bool GroupTable::is_abelian() const {
  for (ElementIndex x = 0; x < n_; ++x) {
    if (!kernels::commutes_with_all(product_, n_, x)) return false;
  }
  return true;
}

ElementIndex GroupTable::power(ElementIndex x, long long k) const {
  check_index(x);
  ElementIndex base = k < 0 ? inverse_[x] : x;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ULL
                               : static_cast<unsigned long long>(k);
  ElementIndex acc = kIdentity;
  while (e != 0) {
    if (e & 1ULL) acc = (*this)(acc, base);
    base = (*this)(base, base);
    e >>= 1U;
  }
  return acc;
}

void GroupTable::check_index(ElementIndex x) const {
  if (x >= n_) {
    throw InputError("element index " + std::to_string(x) + " out of range for order " +
                     std::to_string(n_));
  }
}

// SubgroupSet ----------------------------------------------------------------

SubgroupSet::SubgroupSet(std::vector<ElementIndex> sorted_members, std::size_t parent_order)
    : members_(std::move(sorted_members)), mask_(parent_order, 0) {
  for (auto m : members_) mask_[m] = 1;
}

SubgroupSet SubgroupSet::verified(const GroupTable& t, std::vector<ElementIndex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (auto m : members) t.check_index(m);
  SubgroupSet s(std::move(members), t.order());
  if (!s.contains(kIdentity)) throw StructuralError("subgroup does not contain the identity");
  for (auto a : s.members_) {
    if (!s.contains(t.inverse(a))) {
      throw StructuralError("subset not closed under inverse at element " + std::to_string(a));
    }
    for (auto b : s.members_) {
      if (!s.contains(t(a, b))) {
        throw StructuralError("subset not closed under product at (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
      }
    }
  }
  return s;
}

SubgroupSet SubgroupSet::whole(const GroupTable& t) {
  std::vector<ElementIndex> all(t.order());
  std::iota(all.begin(), all.end(), ElementIndex{0});
  return SubgroupSet(std::move(all), t.order());
}

SubgroupSet SubgroupSet::trivial(const GroupTable& t) { return SubgroupSet({kIdentity}, t.order()); }

bool SubgroupSet::is_subset_of(const SubgroupSet& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](ElementIndex x) { return other.contains(x); });
}

// Operations -----------------------------------------------------------------

ElementIndex multiply(const GroupTable& t, ElementIndex a, ElementIndex b) {
  t.check_index(a);
  t.check_index(b);
  return t(a, b);
}

ElementIndex commutator(const GroupTable& t, ElementIndex a, ElementIndex b) {
  t.check_index(a);
  t.check_index(b);
  return t(t(t.inverse(a), t.inverse(b)), t(a, b));
}

ElementIndex conjugate(const GroupTable& t, ElementIndex x, ElementIndex g) {
  t.check_index(x);
  t.check_index(g);
  return t(t(t.inverse(g), x), g);
}

std::size_t element_order(const GroupTable& t, ElementIndex x) {
  t.check_index(x);
  std::size_t k = 1;
  for (ElementIndex y = x; y != kIdentity; y = t(y, x)) ++k;
  if (t.order() % k != 0) {
    throw StructuralError("element order " + std::to_string(k) + " does not divide " +
                          std::to_string(t.order()));
  }
  return k;
}

SubgroupSet closure(const GroupTable& t, std::span<const ElementIndex> seed) {
  for (auto s : seed) t.check_index(s);
  std::vector<ElementIndex> found{kIdentity};
  std::vector<unsigned char> mask(t.order(), 0);
  mask[kIdentity] = 1;
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (auto s : seed) {
      const ElementIndex y = t(found[i], s);
      if (!mask[y]) {
        mask[y] = 1;
        found.push_back(y);
      }
    }
  }
  std::sort(found.begin(), found.end());
  return SubgroupSet(std::move(found), t.order());
}

SubgroupSet closure(const GroupTable& t, std::initializer_list<ElementIndex> seed) {
  return closure(t, std::span<const ElementIndex>(seed.begin(), seed.size()));
}

SubgroupSet join(const GroupTable& t, const SubgroupSet& a, const SubgroupSet& b) {
  std::vector<ElementIndex> seed(a.members().begin(), a.members().end());
  seed.insert(seed.end(), b.members().begin(), b.members().end());
  return closure(t, seed);
}

SubgroupSet intersection(const GroupTable& t, const SubgroupSet& a, const SubgroupSet& b) {
  std::vector<ElementIndex> common;
  for (auto x : a.members())
    if (b.contains(x)) common.push_back(x);
  return closure(t, common);
}

SubgroupSet centralizer(const GroupTable& t, ElementIndex x) {
  t.check_index(x);
  std::vector<ElementIndex> members;
  for (ElementIndex g = 0; g < t.order(); ++g)
    if (t(x, g) == t(g, x)) members.push_back(g);
  return closure(t, members);
}

SubgroupSet centralizer(const GroupTable& t, const SubgroupSet& h) {
  std::vector<ElementIndex> members;
  for (ElementIndex g = 0; g < t.order(); ++g) {
    bool commutes = true;
    for (auto x : h.members()) {
      if (t(x, g) != t(g, x)) {
        commutes = false;
        break;
      }
    }
    if (commutes) members.push_back(g);
  }
  return closure(t, members);
}

bool is_normal(const GroupTable& t, const SubgroupSet& h) {
  for (ElementIndex g = 0; g < t.order(); ++g) {
    const ElementIndex gi = t.inverse(g);
    for (auto x : h.members())
      if (!h.contains(t(t(gi, x), g))) return false;
  }
  return true;
}

QuotientGroup quotient(const GroupTable& t, const SubgroupSet& n) {
  if (n.parent_order() != t.order()) throw InputError("subgroup belongs to a different table");
  if (!is_normal(t, n)) throw StructuralError("cannot form quotient by a non-normal subgroup");
  const std::size_t order = t.order();
  std::vector<ElementIndex> projection(order, kUnset);
  std::vector<ElementIndex> representatives;
  for (ElementIndex x = 0; x < order; ++x) {
    if (projection[x] != kUnset) continue;
    const auto coset = static_cast<ElementIndex>(representatives.size());
    representatives.push_back(x);
    for (auto m : n.members()) projection[t(x, m)] = coset;
  }
  const std::size_t k = representatives.size();
  std::vector<ElementIndex> product(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      product[i * k + j] = projection[t(representatives[i], representatives[j])];
  std::vector<std::string> labels;
  if (t.has_labels()) {
    for (auto r : representatives) labels.push_back(t.label(r));
  }
  QuotientGroup q{GroupTable::from_products(std::move(product), k, std::move(labels),
                                            std::max(k, kDefaultMaxOrder)),
                  std::move(projection), std::move(representatives)};

  auto check = [&](ElementIndex a, ElementIndex b) {
    if (q.projection[t(a, b)] != q.table(q.projection[a], q.projection[b])) {
      throw StructuralError("projection is not a homomorphism at (" + std::to_string(a) + ", " +
                            std::to_string(b) + ")");
    }
  };
  if (order <= 512) {
    for (ElementIndex a = 0; a < order; ++a)
      for (ElementIndex b = 0; b < order; ++b) check(a, b);
  } else {
    std::mt19937_64 rng(0x9e37);
    std::uniform_int_distribution<ElementIndex> pick(0, static_cast<ElementIndex>(order - 1));
    for (int s = 0; s < 100000; ++s) check(pick(rng), pick(rng));
  }
  return q;
}

ConjugacyClasses conjugacy_classes(const GroupTable& t) {
  const std::size_t n = t.order();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  ConjugacyClasses cc;
  cc.class_of.assign(n, kNone);
  for (ElementIndex x = 0; x < n; ++x) {
    if (cc.class_of[x] != kNone) continue;
    const std::size_t id = cc.classes.size();
    std::vector<ElementIndex> members;
    for (ElementIndex g = 0; g < n; ++g) {
      const ElementIndex y = t(t(t.inverse(g), x), g);
      if (cc.class_of[y] == kNone) {
        cc.class_of[y] = id;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    cc.classes.push_back(std::move(members));
  }
  return cc;
}

bool generates(const GroupTable& t, std::span<const ElementIndex> gens) {
  return closure(t, gens).is_whole();
}

std::optional<std::vector<ElementIndex>> extend_on_subgroup(const GroupTable& source,
                                                            std::span<const ElementIndex> gens,
                                                            std::span<const ElementIndex> images,
                                                            const GroupTable& target) {
  if (gens.size() != images.size()) throw InputError("generator/image count mismatch");
  for (auto g : gens) source.check_index(g);
  for (auto h : images) target.check_index(h);
  std::vector<ElementIndex> image(source.order(), kUnset);
  std::vector<ElementIndex> queue{kIdentity};
  image[kIdentity] = kIdentity;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const ElementIndex e = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const ElementIndex f = source(e, gens[k]);
      const ElementIndex v = target(image[e], images[k]);
      if (image[f] == kUnset) {
        image[f] = v;
        queue.push_back(f);
      } else if (image[f] != v) {
        return std::nullopt;
      }
    }
  }
  return image;
}

std::optional<std::vector<ElementIndex>> extend_to_homomorphism(
    const GroupTable& source, std::span<const ElementIndex> gens,
    std::span<const ElementIndex> images, const GroupTable& target) {
  auto image = extend_on_subgroup(source, gens, images, target);
  if (image && std::find(image->begin(), image->end(), kUnset) != image->end()) {
    throw InputError("generating tuple does not generate the group");
  }
  return image;
}

GroupTable canonical_form(const GroupTable& t) {
  const std::size_t n = t.order();
  std::vector<ElementIndex> gens;
  std::vector<unsigned char> generated(n, 0);
  generated[kIdentity] = 1;
  for (ElementIndex x = 1; x < n; ++x) {
    if (generated[x]) continue;
    gens.push_back(x);
    const SubgroupSet h = closure(t, gens);
    for (auto m : h.members()) generated[m] = 1;
  }
  std::vector<ElementIndex> relabel(n, kUnset);
  std::vector<ElementIndex> order{kIdentity};
  relabel[kIdentity] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto g : gens) {
      const ElementIndex y = t(order[i], g);
      if (relabel[y] == kUnset) {
        relabel[y] = static_cast<ElementIndex>(order.size());
        order.push_back(y);
      }
    }
  }
  std::vector<ElementIndex> product(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      product[relabel[a] * n + relabel[b]] =
          relabel[t(static_cast<ElementIndex>(a), static_cast<ElementIndex>(b))];
  std::vector<std::string> labels;
  if (t.has_labels()) {
    labels.resize(n);
    for (std::size_t a = 0; a < n; ++a) labels[relabel[a]] = t.labels()[a];
  }
  return GroupTable::from_products(std::move(product), n, std::move(labels),
                                   std::max(n, kDefaultMaxOrder));
}

// File format ----------------------------------------------------------------

GroupTable read_table(std::istream& in, std::size_t max_order) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_content_line(line)) throw InputError("empty table file");
  std::size_t n = 0;
  {
    std::istringstream is(line);
    long long value = 0;
    std::string rest;
    if (!(is >> value) || (is >> rest) || value <= 0) {
      throw InputError("line " + std::to_string(line_no) + ": expected a positive group order");
    }
    n = static_cast<std::size_t>(value);
  }
  if (n > max_order) {
    throw OverflowError("group order " + std::to_string(n) + " exceeds table cap " +
                        std::to_string(max_order));
  }
  std::vector<ElementIndex> product;
  product.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!next_content_line(line)) {
      throw InputError("table ends after " + std::to_string(r) + " of " + std::to_string(n) +
                       " rows");
    }
    std::istringstream is(line);
    std::size_t count = 0;
    long long value = 0;
    while (is >> value) {
      if (value < 0 || static_cast<std::size_t>(value) >= n) {
        throw StructuralError("line " + std::to_string(line_no) + ": entry " +
                              std::to_string(value) + " out of range");
      }
      product.push_back(static_cast<ElementIndex>(value));
      ++count;
    }
    if (!is.eof() || count != n) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                       " indices");
    }
  }
  std::vector<std::string> labels;
  while (next_content_line(line)) {
    std::istringstream is(line);
    std::string hash;
    long long index = 0;
    std::string name;
    if (!(is >> hash) || hash != "#") {
      throw InputError("line " + std::to_string(line_no) + ": unexpected content after table");
    }
    if (!(is >> index >> name)) continue;  // free-form comment
    if (index < 0 || static_cast<std::size_t>(index) >= n) {
      throw InputError("line " + std::to_string(line_no) + ": label index out of range");
    }
    if (labels.empty()) labels.resize(n);
    labels[static_cast<std::size_t>(index)] = name;
  }
  if (!labels.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i].empty()) labels[i] = "e" + std::to_string(i);
  }
  return canonical_form(GroupTable::from_products(std::move(product), n, std::move(labels),
                                                  max_order));
}

void write_table(std::ostream& out, const GroupTable& t) {
  const std::size_t n = t.order();
  out << n << '\n';
  for (ElementIndex i = 0; i < n; ++i) {
    auto r = t.row(i);
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << r[j];
    out << '\n';
  }
  if (t.has_labels()) {
    for (ElementIndex i = 0; i < n; ++i) out << "# " << i << ' ' << t.labels()[i] << '\n';
  }
}

GroupTable load_table_file(const std::string& path, std::size_t max_order) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table file " + path);
  return read_table(in, max_order);
}

}  // namespace cpa
