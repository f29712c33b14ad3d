#include "cpa/structure.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "cpa/kernels.hpp"

namespace cpa {

std::optional<PrimePower> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;
  PrimePower pp{p, 0};
  while (n % p == 0) {
    n /= p;
    ++pp.exponent;
  }
  if (n != 1) return std::nullopt;
  return pp;
}

namespace {

std::uint64_t require_prime(const GroupTable& t, const char* what) {
  const auto pp = prime_power(t.order());
  if (!pp) {
    throw InputError(std::string(what) + " requires prime-power order, got " +
                     std::to_string(t.order()));
  }
  return pp->prime;
}

std::vector<ElementIndex> to_vector(const SubgroupSet& s) {
  return {s.members().begin(), s.members().end()};
}

SubgroupSet commutator_subgroup(const GroupTable& t, const SubgroupSet& a) {
  std::vector<ElementIndex> gens;
  std::vector<unsigned char> seen(t.order(), 0);
  for (auto x : a.members()) {
    for (ElementIndex g = 0; g < t.order(); ++g) {
      const ElementIndex c = commutator(t, x, g);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  return closure(t, gens);
}

// All homomorphisms from t onto the cyclic group of prime order p, as
// kernels. Each maximal subgroup of a p-group is such a kernel.
std::vector<SubgroupSet> kernels_onto_cp(const GroupTable& t, std::uint64_t p) {
  std::vector<ElementIndex> gens;
  {
    std::vector<unsigned char> generated(t.order(), 0);
    generated[kIdentity] = 1;
    for (ElementIndex x = 1; x < t.order(); ++x) {
      if (generated[x]) continue;
      gens.push_back(x);
      const SubgroupSet h = closure(t, gens);
      for (auto m : h.members()) generated[m] = 1;
    }
  }
  const GroupTable cp = GroupTable::cyclic(p);
  std::vector<ElementIndex> images(gens.size(), 0);
  std::set<std::vector<ElementIndex>> seen;
  std::vector<SubgroupSet> kernels;
  while (true) {
    // advance the odometer; the all-zero tuple is the trivial map, skipped
    std::size_t k = 0;
    while (k < images.size() && images[k] == p - 1) images[k++] = 0;
    if (k == images.size()) break;
    ++images[k];
    const auto hom = extend_to_homomorphism(t, gens, images, cp);
    if (!hom) continue;
    std::vector<ElementIndex> kernel;
    for (ElementIndex x = 0; x < t.order(); ++x)
      if ((*hom)[x] == kIdentity) kernel.push_back(x);
    if (seen.insert(kernel).second) kernels.push_back(closure(t, kernel));
  }
  std::sort(kernels.begin(), kernels.end(), [](const SubgroupSet& a, const SubgroupSet& b) {
    return std::lexicographical_compare(a.members().begin(), a.members().end(),
                                        b.members().begin(), b.members().end());
  });
  return kernels;
}

// Subgroup lattice by cyclic extension. Used only for orders that are not
// prime powers, which are small in practice.
std::vector<SubgroupSet> all_subgroups(const GroupTable& t) {
  constexpr std::size_t kLatticeCap = 200000;
  std::vector<SubgroupSet> found{SubgroupSet::trivial(t)};
  std::set<std::vector<ElementIndex>> seen{to_vector(found.front())};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (ElementIndex x = 1; x < t.order(); ++x) {
      if (found[i].contains(x)) continue;
      std::vector<ElementIndex> seed = to_vector(found[i]);
      seed.push_back(x);
      SubgroupSet next = closure(t, seed);
      if (seen.insert(to_vector(next)).second) {
        found.push_back(std::move(next));
        if (found.size() > kLatticeCap) throw OverflowError("subgroup lattice too large");
      }
    }
  }
  return found;
}

}  // namespace

SubgroupSet center(const GroupTable& t) {
  std::vector<ElementIndex> members;
  for (ElementIndex x = 0; x < t.order(); ++x) {
    if (kernels::commutes_with_all(t.products(), t.order(), x)) members.push_back(x);
  }
  return closure(t, members);
}

SubgroupSet derived_subgroup(const GroupTable& t) {
  return commutator_subgroup(t, SubgroupSet::whole(t));
}

std::vector<SubgroupSet> lower_central_series(const GroupTable& t) {
  std::vector<SubgroupSet> series{SubgroupSet::whole(t)};
  while (!series.back().is_trivial()) {
    SubgroupSet next = commutator_subgroup(t, series.back());
    const bool stalled = next == series.back();
    series.push_back(std::move(next));
    if (stalled) break;
  }
  return series;
}

std::optional<std::size_t> nilpotency_class(const GroupTable& t) {
  const auto series = lower_central_series(t);
  if (!series.back().is_trivial()) return std::nullopt;
  return series.size() - 1;
}

std::vector<SubgroupSet> maximal_subgroups(const GroupTable& t) {
  if (t.order() == 1) return {};
  if (const auto pp = prime_power(t.order())) return kernels_onto_cp(t, pp->prime);
  const auto lattice = all_subgroups(t);
  std::vector<SubgroupSet> maximal;
  for (const auto& h : lattice) {
    if (h.is_whole()) continue;
    const bool contained = std::any_of(lattice.begin(), lattice.end(), [&](const SubgroupSet& k) {
      return !k.is_whole() && k.size() > h.size() && h.is_subset_of(k);
    });
    if (!contained) maximal.push_back(h);
  }
  return maximal;
}

SubgroupSet frattini_via_maximal_subgroups(const GroupTable& t) {
  SubgroupSet result = SubgroupSet::whole(t);
  for (const auto& m : maximal_subgroups(t)) result = intersection(t, result, m);
  return result;
}

SubgroupSet frattini_via_powers(const GroupTable& t) {
  const std::uint64_t p = require_prime(t, "frattini_via_powers");
  std::vector<ElementIndex> seed = to_vector(derived_subgroup(t));
  for (ElementIndex x = 0; x < t.order(); ++x) seed.push_back(t.power(x, static_cast<long long>(p)));
  return closure(t, seed);
}

SubgroupSet frattini(const GroupTable& t) {
  if (t.order() == 1) return SubgroupSet::trivial(t);
  if (!prime_power(t.order())) return frattini_via_maximal_subgroups(t);
  SubgroupSet fast = frattini_via_powers(t);
  if (t.order() <= 512) {
    if (!(fast == frattini_via_maximal_subgroups(t))) {
      throw VerificationFailure("Frattini subgroup: G'G^p differs from intersection of maximal subgroups");
    }
  }
  return fast;
}

std::vector<ElementIndex> minimal_generating_tuple(const GroupTable& t) {
  if (t.order() == 1) return {};
  if (prime_power(t.order())) {
    const SubgroupSet phi = frattini_via_powers(t);
    const auto classes = conjugacy_classes(t);
    std::vector<ElementIndex> candidates;
    for (ElementIndex x = 1; x < t.order(); ++x)
      if (!phi.contains(x)) candidates.push_back(x);
    std::stable_sort(candidates.begin(), candidates.end(), [&](ElementIndex a, ElementIndex b) {
      return classes.size_of_class_of(a) < classes.size_of_class_of(b);
    });
    std::vector<ElementIndex> gens;
    SubgroupSet span = phi;
    for (auto x : candidates) {
      if (span.is_whole()) break;
      if (span.contains(x)) continue;
      gens.push_back(x);
      std::vector<ElementIndex> seed = to_vector(phi);
      seed.insert(seed.end(), gens.begin(), gens.end());
      span = closure(t, seed);
    }
    return gens;
  }
  // Not a prime power: exhaustive search over k-subsets for increasing k.
  const std::size_t n = t.order();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<ElementIndex> pick(k);
    std::iota(pick.begin(), pick.end(), ElementIndex{1});
    while (true) {
      if (pick.back() < n && generates(t, pick)) return pick;
      // next combination of {1..n-1}
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw StructuralError("no generating set found");
}

std::size_t rank_d(const GroupTable& t) {
  if (t.order() == 1) return 0;
  if (const auto pp = prime_power(t.order())) {
    const std::size_t quotient = t.order() / frattini(t).size();
    std::size_t d = 0;
    for (std::size_t q = quotient; q > 1; q /= pp->prime) ++d;
    return d;
  }
  return minimal_generating_tuple(t).size();
}

std::size_t exponent(const GroupTable& t) {
  std::size_t e = 1;
  for (ElementIndex x = 0; x < t.order(); ++x) e = std::lcm(e, element_order(t, x));
  return e;
}

std::vector<ElementIndex> commutator_set(const GroupTable& t, ElementIndex x) {
  t.check_index(x);
  std::vector<unsigned char> in_set(t.order(), 0);
  std::vector<unsigned char> in_class(t.order(), 0);
  std::vector<ElementIndex> set;
  std::size_t class_size = 0;
  for (ElementIndex g = 0; g < t.order(); ++g) {
    const ElementIndex c = commutator(t, x, g);
    if (!in_set[c]) {
      in_set[c] = 1;
      set.push_back(c);
    }
    const ElementIndex y = conjugate(t, x, g);
    if (!in_class[y]) {
      in_class[y] = 1;
      ++class_size;
    }
  }
  if (set.size() != class_size) {
    throw VerificationFailure("|[x,G]| != |x^G| for x = " + std::to_string(x));
  }
  std::sort(set.begin(), set.end());
  return set;
}

std::optional<CommutatorGap> first_commutator_gap(const GroupTable& t, const SubgroupSet& h,
                                                  const SubgroupSet& outside) {
  for (ElementIndex x = 0; x < t.order(); ++x) {
    if (outside.contains(x)) continue;
    const auto set = commutator_set(t, x);
    for (auto z : h.members()) {
      if (!std::binary_search(set.begin(), set.end(), z)) return CommutatorGap{x, z};
    }
  }
  return std::nullopt;
}

CaminaVerdict is_camina_pair(const GroupTable& t, const SubgroupSet& h) {
  if (h.parent_order() != t.order()) throw InputError("subgroup belongs to a different table");
  if (h.is_trivial() || h.is_whole()) {
    throw InputError("Camina pair requires a proper non-trivial subgroup");
  }
  if (!is_normal(t, h)) throw InputError("Camina pair requires a normal subgroup");
  CaminaVerdict v;
  v.witness = first_commutator_gap(t, h, h);
  v.holds = !v.witness.has_value();
  return v;
}

std::optional<SubgroupSet> find_abelian_subgroup_of_index_p(const GroupTable& t) {
  const std::uint64_t p = t.order() == 1 ? 1 : require_prime(t, "find_abelian_subgroup_of_index_p");
  if (t.is_abelian()) return SubgroupSet::whole(t);
  const std::size_t target = t.order() / p;
  // A non-abelian group's abelian maximal subgroups contain the center.
  std::vector<SubgroupSet> level{center(t)};
  std::set<std::vector<ElementIndex>> seen{to_vector(level.front())};
  while (!level.empty()) {
    std::vector<SubgroupSet> next_level;
    for (const auto& a : level) {
      const SubgroupSet c = centralizer(t, a);
      for (auto x : c.members()) {
        if (a.contains(x)) continue;
        std::vector<ElementIndex> seed = to_vector(a);
        seed.push_back(x);
        SubgroupSet b = closure(t, seed);
        if (b.size() == target) return b;
        if (seen.insert(to_vector(b)).second) next_level.push_back(std::move(b));
      }
    }
    level = std::move(next_level);
  }
  return std::nullopt;
}

bool is_purely_nonabelian(const GroupTable& t) {
  if (t.order() == 1) return true;
  if (t.is_abelian()) return false;
  const SubgroupSet z = center(t);
  const SubgroupSet derived = derived_subgroup(t);
  const auto gens = minimal_generating_tuple(t);
  std::set<std::vector<ElementIndex>> tried;
  for (auto gen : z.members()) {
    if (gen == kIdentity || derived.contains(gen)) continue;
    const SubgroupSet a = closure(t, {gen});
    if (!intersection(t, a, derived).is_trivial()) continue;
    if (!tried.insert(to_vector(a)).second) continue;
    // Homomorphisms G -> A that fix gen, i.e. retractions onto A.
    std::vector<std::size_t> choice(gens.size(), 0);
    const auto members = a.members();
    while (true) {
      std::vector<ElementIndex> images(gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) images[i] = members[choice[i]];
      const auto hom = extend_to_homomorphism(t, gens, images, t);
      if (hom && (*hom)[gen] == gen) return false;
      std::size_t k = 0;
      while (k < choice.size() && choice[k] == members.size() - 1) choice[k++] = 0;
      if (k == choice.size()) break;
      ++choice[k];
    }
  }
  return true;
}

StructureReport structure_report(const GroupTable& t) {
  StructureReport r{
      t.order(),
      prime_power(t.order()),
      t.is_abelian(),
      center(t),
      derived_subgroup(t),
      lower_central_series(t),
      frattini(t),
      nilpotency_class(t),
      rank_d(t),
      exponent(t),
      {},
  };
  for (const auto& c : conjugacy_classes(t).classes) r.class_sizes.push_back(c.size());
  return r;
}

bool operator==(const StructureReport& a, const StructureReport& b) {
  auto same_prime = [](const std::optional<PrimePower>& x, const std::optional<PrimePower>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->prime == y->prime && x->exponent == y->exponent);
  };
  return a.order == b.order && same_prime(a.prime, b.prime) && a.abelian == b.abelian &&
         a.center == b.center && a.derived == b.derived && a.lower_central == b.lower_central &&
         a.frattini == b.frattini && a.nilpotency_class == b.nilpotency_class &&
         a.rank_d == b.rank_d && a.exponent == b.exponent && a.class_sizes == b.class_sizes;
}

namespace {

template <typename Range>
std::string join_numbers(const Range& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

std::string members_of(const SubgroupSet& s) { return join_numbers(s.members()); }

}  // namespace

void write_machine(std::ostream& out, const StructureReport& r) {
  out << "order: " << r.order << '\n';
  out << "prime: " << (r.prime ? std::to_string(r.prime->prime) : "none") << '\n';
  out << "abelian: " << (r.abelian ? "true" : "false") << '\n';
  out << "center_order: " << r.center.size() << '\n';
  out << "center: " << members_of(r.center) << '\n';
  out << "derived_order: " << r.derived.size() << '\n';
  out << "derived: " << members_of(r.derived) << '\n';
  std::vector<std::size_t> lcs;
  for (const auto& s : r.lower_central) lcs.push_back(s.size());
  out << "lower_central_orders: " << join_numbers(lcs) << '\n';
  for (std::size_t i = 0; i < r.lower_central.size(); ++i) {
    out << "lower_central_" << i + 1 << ": " << members_of(r.lower_central[i]) << '\n';
  }
  out << "frattini_order: " << r.frattini.size() << '\n';
  out << "frattini: " << members_of(r.frattini) << '\n';
  out << "nilpotency_class: "
      << (r.nilpotency_class ? std::to_string(*r.nilpotency_class) : "not-nilpotent") << '\n';
  out << "rank_d: " << r.rank_d << '\n';
  out << "exponent: " << r.exponent << '\n';
  out << "conjugacy_class_count: " << r.class_sizes.size() << '\n';
  out << "conjugacy_class_sizes: " << join_numbers(r.class_sizes) << '\n';
}

void write_text(std::ostream& out, const StructureReport& r) {
  std::vector<std::size_t> lcs;
  for (const auto& s : r.lower_central) lcs.push_back(s.size());
  std::map<std::size_t, std::size_t> histogram;
  for (auto s : r.class_sizes) ++histogram[s];
  std::string classes;
  for (const auto& [size, count] : histogram) {
    if (!classes.empty()) classes += ", ";
    classes += std::to_string(count) + " of size " + std::to_string(size);
  }
  out << "  order                 " << r.order;
  if (r.prime) out << " = " << r.prime->prime << "^" << r.prime->exponent;
  out << '\n';
  out << "  abelian               " << (r.abelian ? "yes" : "no") << '\n';
  out << "  |Z(G)|                " << r.center.size() << '\n';
  out << "  |G'|                  " << r.derived.size() << '\n';
  out << "  lower central series  " << join_numbers(lcs) << '\n';
  out << "  |Phi(G)|              " << r.frattini.size() << '\n';
  out << "  nilpotency class      "
      << (r.nilpotency_class ? std::to_string(*r.nilpotency_class) : "not nilpotent") << '\n';
  out << "  d(G)                  " << r.rank_d << '\n';
  out << "  exponent              " << r.exponent << '\n';
  out << "  conjugacy classes     " << r.class_sizes.size() << " (" << classes << ")\n";
}

StructureReport read_machine(std::istream& in, const GroupTable& t) {
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    fields[line.substr(0, colon)] = value;
  }
  auto field = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw InputError("structure report lacks key '" + key + "'");
    return it->second;
  };
  auto numbers = [](const std::string& s) {
    std::vector<std::size_t> v;
    std::istringstream is(s);
    std::size_t x = 0;
    while (is >> x) v.push_back(x);
    return v;
  };
  auto subgroup = [&](const std::string& key) {
    std::vector<ElementIndex> members;
    for (auto x : numbers(field(key))) members.push_back(static_cast<ElementIndex>(x));
    return SubgroupSet::verified(t, std::move(members));
  };
  StructureReport r{
      std::stoul(field("order")),
      prime_power(t.order()),
      field("abelian") == "true",
      subgroup("center"),
      subgroup("derived"),
      {},
      subgroup("frattini"),
      std::nullopt,
      std::stoul(field("rank_d")),
      std::stoul(field("exponent")),
      numbers(field("conjugacy_class_sizes")),
  };
  if (r.order != t.order()) throw InputError("structure report is for a different group");
  const std::size_t terms = numbers(field("lower_central_orders")).size();
  for (std::size_t i = 0; i < terms; ++i) {
    r.lower_central.push_back(subgroup("lower_central_" + std::to_string(i + 1)));
  }
  if (field("nilpotency_class") != "not-nilpotent") {
    r.nilpotency_class = std::stoul(field("nilpotency_class"));
  }
  return r;
}

}  // namespace cpa
