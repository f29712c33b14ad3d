#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cpa/database.hpp"
#include "cpa/group_table.hpp"
#include "cpa/presentation.hpp"

namespace support {

using cpa::ElementIndex;
using cpa::GroupTable;
using Perm = std::vector<unsigned>;

inline std::filesystem::path corpus() { return CPA_CORPUS_DIR; }

inline cpa::PresentedGroup bundled(const std::string& relative) {
  return cpa::resolve(cpa::load_presentation_file((corpus() / "presentations" / relative).string()));
}

inline GroupTable sourced(const std::string& relative) {
  return cpa::load_table_file((corpus() / "tables" / relative).string());
}

inline std::vector<cpa::GroupEntry> corpus_groups(std::size_t max_order) {
  std::vector<cpa::GroupEntry> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(corpus())) {
    const auto ext = e.path().extension();
    if (ext != ".tbl" && ext != ".pres") continue;
    auto g = cpa::load_group(e.path());
    if (g.table.order() <= max_order) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.source < b.source; });
  return out;
}

inline Perm compose(const Perm& a, const Perm& b) {  // a then b
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

/// Cayley table of the permutation group generated by `gens`, elements in
/// breadth-first order from the identity. Independent of the presentation
/// machinery.
inline GroupTable permutation_group(const std::vector<Perm>& gens, std::vector<Perm>* elements = nullptr) {
  Perm id(gens.front().size());
  for (unsigned i = 0; i < id.size(); ++i) id[i] = i;
  std::vector<Perm> elts{id};
  std::map<Perm, ElementIndex> index{{id, 0}};
  for (std::size_t i = 0; i < elts.size(); ++i) {
    for (const auto& g : gens) {
      Perm next = compose(elts[i], g);
      if (index.emplace(next, static_cast<ElementIndex>(elts.size())).second) elts.push_back(next);
    }
  }
  const std::size_t n = elts.size();
  std::vector<ElementIndex> product(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) product[a * n + b] = index.at(compose(elts[a], elts[b]));
  if (elements) *elements = elts;
  return GroupTable::from_products(std::move(product), n);
}

/// Symmetries of a square on vertices 0..3: r rotation, s reflection.
inline GroupTable dihedral8(std::vector<Perm>* elements = nullptr) {
  return permutation_group({{1, 2, 3, 0}, {0, 3, 2, 1}}, elements);
}

/// Regular representation of Q8 on {+-1, +-i, +-j, +-k} (indices 0..7).
inline GroupTable quaternion8() {
  // 0:1 1:i 2:j 3:k 4:-1 5:-i 6:-j 7:-k; right multiplication by i and j.
  const Perm by_i{1, 4, 7, 2, 5, 0, 3, 6};
  const Perm by_j{2, 3, 4, 5, 6, 7, 0, 1};
  return permutation_group({by_i, by_j});
}

/// Same group with elements permuted (identity kept at 0).
inline GroupTable relabeled(const GroupTable& t, std::mt19937& rng) {
  const std::size_t n = t.order();
  std::vector<ElementIndex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<ElementIndex>(i);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<ElementIndex> product(n * n);
  for (ElementIndex a = 0; a < n; ++a)
    for (ElementIndex b = 0; b < n; ++b) product[perm[a] * n + perm[b]] = perm[t(a, b)];
  return GroupTable::from_products(std::move(product), n);
}

}  // namespace support
