#include <algorithm>
#include <cstdint>

#include "cpa/presentation.hpp"

namespace cpa {

namespace {

using Coset = std::int32_t;
constexpr Coset kUndefined = -1;

/// Thrown by define() when the row limit is reached; the main loop makes
/// room (lookahead + compaction) and resumes.
struct TableFull {};

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t max_cosets)
      : columns_(2 * p.generators.size()), max_rows_(std::max<std::size_t>(max_cosets, 1)) {
    for (const auto& w : p.relators) relators_.push_back(expand(w));
  }

  static std::vector<std::size_t> expand(const Word& w) {
    std::vector<std::size_t> letters;
    for (const auto& [gen, exp] : w.factors) {
      const std::size_t column = 2 * gen + (exp < 0 ? 1 : 0);
      for (long long k = 0; k < (exp < 0 ? -exp : exp); ++k) letters.push_back(column);
    }
    return letters;
  }

  CosetTable run(const std::vector<Word>& subgroup_words) {
    new_row();
    std::vector<std::vector<std::size_t>> subgroup;
    for (const auto& w : subgroup_words) subgroup.push_back(expand(normalize(w)));

    std::size_t alpha = 0;
    bool subgroup_done = false;
    while (true) {
      try {
        if (!subgroup_done) {
          for (const auto& w : subgroup) scan_and_fill(0, w);
          subgroup_done = true;
        }
        for (; alpha < rows(); ++alpha) {
          if (!live(alpha)) continue;
          for (const auto& r : relators_) {
            scan_and_fill(static_cast<Coset>(alpha), r);
            if (!live(alpha)) break;
          }
          if (!live(alpha)) continue;
          for (std::size_t c = 0; c < columns_; ++c) {
            if (at(static_cast<Coset>(alpha), c) == kUndefined) define(static_cast<Coset>(alpha), c);
          }
        }
        break;
      } catch (const TableFull&) {
        lookahead();
        alpha = compact(alpha);
        if (rows() >= max_rows_) return overflowed();
      }
    }
    return finish();
  }

 private:
  std::size_t rows() const { return forward_.size(); }
  bool live(std::size_t c) const { return forward_[c] == static_cast<Coset>(c); }
  Coset& at(Coset c, std::size_t column) { return table_[static_cast<std::size_t>(c) * columns_ + column]; }
  static std::size_t inverse_column(std::size_t column) { return column ^ 1U; }

  Coset new_row() {
    const auto c = static_cast<Coset>(rows());
    table_.resize(table_.size() + columns_, kUndefined);
    forward_.push_back(c);
    peak_ = std::max(peak_, rows());
    return c;
  }

  void define(Coset c, std::size_t column) {
    if (rows() >= max_rows_) throw TableFull{};
    const Coset d = new_row();
    at(c, column) = d;
    at(d, inverse_column(column)) = c;
  }

  // Scan relator r at coset alpha, defining new cosets to close gaps. With
  // fill == false only deductions and coincidences are recorded.
  void scan(Coset alpha, const std::vector<std::size_t>& r, bool fill) {
    if (r.empty()) return;
    Coset f = alpha;
    Coset b = alpha;
    std::size_t i = 0;
    std::size_t j = r.size();  // one past the last unscanned letter
    while (true) {
      while (i < j && at(f, r[i]) != kUndefined) f = at(f, r[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, inverse_column(r[j - 1])) != kUndefined) {
        b = at(b, inverse_column(r[--j]));
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, r[i]) = b;
        at(b, inverse_column(r[i])) = f;
        return;
      }
      if (!fill) return;
      define(f, r[i]);
    }
  }

  void scan_and_fill(Coset alpha, const std::vector<std::size_t>& r) { scan(alpha, r, true); }

  Coset rep(Coset c) {
    Coset root = c;
    while (forward_[static_cast<std::size_t>(root)] != root) root = forward_[static_cast<std::size_t>(root)];
    while (forward_[static_cast<std::size_t>(c)] != root) {
      const Coset next = forward_[static_cast<std::size_t>(c)];
      forward_[static_cast<std::size_t>(c)] = root;
      c = next;
    }
    return root;
  }

  void merge(Coset a, Coset b, std::vector<Coset>& queue) {
    const Coset ra = rep(a);
    const Coset rb = rep(b);
    if (ra == rb) return;
    const Coset keep = std::min(ra, rb);
    const Coset drop = std::max(ra, rb);
    forward_[static_cast<std::size_t>(drop)] = keep;
    queue.push_back(drop);
  }

  void coincidence(Coset a, Coset b) {
    std::vector<Coset> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Coset dead = queue[q];
      for (std::size_t x = 0; x < columns_; ++x) {
        const Coset target = at(dead, x);
        if (target == kUndefined) continue;
        at(target, inverse_column(x)) = kUndefined;
        const Coset mu = rep(dead);
        const Coset nu = rep(target);
        if (at(mu, x) != kUndefined) {
          merge(nu, at(mu, x), queue);
        } else if (at(nu, inverse_column(x)) != kUndefined) {
          merge(mu, at(nu, inverse_column(x)), queue);
        } else {
          at(mu, x) = nu;
          at(nu, inverse_column(x)) = mu;
        }
      }
    }
  }

  void lookahead() {
    bool changed = true;
    while (changed) {
      const std::size_t live_before = live_count();
      const std::size_t defined_before = defined_entries();
      for (std::size_t c = 0; c < rows(); ++c) {
        for (const auto& r : relators_) {
          if (!live(c)) break;
          scan(static_cast<Coset>(c), r, false);
        }
      }
      changed = live_count() != live_before || defined_entries() != defined_before;
    }
  }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < rows(); ++c) n += live(c) ? 1 : 0;
    return n;
  }

  std::size_t defined_entries() const {
    return static_cast<std::size_t>(
        std::count_if(table_.begin(), table_.end(), [](Coset c) { return c != kUndefined; }));
  }

  // Drop dead rows, preserving order. Returns the new position of the first
  // live coset at or after `alpha`.
  std::size_t compact(std::size_t alpha) {
    std::vector<Coset> renumber(rows(), kUndefined);
    std::size_t next = 0;
    std::size_t new_alpha = std::size_t(-1);
    for (std::size_t c = 0; c < rows(); ++c) {
      if (c >= alpha && new_alpha == std::size_t(-1) && live(c)) new_alpha = next;
      if (live(c)) renumber[c] = static_cast<Coset>(next++);
    }
    if (new_alpha == std::size_t(-1)) new_alpha = next;
    std::vector<Coset> table(next * columns_, kUndefined);
    for (std::size_t c = 0; c < rows(); ++c) {
      if (!live(c)) continue;
      for (std::size_t x = 0; x < columns_; ++x) {
        const Coset t = table_[c * columns_ + x];
        table[static_cast<std::size_t>(renumber[c]) * columns_ + x] =
            t == kUndefined ? kUndefined : renumber[static_cast<std::size_t>(t)];
      }
    }
    table_ = std::move(table);
    forward_.resize(next);
    for (std::size_t c = 0; c < next; ++c) forward_[c] = static_cast<Coset>(c);
    return new_alpha;
  }

  CosetTable overflowed() const {
    CosetTable ct;
    ct.status = CosetTable::Status::overflowed;
    ct.num_generators = columns_ / 2;
    ct.coset_count = live_count();
    ct.peak_cosets = peak_;
    return ct;
  }

  CosetTable finish() {
    // Standardize: number cosets by first appearance in a breadth-first scan.
    std::vector<Coset> renumber(rows(), kUndefined);
    std::vector<Coset> order{0};
    renumber[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t x = 0; x < columns_; ++x) {
        const Coset t = at(order[i], x);
        if (t == kUndefined) throw StructuralError("coset enumeration left an undefined entry");
        if (renumber[static_cast<std::size_t>(t)] == kUndefined) {
          renumber[static_cast<std::size_t>(t)] = static_cast<Coset>(order.size());
          order.push_back(t);
        }
      }
    }
    CosetTable ct;
    ct.status = CosetTable::Status::complete;
    ct.num_generators = columns_ / 2;
    ct.coset_count = order.size();
    ct.peak_cosets = peak_;
    ct.entries.resize(order.size() * columns_);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t x = 0; x < columns_; ++x) {
        ct.entries[i * columns_ + x] =
            static_cast<ElementIndex>(renumber[static_cast<std::size_t>(at(order[i], x))]);
      }
    }
    return ct;
  }

  std::size_t columns_;
  std::size_t max_rows_;
  std::size_t peak_ = 0;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<Coset> table_;
  std::vector<Coset> forward_;
};

std::string word_label(const std::vector<std::size_t>& columns, const Presentation& p) {
  Word w;
  for (auto c : columns) w.factors.emplace_back(c / 2, (c & 1U) ? -1 : 1);
  return to_string(normalize(std::move(w)), p);
}

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_words,
                        std::size_t max_cosets) {
  if (p.generators.empty()) throw InputError("presentation has no generators");
  if (max_cosets < 1) throw InputError("max_cosets must be at least 1");
  return Enumerator(p, max_cosets).run(subgroup_words);
}

PresentedGroup table_from_cosets(const CosetTable& ct, const Presentation& p) {
  if (!ct.complete()) throw StructuralError("coset table is incomplete");
  if (ct.num_generators != p.generators.size()) {
    throw StructuralError("coset table does not match the presentation");
  }
  const std::size_t n = ct.coset_count;
  const std::size_t columns = ct.columns();

  // Spanning tree of shortest words; standard numbering is already BFS order.
  std::vector<ElementIndex> parent(n, kUnset);
  std::vector<std::size_t> via(n, 0);
  std::vector<ElementIndex> order{0};
  std::vector<unsigned char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t x = 0; x < columns; ++x) {
      const ElementIndex t = ct.action(order[i], x);
      if (!seen[t]) {
        seen[t] = 1;
        parent[t] = order[i];
        via[t] = x;
        order.push_back(t);
      }
    }
  }
  if (order.size() != n) throw StructuralError("coset table is not connected");

  std::vector<ElementIndex> product(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    product[i * n] = static_cast<ElementIndex>(i);
    for (std::size_t k = 1; k < n; ++k) {
      const ElementIndex j = order[k];
      product[i * n + j] = ct.action(product[i * n + parent[j]], via[j]);
    }
  }
  std::vector<std::string> labels(n);
  labels[0] = "1";
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> path;
    for (ElementIndex c = order[k]; c != 0; c = parent[c]) path.push_back(via[c]);
    std::reverse(path.begin(), path.end());
    labels[order[k]] = word_label(path, p);
  }

  PresentedGroup g{p, GroupTable::from_products(std::move(product), n, std::move(labels)), {}};
  for (std::size_t gen = 0; gen < p.generators.size(); ++gen) {
    g.generator_images.push_back(ct.action(0, 2 * gen));
  }
  return g;
}

PresentedGroup resolve(const Presentation& p, std::size_t max_cosets) {
  const CosetTable ct = todd_coxeter(p, {}, max_cosets);
  if (!ct.complete()) {
    throw OverflowError("coset enumeration exceeded " + std::to_string(max_cosets) +
                        " cosets" + (p.name.empty() ? "" : " for " + p.name));
  }
  return table_from_cosets(ct, p);
}

}  // namespace cpa
