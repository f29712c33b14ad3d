#pragma once

// Finite presentations: parsing and coset enumeration.
//
// Grammar (whitespace insignificant):
//   presentation := '<' gens '|' relators '>'
//   gens         := ident (',' ident)*
//   relators     := relator (',' relator)*
//   relator      := word ('=' word)?        w1 = w2 is read as w1 * w2^-1
//   word         := factor ('*' factor)*
//   factor       := ident ('^' int)?
//   ident        := [A-Za-z][A-Za-z0-9_]*
//   int          := signed decimal
//
// Presentation files may additionally carry '#' line comments and a
// "name: <string>" header line.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpa/group_table.hpp"

namespace cpa {

struct Word {
  /// (generator id, non-zero exponent); adjacent ids differ.
  std::vector<std::pair<std::size_t, long long>> factors;

  /// Total number of letters, counting exponents.
  std::size_t length() const;
  friend bool operator==(const Word&, const Word&) = default;
};

struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

/// Merge adjacent powers of the same generator and drop zero exponents.
Word normalize(Word w);

/// Parses the bare grammar. Throws InputError with line:column on failure.
Presentation parse_presentation(std::string_view text);

/// Parses a presentation file body (comments, optional name header).
Presentation parse_presentation_file(std::string_view text);
Presentation load_presentation_file(const std::string& path);

std::string to_string(const Word& w, const Presentation& p);
std::string to_string(const Presentation& p);

inline constexpr std::size_t kDefaultMaxCosets = std::size_t{1} << 16;

struct CosetTable {
  enum class Status { complete, overflowed };

  Status status = Status::overflowed;
  std::size_t num_generators = 0;
  std::size_t coset_count = 0;
  /// Largest number of simultaneously allocated coset rows.
  std::size_t peak_cosets = 0;
  /// coset_count rows of 2*num_generators columns; column 2g is generator g,
  /// column 2g+1 its inverse. Cosets numbered by first appearance in a
  /// breadth-first scan from coset 0. Empty when overflowed.
  std::vector<ElementIndex> entries;

  std::size_t columns() const { return 2 * num_generators; }
  ElementIndex action(std::size_t coset, std::size_t column) const {
    return entries[coset * columns() + column];
  }
  bool complete() const { return status == Status::complete; }
};

/// HLT coset enumeration with coincidence processing. When the row limit is
/// reached a lookahead pass (relator scanning without new definitions) and
/// compaction run before overflow is declared. Deterministic.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_words = {},
                        std::size_t max_cosets = kDefaultMaxCosets);

struct PresentedGroup {
  Presentation presentation;
  GroupTable table;
  /// Element of `table` represented by each generator.
  std::vector<ElementIndex> generator_images;
};

/// Regular representation from a complete coset table over the trivial
/// subgroup. Labels are shortest generator words. Throws StructuralError if
/// the table is incomplete.
PresentedGroup table_from_cosets(const CosetTable& ct, const Presentation& p);

/// Enumerate and build; throws OverflowError when the coset limit is hit.
PresentedGroup resolve(const Presentation& p, std::size_t max_cosets = kDefaultMaxCosets);

/// Evaluate a word in a table given the generator images.
ElementIndex evaluate(const Word& w, const GroupTable& t,
                      const std::vector<ElementIndex>& generator_images);

}  // namespace cpa
