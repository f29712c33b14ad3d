#pragma once

// Group files on disk: format detection, named databases and a digest-keyed
// cache of structure reports.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cpa/group_table.hpp"
#include "cpa/presentation.hpp"
#include "cpa/structure.hpp"

namespace cpa {

enum class InputFormat { automatic, table, presentation };

/// "auto", "table" or "presentation"; InputError otherwise.
InputFormat parse_input_format(const std::string& s);

struct LoadOptions {
  InputFormat format = InputFormat::automatic;
  std::size_t max_cosets = kDefaultMaxCosets;
  std::size_t max_order = kDefaultMaxOrder;
};

struct GroupEntry {
  std::string name;
  std::filesystem::path source;
  InputFormat kind = InputFormat::table;
  /// Canonical form of the parsed or enumerated group.
  GroupTable table;
};

/// Loads one file. With automatic format, ".pres" is a presentation and
/// anything else a table. The entry is named after the file stem.
GroupEntry load_group(const std::filesystem::path& path, const LoadOptions& options = {});

class GroupDatabase {
 public:
  /// InputError on a duplicate name.
  void add(GroupEntry entry);
  const std::vector<GroupEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Every .tbl and .pres file directly inside `dir`, sorted by file name.
  static GroupDatabase load_directory(const std::filesystem::path& dir,
                                      const LoadOptions& options = {});

 private:
  std::vector<GroupEntry> entries_;
};

/// FNV-1a 64 over the order and the product table, as 16 hex digits.
std::string table_digest(const GroupTable& t);

/// Memoized structure reports and conjugacy class maps, one file per digest.
class AnalysisCache {
 public:
  explicit AnalysisCache(std::filesystem::path dir);

  /// CPAUT_CACHE_DIR when set, nullopt otherwise.
  static std::optional<std::filesystem::path> default_dir();

  const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Cached report for `t`, or computed and stored on a miss. Unreadable or
  /// stale entries are recomputed.
  StructureReport structure(const GroupTable& t);

  /// Looks up without computing.
  std::optional<StructureReport> lookup(const GroupTable& t) const;

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }

 private:
  std::filesystem::path path_for(const std::string& digest) const;

  std::filesystem::path dir_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace cpa
