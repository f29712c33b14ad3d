#include "cpa/database.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cpa {

InputFormat parse_input_format(const std::string& s) {
  if (s == "auto") return InputFormat::automatic;
  if (s == "table") return InputFormat::table;
  if (s == "presentation") return InputFormat::presentation;
  throw InputError("unknown format '" + s + "' (expected table, presentation or auto)");
}

GroupEntry load_group(const std::filesystem::path& path, const LoadOptions& options) {
  InputFormat kind = options.format;
  if (kind == InputFormat::automatic) {
    kind = path.extension() == ".pres" ? InputFormat::presentation : InputFormat::table;
  }
  auto table = [&] {
    if (kind == InputFormat::table) return load_table_file(path.string(), options.max_order);
    const PresentedGroup g = resolve(load_presentation_file(path.string()), options.max_cosets);
    if (g.table.order() > options.max_order) {
      throw OverflowError(path.string() + ": order " + std::to_string(g.table.order()) +
                          " exceeds the table cap " + std::to_string(options.max_order));
    }
    return canonical_form(g.table);
  };
  GroupTable loaded = table();
  return GroupEntry{path.stem().string(), path, kind, std::move(loaded)};
}

void GroupDatabase::add(GroupEntry entry) {
  for (const auto& e : entries_) {
    if (e.name == entry.name) {
      throw InputError("duplicate group name '" + entry.name + "' (" + e.source.string() + ", " +
                       entry.source.string() + ")");
    }
  }
  entries_.push_back(std::move(entry));
}

GroupDatabase GroupDatabase::load_directory(const std::filesystem::path& dir,
                                            const LoadOptions& options) {
  if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".tbl" || ext == ".pres")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  GroupDatabase db;
  for (const auto& f : files) db.add(load_group(f, options));
  return db;
}

std::string table_digest(const GroupTable& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint32_t word) {
    for (int i = 0; i < 4; ++i) {
      h ^= (word >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint32_t>(t.order()));
  for (auto x : t.products()) feed(x);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

AnalysisCache::AnalysisCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw InputError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::optional<std::filesystem::path> AnalysisCache::default_dir() {
  const char* env = std::getenv("CPAUT_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::filesystem::path AnalysisCache::path_for(const std::string& digest) const {
  return dir_ / (digest + ".report");
}

std::optional<StructureReport> AnalysisCache::lookup(const GroupTable& t) const {
  const std::string digest = table_digest(t);
  std::ifstream in(path_for(digest));
  if (!in) return std::nullopt;
  std::string first;
  if (!std::getline(in, first) || first != "digest: " + digest) return std::nullopt;
  std::ostringstream rest;
  rest << in.rdbuf();
  const std::string body = rest.str();
  try {
    std::istringstream is(body);
    StructureReport r = read_machine(is, t);
    if (r.order != t.order()) return std::nullopt;
    // The class map must agree with the class sizes it was stored with.
    const auto pos = body.find("conjugacy_class_of: ");
    if (pos == std::string::npos) return std::nullopt;
    std::istringstream cs(body.substr(pos + 20, body.find('\n', pos) - pos - 20));
    std::vector<std::size_t> counts(r.class_sizes.size(), 0);
    std::size_t c = 0, seen = 0;
    while (cs >> c) {
      if (c >= counts.size()) return std::nullopt;
      ++counts[c];
      ++seen;
    }
    if (seen != t.order() || counts != r.class_sizes) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

StructureReport AnalysisCache::structure(const GroupTable& t) {
  if (auto hit = lookup(t)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  StructureReport r = structure_report(t);
  const ConjugacyClasses classes = conjugacy_classes(t);
  const std::string digest = table_digest(t);
  const auto target = path_for(digest);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write cache file " + tmp.string());
    out << "digest: " << digest << '\n';
    write_machine(out, r);
    out << "conjugacy_class_of:";
    for (auto c : classes.class_of) out << ' ' << c;
    out << '\n';
  }
  std::filesystem::rename(tmp, target);
  return r;
}

}  // namespace cpa
