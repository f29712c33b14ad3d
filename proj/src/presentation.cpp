#include "cpa/presentation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>

namespace cpa {

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const auto& [gen, exp] : factors) n += static_cast<std::size_t>(exp < 0 ? -exp : exp);
  return n;
}

Word normalize(Word w) {
  Word out;
  for (const auto& [gen, exp] : w.factors) {
    if (exp == 0) continue;
    if (!out.factors.empty() && out.factors.back().first == gen) {
      out.factors.back().second += exp;
      if (out.factors.back().second == 0) out.factors.pop_back();
    } else {
      out.factors.emplace_back(gen, exp);
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Presentation parse() {
    Presentation p;
    expect('<');
    do {
      const auto [name, line, col] = ident();
      for (const auto& g : p.generators) {
        if (g == name) fail(line, col, "duplicate generator '" + name + "'");
      }
      p.generators.push_back(name);
    } while (accept(','));
    expect('|');
    do {
      const std::size_t line = line_;
      const std::size_t col = col_;
      Word lhs = word(p);
      if (accept('=')) {
        Word rhs = word(p);
        for (auto it = rhs.factors.rbegin(); it != rhs.factors.rend(); ++it) {
          lhs.factors.emplace_back(it->first, -it->second);
        }
      }
      Word relator = normalize(std::move(lhs));
      if (relator.factors.empty()) fail(line, col, "empty relator");
      p.relators.push_back(std::move(relator));
    } while (accept(','));
    expect('>');
    skip_space();
    if (pos_ != text_.size()) fail(line_, col_, "unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) const {
    throw InputError("presentation " + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     msg);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      const std::string found =
          pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
      fail(line_, col_, std::string("expected '") + c + "', found " + found);
    }
  }

  std::tuple<std::string, std::size_t, std::size_t> ident() {
    skip_space();
    const std::size_t line = line_;
    const std::size_t col = col_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail(line, col, "expected identifier");
    }
    std::string name;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      name.push_back(text_[pos_]);
      advance();
    }
    return {name, line, col};
  }

  long long integer() {
    skip_space();
    const std::size_t line = line_;
    const std::size_t col = col_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      advance();
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(line, col, "expected integer exponent");
    }
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000'000LL) fail(line, col, "exponent too large");
      advance();
    }
    return negative ? -value : value;
  }

  Word word(const Presentation& p) {
    Word w;
    do {
      const auto [name, line, col] = ident();
      std::size_t id = p.generators.size();
      for (std::size_t g = 0; g < p.generators.size(); ++g) {
        if (p.generators[g] == name) id = g;
      }
      if (id == p.generators.size()) fail(line, col, "undeclared generator '" + name + "'");
      long long exp = 1;
      if (accept('^')) exp = integer();
      w.factors.emplace_back(id, exp);
    } while (accept('*'));
    return w;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text).parse(); }

Presentation parse_presentation_file(std::string_view text) {
  // Blank out comments and the name header in place so that reported
  // positions still refer to the original file.
  std::string body(text);
  std::string name;
  std::size_t start = 0;
  bool seen_content = false;
  while (start <= body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    const std::size_t hash = body.find('#', start);
    if (hash != std::string::npos && hash < end) {
      for (std::size_t i = hash; i < end; ++i) body[i] = ' ';
    }
    const std::size_t first = body.find_first_not_of(" \t\r", start);
    if (first != std::string::npos && first < end) {
      if (!seen_content && body.compare(first, 5, "name:") == 0) {
        const std::size_t value = body.find_first_not_of(" \t", first + 5);
        if (value != std::string::npos && value < end) {
          name = body.substr(value, end - value);
          while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
            name.pop_back();
          }
        }
        for (std::size_t i = first; i < end; ++i) body[i] = ' ';
      } else {
        seen_content = true;
      }
    }
    start = end + 1;
  }
  Presentation p = parse_presentation(body);
  p.name = name;
  return p;
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_presentation_file(ss.str());
}

std::string to_string(const Word& w, const Presentation& p) {
  if (w.factors.empty()) return "1";
  std::string out;
  for (const auto& [gen, exp] : w.factors) {
    if (!out.empty()) out += '*';
    out += p.generators.at(gen);
    if (exp != 1) out += "^" + std::to_string(exp);
  }
  return out;
}

std::string to_string(const Presentation& p) {
  std::string out = "< ";
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    out += (g ? ", " : "") + p.generators[g];
  }
  out += " | ";
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    out += (r ? ", " : "") + to_string(p.relators[r], p);
  }
  return out + " >";
}

ElementIndex evaluate(const Word& w, const GroupTable& t,
                      const std::vector<ElementIndex>& generator_images) {
  ElementIndex acc = kIdentity;
  for (const auto& [gen, exp] : w.factors) acc = t(acc, t.power(generator_images.at(gen), exp));
  return acc;
}

}  // namespace cpa
