#include "tempered/family_file.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "tempered/error.hpp"

namespace tempered {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& why) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

FamilyDefinition parse_family(const std::string& text) {
  static const std::regex monomial(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*:\s*(.+))");
  static const std::regex symbol(R"(a_?(\d+))");

  FamilyDefinition def;
  std::set<Exponent> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.rfind("name:", 0) == 0) {
      def.name = strip(s.substr(5));
      continue;
    }
    std::smatch m;
    if (!std::regex_match(s, m, monomial)) fail(line, "expected '(e1,e2): coefficient' or 'name: ...'");
    Exponent e{std::stoi(m[1]), std::stoi(m[2])};
    if (!seen.insert(e).second) fail(line, "duplicate monomial");
    std::string value = strip(m[3]);
    std::smatch sm;
    if (std::regex_match(value, sm, symbol)) {
      int j = std::stoi(sm[1]);
      if (j < 1) fail(line, "symbol index must be positive");
      def.symbols.push_back({j, e, line});
      continue;
    }
    Coefficient c;
    try {
      c = parse_coefficient(value);
    } catch (const Error& err) {
      fail(line, err.what());
    }
    if (c.is_zero()) fail(line, "zero coefficient");
    def.fixed_terms.add_term(e, c);
  }

  std::sort(def.symbols.begin(), def.symbols.end(),
            [](const auto& x, const auto& y) { return x.index < y.index; });
  for (std::size_t k = 0; k < def.symbols.size(); ++k)
    if (def.symbols[k].index != static_cast<int>(k + 1))
      fail(def.symbols[k].line, "symbols must be a_1..a_g, each exactly once");

  std::ostringstream canon;
  canon << "name:" << def.name << "\n";
  for (const auto& [e, c] : def.fixed_terms.terms()) canon << e[0] << "," << e[1] << ":" << c.to_string() << "\n";
  for (const auto& sym : def.symbols) canon << sym.exponent[0] << "," << sym.exponent[1] << ":a_" << sym.index << "\n";
  def.canonical = canon.str();
  return def;
}

FamilyDefinition load_family_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_family(ss.str());
}

}  // namespace tempered
