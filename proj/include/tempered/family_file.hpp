#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tempered/laurent.hpp"

namespace tempered {

/// Raw contents of a family definition file:
///
///   name: square
///   # comment
///   (1,0): 1
///   (-1,0): 1
///   (0,1): 1
///   (0,-1): 1
///   (0,0): a_1
///
/// Fixed terms carry exact (Gaussian) rationals; free terms carry the symbols a_1..a_g.
struct FamilyDefinition {
  std::string name;
  LaurentPolynomial fixed_terms;
  struct Symbol {
    int index = 0;  // j in a_j, 1-based
    Exponent exponent{};
    int line = 0;
  };
  std::vector<Symbol> symbols;
  std::string canonical;  // normalized text, stable across formatting differences
};

/// Throws ParseError with "line N:" diagnostics.
FamilyDefinition parse_family(const std::string& text);
FamilyDefinition load_family_file(const std::filesystem::path& path);

}  // namespace tempered
