#pragma once

#include <string>
#include <vector>

#include "supergluing/grassmann.hpp"

namespace sg {

// Grammar:
//   expr    := [+|-] term { (+|-) term }
//   term    := factor { * factor }
//   factor  := primary [ ^ [-] integer ]
//   primary := integer [ / integer ] | name | theta_k | ( expr )
// Exponents apply to even coordinates and parenthesized expressions only.
// Errors are ParseError with 1-based line/column; `line` and `column` give
// the position of text[0] inside the enclosing file.
GrassmannElement parse_element(const std::string& text, const std::vector<std::string>& even_names, int odd_rank,
                               int line = 1, int column = 1);

// Same grammar, but the result must not involve odd generators.
LaurentPoly parse_laurent(const std::string& text, const std::vector<std::string>& even_names, int line = 1,
                          int column = 1);

}  // namespace sg
