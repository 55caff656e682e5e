#pragma once

#include <gmpxx.h>

#include <string>

namespace sg {

using Q = mpq_class;

// Always canonical (mpq keeps num/den reduced, den > 0).
std::string q_to_string(const Q& q, bool fraction_form = false);

// Accepts "n" or "n/d" with optional sign.
Q q_parse(const std::string& text);

Q q_pow(const Q& base, int exponent);

}  // namespace sg
