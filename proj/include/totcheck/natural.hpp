#pragma once

#include <gmpxx.h>

#include <string>

namespace totcheck {

// Arbitrary-precision non-negative integer. GMP does the limb work; values
// stay >= 0 by construction and get validated at the parsing boundary.
using Natural = mpz_class;

// Parses a decimal digit string. Rejects signs, whitespace and empty input.
Natural parse_natural(const std::string& text);

std::string to_decimal(const Natural& n);

// base^exp as an exact integer. Exponents are machine words; anything larger
// is out of computational reach for this toolkit anyway.
Natural pow_nat(const Natural& base, unsigned long exp);

}  // namespace totcheck
