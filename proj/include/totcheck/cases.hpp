#pragma once

#include <optional>

namespace totcheck {

// The four congruence targets, in CLI letter order a..d:
//   a: x^n + y^n
//   b: z^n - x^n
//   c: (z^n - x^n) / (z - x)
//   d: (x^n + y^n) / (x + y)   (odd n only)
enum class CongruenceCase { SumPower, DiffPower, DiffQuotient, SumQuotient };

inline constexpr CongruenceCase kAllCases[] = {
    CongruenceCase::SumPower,
    CongruenceCase::DiffPower,
    CongruenceCase::DiffQuotient,
    CongruenceCase::SumQuotient,
};

constexpr char case_letter(CongruenceCase c) {
  switch (c) {
    case CongruenceCase::SumPower: return 'a';
    case CongruenceCase::DiffPower: return 'b';
    case CongruenceCase::DiffQuotient: return 'c';
    case CongruenceCase::SumQuotient: return 'd';
  }
  return '?';
}

constexpr std::optional<CongruenceCase> case_from_letter(char letter) {
  switch (letter) {
    case 'a': return CongruenceCase::SumPower;
    case 'b': return CongruenceCase::DiffPower;
    case 'c': return CongruenceCase::DiffQuotient;
    case 'd': return CongruenceCase::SumQuotient;
    default: return std::nullopt;
  }
}

constexpr const char* case_name(CongruenceCase c) {
  switch (c) {
    case CongruenceCase::SumPower: return "SumPower";
    case CongruenceCase::DiffPower: return "DiffPower";
    case CongruenceCase::DiffQuotient: return "DiffQuotient";
    case CongruenceCase::SumQuotient: return "SumQuotient";
  }
  return "?";
}

// Targets built from x^n + y^n (as opposed to z^n - x^n).
constexpr bool is_sum_case(CongruenceCase c) {
  return c == CongruenceCase::SumPower || c == CongruenceCase::SumQuotient;
}

// Targets divided by x + y or z - x.
constexpr bool is_quotient_case(CongruenceCase c) {
  return c == CongruenceCase::DiffQuotient || c == CongruenceCase::SumQuotient;
}

}  // namespace totcheck
