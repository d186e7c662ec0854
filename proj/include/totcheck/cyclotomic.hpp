#pragma once

#include <vector>

#include "totcheck/cases.hpp"
#include "totcheck/natural.hpp"

namespace totcheck::cyclo {

// One evaluated factor Phi_index(a, b).
struct CyclotomicFactor {
  unsigned long index = 1;
  Natural value = 1;
};

// Cyclotomic factor list whose product is exactly one congruence target.
struct Decomposition {
  CongruenceCase congruence_case;
  Natural a;  // larger argument
  Natural b;  // smaller argument
  unsigned long n = 1;
  std::vector<CyclotomicFactor> factors;
  Natural product = 1;
};

// Homogenized cyclotomic polynomial value Phi_k(a, b) for a > b >= 1,
// computed by the Moebius product over divisors of k: all numerator terms
// (mu = +1) first, then sequential exact divisions (mu = -1), each checked
// for a zero remainder.
Natural cyclotomic_value(unsigned long k, const Natural& a, const Natural& b);

// Phi indices whose product gives the case target:
//   SumPower      {k : k | 2n, k !| n}
//   DiffPower     {k : k | n}
//   DiffQuotient  {k : k | n, k > 1}
//   SumQuotient   {k : k | 2n, k !| n, k > 2}   (odd n only)
// Ascending.
std::vector<unsigned long> decomposition_indices(CongruenceCase c, unsigned long n);

// Evaluates each index for (a, b) and cross-checks the product against the
// directly computed target value.
Decomposition decompose(CongruenceCase c, unsigned long n, const Natural& a, const Natural& b);

}  // namespace totcheck::cyclo
