#pragma once

#include <cstdint>
#include <vector>

#include "totcheck/natural.hpp"

namespace totcheck::arith {

// Trial division strips every prime below this bound before Pollard-Brent
// rho sees whatever composite remains.
inline constexpr unsigned long kTrialDivisionBound = 1'000'000;

// Rho iteration cap per composite. Exhausting it is not an error: the caller
// gets the unsplit cofactor back with complete = false.
inline constexpr std::uint64_t kDefaultRhoBudget = 100'000'000;

// Strong-probable-prime rounds used above the deterministic 64-bit range.
inline constexpr int kProbablePrimeRounds = 40;

struct PrimePower {
  Natural prime;
  unsigned exponent = 1;
};

// Prime-power decomposition of `value`. Invariants: primes strictly increasing
// and probable-prime, prod(prime^exponent) * cofactor == value, and
// complete <=> cofactor == 1.
struct Factorization {
  Natural value = 1;
  std::vector<PrimePower> factors;
  bool complete = true;
  Natural cofactor = 1;
};

Natural gcd(const Natural& a, const Natural& b);

// base^exp mod modulus, modulus >= 1.
Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus);

// Inverse of a modulo m, m >= 2. Throws if gcd(a, m) != 1.
Natural mod_inverse(const Natural& a, const Natural& m);

// Deterministic for n < 2^64 (fixed 12-witness strong-probable-prime set);
// above that, kProbablePrimeRounds extra rounds with bases drawn from a PRNG
// seeded from n itself, so repeated calls always agree.
bool is_probable_prime(const Natural& n);

// Trial division up to kTrialDivisionBound, then Pollard-Brent rho with at
// most `budget` iterations per composite. Rho's polynomial constant is
// derived from the composite value, making splits reproducible.
Factorization factorize(const Natural& n, std::uint64_t budget = kDefaultRhoBudget);

// prod p^(e-1)(p-1) over the factors. Requires f.complete.
Natural euler_phi(const Factorization& f);

// Moebius mu(n) in {-1, 0, 1}.
int mobius(const Natural& n);

// All divisors of n, ascending. n must factor completely at default budget.
std::vector<Natural> divisors(const Natural& n);

Natural largest_prime_factor(const Natural& n);

// True iff the order of a modulo `modulus` is exactly m: a^m == 1 and
// a^(m/p) != 1 for every prime p | m.
bool multiplicative_order_is(const Natural& a, const Natural& modulus, const Natural& m);

// prod(prime^exponent) * cofactor.
Natural product(const Factorization& f);

// Checks every Factorization invariant.
bool is_valid(const Factorization& f);

// Factorization of f.value * g.value with the factor lists merged.
Factorization merge(const Factorization& f, const Factorization& g);

}  // namespace totcheck::arith
