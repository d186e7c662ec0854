#include "totcheck/arithmetic.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace totcheck::arith {
namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialDivisionBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialDivisionBound; j += i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Reduce n to a machine word for seeding; 2^64 - 59 is prime.
std::uint64_t seed_from(const Natural& n) {
  return mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffffffffc5ULL);
}

struct RandState {
  gmp_randstate_t state;
  explicit RandState(unsigned long seed) {
    gmp_randinit_mt(state);
    gmp_randseed_ui(state, seed);
  }
  ~RandState() { gmp_randclear(state); }
  RandState(const RandState&) = delete;
  RandState& operator=(const RandState&) = delete;
};

// One strong-probable-prime round. n odd, n > 3, n - 1 = 2^two_exp * odd_part.
bool sprp_round(const Natural& n, const Natural& n_minus_1, const Natural& odd_part,
                unsigned long two_exp, const Natural& base) {
  Natural x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < two_exp; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Witnesses proven deterministic for every n < 2^64.
constexpr unsigned long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Deterministic nontrivial-factor search: Brent's cycle form of Pollard rho
// with batched gcds. Counts squaring steps against `budget`; returns nullopt
// once the budget is gone. Expects an odd composite with no factor below the
// trial-division bound.
std::optional<Natural> rho_split(const Natural& n, std::uint64_t budget) {
  std::uint64_t rng = seed_from(n);
  std::uint64_t used = 0;
  const Natural n_minus_3 = n - 3;
  constexpr unsigned long kBatch = 128;

  while (used < budget) {
    Natural c = Natural(splitmix64(rng)) % n_minus_3 + 1;
    Natural y = Natural(splitmix64(rng)) % (n - 1) + 1;
    Natural x, ys, diff;
    Natural q = 1;
    Natural g = 1;
    unsigned long r = 1;
    bool exhausted = false;

    auto step = [&](Natural& v) {
      v = (v * v + c) % n;
      ++used;
    };

    while (g == 1 && !exhausted) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) {
        if (used >= budget) {
          exhausted = true;
          break;
        }
        step(y);
      }
      unsigned long k = 0;
      while (k < r && g == 1 && !exhausted) {
        ys = y;
        unsigned long lim = std::min(kBatch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          if (used >= budget) {
            exhausted = true;
            break;
          }
          step(y);
          diff = x > y ? x - y : y - x;
          q = q * diff % n;
        }
        g = gcd(q, n);
        k += lim;
      }
      r *= 2;
    }
    if (exhausted && g == 1) return std::nullopt;
    if (g == n) {
      // The batch overshot a factor; walk the saved tail one step at a time.
      do {
        if (used >= budget) return std::nullopt;
        step(ys);
        diff = x > ys ? x - ys : ys - x;
        g = gcd(diff, n);
      } while (g == 1);
    }
    if (g > 1 && g < n) return g;
    // g == n: degenerate parameter choice, retry with the next constant.
  }
  return std::nullopt;
}

}  // namespace

Natural gcd(const Natural& a, const Natural& b) {
  Natural r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus) {
  if (modulus == 0) throw std::invalid_argument("zero modulus");
  Natural r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Natural mod_inverse(const Natural& a, const Natural& m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  Natural r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::invalid_argument("not invertible");
  }
  return r;
}

bool is_probable_prime(const Natural& n) {
  if (n < 2) return false;
  for (unsigned long w : kWitnesses) {
    if (n == w) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
  }
  if (n < 37 * 37) return true;  // no prime factor <= 37 and below 37^2

  const Natural n_minus_1 = n - 1;
  const unsigned long two_exp = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  Natural odd_part;
  mpz_tdiv_q_2exp(odd_part.get_mpz_t(), n_minus_1.get_mpz_t(), two_exp);

  for (unsigned long w : kWitnesses) {
    if (!sprp_round(n, n_minus_1, odd_part, two_exp, w)) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true;  // witness set is exact here

  RandState rs(seed_from(n));
  const Natural span = n - 3;  // bases drawn from [2, n - 2]
  for (int round = 0; round < kProbablePrimeRounds; ++round) {
    Natural base;
    mpz_urandomm(base.get_mpz_t(), rs.state, span.get_mpz_t());
    base += 2;
    if (!sprp_round(n, n_minus_1, odd_part, two_exp, base)) return false;
  }
  return true;
}

Factorization factorize(const Natural& n, std::uint64_t budget) {
  if (n == 0) throw std::invalid_argument("zero has no factorization");
  Factorization out;
  out.value = n;
  Natural work = n;
  std::map<Natural, unsigned> found;

  if (mpz_even_p(work.get_mpz_t())) {
    unsigned long twos = mpz_scan1(work.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(work.get_mpz_t(), work.get_mpz_t(), twos);
    found[2] += static_cast<unsigned>(twos);
  }

  const auto& primes = small_primes();
  std::size_t since_check = 0;
  for (std::size_t i = 1; i < primes.size() && work > 1; ++i) {
    const unsigned long p = primes[i];
    if (mpz_cmp_ui(work.get_mpz_t(), p * p) < 0) {
      found[work] += 1;  // every factor below p is stripped, so work is prime
      work = 1;
      break;
    }
    if (mpz_divisible_ui_p(work.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(work.get_mpz_t(), work.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(work.get_mpz_t(), p));
      found[p] += e;
      since_check = 0;
    } else if (++since_check == 4096) {
      // Big remainders are usually prime; spot-check instead of scanning on.
      since_check = 0;
      if (is_probable_prime(work)) {
        found[work] += 1;
        work = 1;
        break;
      }
    }
  }

  Natural cofactor = 1;
  if (work > 1) {
    if (is_probable_prime(work)) {
      found[work] += 1;
    } else {
      std::vector<Natural> pending{work};
      while (!pending.empty()) {
        Natural composite = pending.back();
        pending.pop_back();
        std::optional<Natural> g = rho_split(composite, budget);
        if (!g) {
          cofactor *= composite;
          continue;
        }
        for (const Natural& part : {*g, Natural(composite / *g)}) {
          if (is_probable_prime(part)) {
            found[part] += 1;
          } else {
            pending.push_back(part);
          }
        }
      }
    }
  }

  out.factors.reserve(found.size());
  for (const auto& [prime, exponent] : found) {
    out.factors.push_back({prime, exponent});
  }
  out.cofactor = cofactor;
  out.complete = cofactor == 1;
  return out;
}

Natural euler_phi(const Factorization& f) {
  if (!f.complete) throw std::invalid_argument("incomplete factorization");
  Natural phi = 1;
  for (const auto& pp : f.factors) {
    phi *= pp.prime - 1;
    for (unsigned i = 1; i < pp.exponent; ++i) phi *= pp.prime;
  }
  return phi;
}

int mobius(const Natural& n) {
  if (n == 0) throw std::invalid_argument("mobius(0) is undefined");
  if (n == 1) return 1;
  Factorization f = factorize(n);
  if (!f.complete) throw std::runtime_error("incomplete factorization");
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::vector<Natural> divisors(const Natural& n) {
  if (n == 0) throw std::invalid_argument("divisors(0) is undefined");
  Factorization f = factorize(n);
  if (!f.complete) throw std::runtime_error("incomplete factorization");
  std::vector<Natural> out{1};
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    Natural pe = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pe *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Natural largest_prime_factor(const Natural& n) {
  if (n < 2) throw std::invalid_argument("largest_prime_factor requires n >= 2");
  Factorization f = factorize(n);
  if (!f.complete) throw std::runtime_error("incomplete factorization");
  return f.factors.back().prime;
}

bool multiplicative_order_is(const Natural& a, const Natural& modulus, const Natural& m) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  if (m < 1) throw std::invalid_argument("order must be >= 1");
  if (gcd(a, modulus) != 1) throw std::invalid_argument("not a unit");
  if (mod_pow(a, m, modulus) != 1) return false;
  Factorization f = factorize(m);
  if (!f.complete) throw std::runtime_error("incomplete factorization");
  for (const auto& pp : f.factors) {
    if (mod_pow(a, m / pp.prime, modulus) == 1) return false;
  }
  return true;
}

Natural product(const Factorization& f) {
  Natural r = f.cofactor;
  for (const auto& pp : f.factors) {
    r *= pow_nat(pp.prime, pp.exponent);
  }
  return r;
}

bool is_valid(const Factorization& f) {
  if (f.value < 1 || f.cofactor < 1) return false;
  if (f.complete != (f.cofactor == 1)) return false;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (f.factors[i].exponent < 1) return false;
    if (i > 0 && !(f.factors[i - 1].prime < f.factors[i].prime)) return false;
    if (!is_probable_prime(f.factors[i].prime)) return false;
  }
  return product(f) == f.value;
}

Factorization merge(const Factorization& f, const Factorization& g) {
  Factorization out;
  out.value = f.value * g.value;
  out.cofactor = f.cofactor * g.cofactor;
  out.complete = out.cofactor == 1;
  auto fi = f.factors.begin();
  auto gi = g.factors.begin();
  while (fi != f.factors.end() && gi != g.factors.end()) {
    if (fi->prime == gi->prime) {
      out.factors.push_back({fi->prime, fi->exponent + gi->exponent});
      ++fi;
      ++gi;
    } else if (fi->prime < gi->prime) {
      out.factors.push_back(*fi++);
    } else {
      out.factors.push_back(*gi++);
    }
  }
  out.factors.insert(out.factors.end(), fi, f.factors.end());
  out.factors.insert(out.factors.end(), gi, g.factors.end());
  return out;
}

}  // namespace totcheck::arith
