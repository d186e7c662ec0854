#include "totcheck/cyclotomic.hpp"

#include <stdexcept>

#include "totcheck/arithmetic.hpp"

namespace totcheck::cyclo {
namespace {

void require_args(unsigned long k, const Natural& a, const Natural& b) {
  if (k < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
  if (b < 1 || a <= b) throw std::invalid_argument("requires a > b >= 1");
}

Natural direct_target(CongruenceCase c, unsigned long n, const Natural& a, const Natural& b) {
  const Natural an = pow_nat(a, n);
  const Natural bn = pow_nat(b, n);
  switch (c) {
    case CongruenceCase::SumPower:
      return an + bn;
    case CongruenceCase::DiffPower:
      return an - bn;
    case CongruenceCase::DiffQuotient:
      return (an - bn) / (a - b);
    case CongruenceCase::SumQuotient:
      return (an + bn) / (a + b);
  }
  throw std::logic_error("unknown case");
}

}  // namespace

Natural cyclotomic_value(unsigned long k, const Natural& a, const Natural& b) {
  require_args(k, a, b);
  if (k == 1) return a - b;

  Natural numerator = 1;
  std::vector<Natural> denominators;
  for (const Natural& d : arith::divisors(k)) {
    const int mu = arith::mobius(d);
    if (mu == 0) continue;
    const unsigned long e = k / d.get_ui();
    Natural term = pow_nat(a, e) - pow_nat(b, e);
    if (mu > 0) {
      numerator *= term;
    } else {
      denominators.push_back(std::move(term));
    }
  }
  for (const Natural& d : denominators) {
    Natural quotient, remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), numerator.get_mpz_t(),
                d.get_mpz_t());
    if (remainder != 0) throw std::logic_error("cyclotomic identity violated");
    numerator = std::move(quotient);
  }
  return numerator;
}

std::vector<unsigned long> decomposition_indices(CongruenceCase c, unsigned long n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (c == CongruenceCase::SumQuotient && n % 2 == 0) {
    throw std::invalid_argument("identity requires odd n");
  }
  std::vector<unsigned long> out;
  // Divisors of 2n in ascending order; n fits a machine word, so enumerate
  // via the divisors of the Natural and read them back out.
  for (const Natural& d : arith::divisors(Natural(2) * n)) {
    const unsigned long k = d.get_ui();
    const bool divides_n = n % k == 0;
    switch (c) {
      case CongruenceCase::SumPower:
        if (!divides_n) out.push_back(k);
        break;
      case CongruenceCase::DiffPower:
        if (divides_n) out.push_back(k);
        break;
      case CongruenceCase::DiffQuotient:
        if (divides_n && k > 1) out.push_back(k);
        break;
      case CongruenceCase::SumQuotient:
        if (!divides_n && k > 2) out.push_back(k);
        break;
    }
  }
  return out;
}

Decomposition decompose(CongruenceCase c, unsigned long n, const Natural& a, const Natural& b) {
  require_args(n, a, b);
  Decomposition out;
  out.congruence_case = c;
  out.a = a;
  out.b = b;
  out.n = n;
  out.product = 1;
  for (unsigned long k : decomposition_indices(c, n)) {
    Natural value = cyclotomic_value(k, a, b);
    out.product *= value;
    out.factors.push_back({k, std::move(value)});
  }
  if (out.product != direct_target(c, n, a, b)) {
    throw std::logic_error("decomposition product mismatch");
  }
  return out;
}

}  // namespace totcheck::cyclo
