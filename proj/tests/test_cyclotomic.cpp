#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "totcheck/arithmetic.hpp"
#include "totcheck/cyclotomic.hpp"

using namespace totcheck;
using namespace totcheck::cyclo;

TEST_CASE("cyclotomic_value examples") {
  CHECK(cyclotomic_value(1, 5, 2) == 3);  // a - b
  // (5^3 - 2^3) / (5 - 2) = 117 / 3
  CHECK((pow_nat(5, 3) - pow_nat(2, 3)) / 3 == 39);
  CHECK(cyclotomic_value(3, 5, 2) == 39);
  // 63 / (7 * 3): the no-primitive-prime instance
  CHECK(cyclotomic_value(6, 2, 1) == 3);
  CHECK(cyclotomic_value(4, 3, 2) == 13);  // a^2 + b^2
  CHECK(cyclotomic_value(2, 5, 2) == 7);   // a + b
}

TEST_CASE("cyclotomic_value rejects bad arguments") {
  CHECK_THROWS_AS(cyclotomic_value(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(cyclotomic_value(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(cyclotomic_value(3, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(cyclotomic_value(3, 2, 0), std::invalid_argument);
}

TEST_CASE("cyclotomic_value allows non-coprime arguments") {
  // Phi_2(a, b) = a + b regardless of gcd
  CHECK(cyclotomic_value(2, 6, 2) == 8);
  CHECK(cyclotomic_value(3, 6, 3) == 63);  // 36 + 18 + 9
}

TEST_CASE("decomposition_indices") {
  CHECK(decomposition_indices(CongruenceCase::SumPower, 3) ==
        std::vector<unsigned long>{2, 6});
  CHECK(decomposition_indices(CongruenceCase::DiffQuotient, 6) ==
        std::vector<unsigned long>{2, 3, 6});
  CHECK(decomposition_indices(CongruenceCase::SumQuotient, 5) ==
        std::vector<unsigned long>{10});
  CHECK(decomposition_indices(CongruenceCase::DiffPower, 6) ==
        std::vector<unsigned long>{1, 2, 3, 6});
  CHECK(decomposition_indices(CongruenceCase::SumQuotient, 1).empty());
  CHECK_THROWS_WITH_AS(decomposition_indices(CongruenceCase::SumQuotient, 4),
                       "identity requires odd n", std::invalid_argument);
}

TEST_CASE("decomposition_indices against a brute-force divisor scan") {
  for (unsigned long n = 1; n <= 30; ++n) {
    std::vector<unsigned long> sum_power, diff_power, diff_quot, sum_quot;
    for (unsigned long k = 1; k <= 2 * n; ++k) {
      bool div_2n = (2 * n) % k == 0;
      bool div_n = n % k == 0;
      if (div_2n && !div_n) sum_power.push_back(k);
      if (div_n) diff_power.push_back(k);
      if (div_n && k > 1) diff_quot.push_back(k);
      if (div_2n && !div_n && k > 2) sum_quot.push_back(k);
    }
    CHECK(decomposition_indices(CongruenceCase::SumPower, n) == sum_power);
    CHECK(decomposition_indices(CongruenceCase::DiffPower, n) == diff_power);
    CHECK(decomposition_indices(CongruenceCase::DiffQuotient, n) == diff_quot);
    if (n % 2 == 1) {
      CHECK(decomposition_indices(CongruenceCase::SumQuotient, n) == sum_quot);
    }
  }
}

TEST_CASE("decompose examples") {
  Decomposition d = decompose(CongruenceCase::SumPower, 3, 2, 1);
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].index == 2);
  CHECK(d.factors[0].value == 3);
  CHECK(d.factors[1].index == 6);
  CHECK(d.factors[1].value == 3);
  CHECK(d.product == 9);

  d = decompose(CongruenceCase::DiffPower, 1, 5, 2);
  REQUIRE(d.factors.size() == 1);
  CHECK(d.factors[0].index == 1);
  CHECK(d.factors[0].value == 3);
  CHECK(d.product == 3);

  d = decompose(CongruenceCase::DiffQuotient, 6, 2, 1);
  REQUIRE(d.factors.size() == 3);
  CHECK(d.factors[0].value == 3);
  CHECK(d.factors[1].value == 7);
  CHECK(d.factors[2].value == 3);
  CHECK(d.product == 63);
}

TEST_CASE("telescoping and sum identities") {
  for (unsigned long a = 2; a <= 8; ++a) {
    for (unsigned long b = 1; b < a; ++b) {
      for (unsigned long n = 1; n <= 12; ++n) {
        Natural diff_product = 1;
        for (unsigned long d = 1; d <= n; ++d) {
          if (n % d == 0) diff_product *= cyclotomic_value(d, a, b);
        }
        CHECK(diff_product == pow_nat(a, n) - pow_nat(b, n));

        Natural sum_product = 1;
        for (unsigned long k = 1; k <= 2 * n; ++k) {
          if ((2 * n) % k == 0 && n % k != 0) sum_product *= cyclotomic_value(k, a, b);
        }
        CHECK(sum_product == pow_nat(a, n) + pow_nat(b, n));
      }
    }
  }
}

TEST_CASE("magnitude bounds") {
  using arith::euler_phi;
  using arith::factorize;
  for (unsigned long a = 2; a <= 9; ++a) {
    for (unsigned long b = 1; b < a; ++b) {
      for (unsigned long n = 2; n <= 16; ++n) {
        Natural value = cyclotomic_value(n, a, b);
        unsigned long degree = euler_phi(factorize(n)).get_ui();
        CHECK(value >= pow_nat(Natural(a - b), degree));
        CHECK(value <= pow_nat(Natural(a + b), degree));
      }
    }
  }
}

TEST_CASE("decompose cross-checks its product") {
  for (unsigned long a = 2; a <= 6; ++a) {
    for (unsigned long b = 1; b < a; ++b) {
      for (unsigned long n = 1; n <= 10; ++n) {
        Decomposition sp = decompose(CongruenceCase::SumPower, n, a, b);
        CHECK(sp.product == pow_nat(a, n) + pow_nat(b, n));
        Decomposition dp = decompose(CongruenceCase::DiffPower, n, a, b);
        CHECK(dp.product == pow_nat(a, n) - pow_nat(b, n));
        Decomposition dq = decompose(CongruenceCase::DiffQuotient, n, a, b);
        CHECK(dq.product == (pow_nat(a, n) - pow_nat(b, n)) / (a - b));
        if (n % 2 == 1) {
          Decomposition sq = decompose(CongruenceCase::SumQuotient, n, a, b);
          CHECK(sq.product == (pow_nat(a, n) + pow_nat(b, n)) / (a + b));
        }
      }
    }
  }
}

TEST_CASE("primitive prime classification on a desk-scale grid") {
  using namespace totcheck::arith;
  for (unsigned long n = 3; n <= 10; ++n) {
    Natural intrinsic = largest_prime_factor(n);
    for (unsigned long a = 2; a <= 8; ++a) {
      for (unsigned long b = 1; b < a; ++b) {
        if (std::gcd(a, b) != 1) continue;
        Natural value = cyclotomic_value(n, a, b);
        Factorization f = factorize(value);
        REQUIRE(f.complete);
        Natural stripped = value;
        while (stripped % intrinsic == 0) stripped /= intrinsic;
        for (const auto& pp : f.factors) {
          bool one_mod_n = pp.prime % n == 1;
          bool is_intrinsic = pp.prime == intrinsic;
          CHECK((one_mod_n || is_intrinsic));
        }
        bool is_exception = n == 6 && a == 2 && b == 1;
        CHECK((stripped == 1) == is_exception);
      }
    }
  }
}
