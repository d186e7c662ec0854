#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "totcheck/cyclotomic.hpp"
#include "totcheck/theorems.hpp"

using namespace totcheck;
using namespace totcheck::theorems;
using totcheck::arith::factorize;
using totcheck::arith::euler_phi;

TEST_CASE("target_value") {
  CHECK(target_value(CongruenceCase::SumPower, {1, 2, 3}) == 9);
  CHECK(target_value(CongruenceCase::SumQuotient, {1, 2, 5}) == 11);  // 33 / 3
  CHECK(target_value(CongruenceCase::DiffQuotient, {1, 2, 6}) == 63);
  CHECK(target_value(CongruenceCase::DiffPower, {2, 5, 4}) == 609);  // 625 - 16
  CHECK_THROWS_WITH_AS(target_value(CongruenceCase::SumQuotient, {1, 2, 4}),
                       "identity requires odd n", std::invalid_argument);
  CHECK_THROWS_AS(target_value(CongruenceCase::SumPower, {0, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(target_value(CongruenceCase::SumPower, {2, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(target_value(CongruenceCase::SumPower, {3, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(target_value(CongruenceCase::SumPower, {1, 2, 0}), std::invalid_argument);
}

TEST_CASE("reduce_to_coprime") {
  CaseParams r = reduce_to_coprime(CongruenceCase::SumPower, {2, 4, 3});
  CHECK(r.first == 1);
  CHECK(r.second == 2);
  CHECK(r.n == 3);

  r = reduce_to_coprime(CongruenceCase::DiffPower, {3, 5, 4});
  CHECK(r.first == 3);
  CHECK(r.second == 5);

  r = reduce_to_coprime(CongruenceCase::DiffQuotient, {6, 10, 5});
  CHECK(r.first == 3);
  CHECK(r.second == 5);

  // Reduced target divides the original target.
  Natural original = target_value(CongruenceCase::DiffQuotient, {6, 10, 5});
  Natural reduced = target_value(CongruenceCase::DiffQuotient, r);
  CHECK(original % reduced == 0);
}

TEST_CASE("verify_direct examples") {
  VerificationRecord rec = verify_direct(CongruenceCase::SumPower, {1, 2, 3});
  CHECK(rec.target == 9);
  CHECK(rec.status == Status::Verified);
  REQUIRE(rec.phi.has_value());
  CHECK(*rec.phi == 6);
  CHECK(*rec.residue == 0);

  rec = verify_direct(CongruenceCase::DiffPower, {1, 2, 11});
  CHECK(rec.target == 2047);
  CHECK(rec.status == Status::Verified);
  CHECK(*rec.phi == 1936);
  CHECK(*rec.residue == 0);

  rec = verify_direct(CongruenceCase::SumQuotient, {1, 2, 3});
  CHECK(rec.target == 3);
  CHECK(rec.status == Status::Counterexample);
  CHECK(*rec.phi == 2);
  CHECK(*rec.residue == 2);
}

TEST_CASE("verify_direct reports Unresolved when the budget is too small") {
  // 2^67 - 1 = 193707721 * 761838257287: both factors sit beyond trial
  // division, so a starved rho leaves the piece unsplit.
  VerificationRecord rec = verify_direct(CongruenceCase::DiffPower, {1, 2, 67}, 2);
  CHECK(rec.status == Status::Unresolved);
  CHECK_FALSE(rec.phi.has_value());

  rec = verify_direct(CongruenceCase::DiffPower, {1, 2, 67});
  CHECK(rec.status == Status::Verified);
  REQUIRE(rec.phi.has_value());
  CHECK(*rec.phi % 67 == 0);
}

TEST_CASE("witness_explicit reports Unresolved when the budget is too small") {
  auto q = witness_explicit(CongruenceCase::DiffPower, {1, 2, 67}, 2);
  CHECK_FALSE(q.has_value());
  q = witness_explicit(CongruenceCase::DiffPower, {1, 2, 67});
  REQUIRE(q.has_value());
  CHECK(*q == 193707721);
  CHECK((*q - 1) % 67 == 0);
}

TEST_CASE("witness_existence examples") {
  ExistenceResult er = witness_existence(CongruenceCase::SumQuotient, {1, 2, 5});
  CHECK(er.phi_index == 10);
  CHECK(er.phi_value == 11);
  CHECK(er.stripped == 11);
  CHECK(er.exists);
  CHECK_FALSE(er.exceptional);

  er = witness_existence(CongruenceCase::DiffQuotient, {1, 2, 6});
  CHECK(er.phi_index == 6);
  CHECK(er.phi_value == 3);
  CHECK(er.stripped == 1);
  CHECK_FALSE(er.exists);
  CHECK(er.exceptional);

  er = witness_existence(CongruenceCase::DiffPower, {2, 5, 4});
  CHECK(er.phi_index == 4);
  CHECK(er.phi_value == 29);  // 25 + 4
  CHECK(er.stripped == 29);
  CHECK(er.exists);

  CHECK_THROWS_WITH_AS(witness_existence(CongruenceCase::SumPower, {1, 2, 2}),
                       "use direct mode", std::invalid_argument);
  CHECK_THROWS_WITH_AS(witness_existence(CongruenceCase::SumPower, {2, 4, 5}),
                       "reduce first", std::invalid_argument);
}

TEST_CASE("the potentially exceptional n=3 instance settles as existing") {
  // Phi_3(2,1) = 7 == 1 (mod 3): the stripped part survives.
  ExistenceResult er = witness_existence(CongruenceCase::DiffPower, {1, 2, 3});
  CHECK(er.phi_index == 3);
  CHECK(er.phi_value == 7);
  CHECK(er.stripped == 7);
  CHECK(er.exists);
  CHECK_FALSE(er.exceptional);
}

TEST_CASE("witness_explicit examples") {
  auto q = witness_explicit(CongruenceCase::SumQuotient, {1, 2, 5});
  REQUIRE(q.has_value());
  CHECK(*q == 11);  // (2^5 + 1)/3

  q = witness_explicit(CongruenceCase::DiffPower, {1, 2, 11});
  REQUIRE(q.has_value());
  CHECK(*q == 23);  // 23 | 2047, 23 == 1 (mod 11)

  q = witness_explicit(CongruenceCase::SumPower, {1, 2, 11});
  REQUIRE(q.has_value());
  CHECK(*q == 683);  // 2^11 + 1 = 3 * 683, 683 = 62*11 + 1
  CHECK((*q - 1) % 11 == 0);

  CHECK_THROWS_WITH_AS(witness_explicit(CongruenceCase::DiffQuotient, {1, 2, 6}),
                       "no witness in cyclotomic part", std::domain_error);
}

TEST_CASE("order_check examples") {
  OrderCertificate cert = order_check(1, 2, 3);
  CHECK(cert.modulus == 9);
  CHECK(cert.element == 2);
  CHECK(cert.claimed_order == 6);
  CHECK(cert.holds);

  cert = order_check(1, 2, 1);
  CHECK(cert.modulus == 3);
  CHECK(cert.element == 2);
  CHECK(cert.claimed_order == 2);
  CHECK(cert.holds);

  cert = order_check(2, 3, 2);
  CHECK(cert.modulus == 13);
  CHECK(cert.element == 8);  // 3 * inverse(2) mod 13 = 3 * 7 mod 13
  CHECK(cert.claimed_order == 4);
  CHECK(cert.holds);

  CHECK_THROWS_WITH_AS(order_check(2, 4, 3), "reduce first", std::invalid_argument);
}

TEST_CASE("order certificates strengthen to 2n | phi(N)") {
  for (unsigned long x = 1; x <= 6; ++x) {
    for (unsigned long y = x + 1; y <= 7; ++y) {
      if (std::gcd(x, y) != 1) continue;
      for (unsigned long n = 1; n <= 6; ++n) {
        OrderCertificate cert = order_check(x, y, n);
        CHECK(cert.holds);
        VerificationRecord rec = verify_direct(CongruenceCase::SumPower, {x, y, n});
        REQUIRE(rec.status == Status::Verified);
        CHECK(*rec.phi % (2 * n) == 0);
      }
    }
  }
}

TEST_CASE("family_case") {
  auto [mc, mp] = family_case({Family::Mersenne, 2, 11});
  CHECK(mc == CongruenceCase::DiffPower);
  CHECK(mp.first == 1);
  CHECK(mp.second == 2);
  CHECK(target_value(mc, mp) == 2047);

  auto [cc, cp] = family_case({Family::CunninghamPlus, 2, 11});
  CHECK(cc == CongruenceCase::SumPower);
  CHECK(target_value(cc, cp) == 2049);

  auto [rc, rp] = family_case({Family::Repunit, 10, 5});
  CHECK(rc == CongruenceCase::DiffQuotient);
  CHECK(target_value(rc, rp) == 11111);

  CHECK_THROWS_AS(family_case({Family::Repunit, 1, 5}), std::invalid_argument);
  CHECK_THROWS_AS(family_case({Family::Mersenne, 3, 5}), std::invalid_argument);
}

TEST_CASE("family targets match the closed forms") {
  for (unsigned long base = 2; base <= 7; ++base) {
    for (unsigned long n = 1; n <= 10; ++n) {
      auto [pc, pp] = family_case({Family::CunninghamPlus, base, n});
      CHECK(target_value(pc, pp) == pow_nat(base, n) + 1);
      auto [mc2, mp2] = family_case({Family::CunninghamMinus, base, n});
      CHECK(target_value(mc2, mp2) == pow_nat(base, n) - 1);
      auto [rc2, rp2] = family_case({Family::Repunit, base, n});
      CHECK(target_value(rc2, rp2) == (pow_nat(base, n) - 1) / (base - 1));
    }
  }
}

TEST_CASE("verify_instance existence mode") {
  VerificationRecord rec =
      verify_instance(CongruenceCase::SumQuotient, {1, 2, 5}, Mode::Existence);
  CHECK(rec.status == Status::Verified);
  CHECK(rec.mode == Mode::Existence);
  CHECK_FALSE(rec.phi.has_value());

  // n <= 2 falls back to the direct check.
  rec = verify_instance(CongruenceCase::SumPower, {1, 2, 2}, Mode::Existence);
  CHECK(rec.status == Status::Verified);
  CHECK(rec.mode == Mode::Direct);
  CHECK(*rec.residue == 0);

  // The documented exception settles directly and is flagged.
  rec = verify_instance(CongruenceCase::DiffQuotient, {1, 2, 6}, Mode::Existence);
  CHECK(rec.status == Status::Exceptional);
  CHECK(rec.mode == Mode::Direct);
  CHECK(*rec.phi == 36);  // phi(63)
  CHECK(*rec.residue == 0);

  // Non-reduced instances reduce internally; (3,6) reduces to (1,2).
  rec = verify_instance(CongruenceCase::SumPower, {3, 6, 3}, Mode::Existence);
  CHECK(rec.status == Status::Exceptional);
  CHECK(rec.target == 243);
  CHECK(*rec.residue == 0);
}

TEST_CASE("verify_instance explicit mode") {
  VerificationRecord rec =
      verify_instance(CongruenceCase::SumQuotient, {1, 2, 5}, Mode::Explicit);
  CHECK(rec.status == Status::WitnessFound);
  REQUIRE(rec.witness.has_value());
  CHECK(*rec.witness == 11);
  CHECK(rec.target % *rec.witness == 0);

  // 3 <= n < 5 is outside the witness theorem's stated scope.
  rec = verify_instance(CongruenceCase::DiffPower, {1, 2, 4}, Mode::Explicit);
  CHECK(rec.status == Status::ExtraScope);
  REQUIRE(rec.witness.has_value());
  CHECK((*rec.witness - 1) % 4 == 0);

  // Witness transfers from the reduced instance to the original target.
  rec = verify_instance(CongruenceCase::DiffPower, {2, 10, 5}, Mode::Explicit);
  CHECK(rec.status == Status::WitnessFound);
  REQUIRE(rec.witness.has_value());
  CHECK(rec.target == pow_nat(10, 5) - pow_nat(2, 5));
  CHECK(rec.target % *rec.witness == 0);
  CHECK((*rec.witness - 1) % 5 == 0);
}

TEST_CASE("witness implies direct verification agrees") {
  for (unsigned long n = 3; n <= 9; ++n) {
    for (unsigned long first = 1; first <= 5; ++first) {
      for (unsigned long second = first + 1; second <= 6; ++second) {
        for (CongruenceCase c : kAllCases) {
          if (c == CongruenceCase::SumQuotient && n % 2 == 0) continue;
          VerificationRecord explicit_rec = verify_instance({c}, {first, second, n}, Mode::Explicit);
          if (explicit_rec.status != Status::WitnessFound &&
              explicit_rec.status != Status::ExtraScope) {
            continue;
          }
          if (!explicit_rec.witness.has_value()) continue;
          Natural q = *explicit_rec.witness;
          CHECK((q - 1) % n == 0);
          CHECK(explicit_rec.target % q == 0);
          VerificationRecord direct_rec = verify_direct(c, {first, second, n});
          REQUIRE(direct_rec.status == Status::Verified);
        }
      }
    }
  }
}

TEST_CASE("existence soundness at desk scale") {
  for (unsigned long n = 3; n <= 10; ++n) {
    for (unsigned long first = 1; first <= 4; ++first) {
      for (unsigned long second = first + 1; second <= 5; ++second) {
        if (std::gcd(first, second) != 1) continue;
        for (CongruenceCase c : kAllCases) {
          if (c == CongruenceCase::SumQuotient && n % 2 == 0) continue;
          ExistenceResult er = witness_existence(c, {first, second, n});
          if (!er.exists) continue;
          auto f = factorize(er.stripped);
          REQUIRE(f.complete);
          for (const auto& pp : f.factors) {
            CHECK(pp.prime % er.phi_index == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("reduction transport") {
  for (unsigned long g = 2; g <= 4; ++g) {
    for (unsigned long n = 1; n <= 6; ++n) {
      CaseParams scaled{g, 2 * g, n};
      CaseParams reduced = reduce_to_coprime(CongruenceCase::SumPower, scaled);
      VerificationRecord reduced_rec = verify_direct(CongruenceCase::SumPower, reduced);
      REQUIRE(reduced_rec.status == Status::Verified);
      VerificationRecord scaled_rec = verify_direct(CongruenceCase::SumPower, scaled);
      CHECK(scaled_rec.status == Status::Verified);
      CHECK(*scaled_rec.residue == 0);
    }
  }
}

TEST_CASE("explore_degenerate never reports a counterexample") {
  VerificationRecord rec = explore_degenerate(CongruenceCase::SumPower, 1, 3);
  CHECK(rec.status == Status::ExtraScope);
  CHECK(rec.target == 2);  // 1^3 + 1^3

  rec = explore_degenerate(CongruenceCase::SumQuotient, 3, 5);
  CHECK(rec.status == Status::ExtraScope);
  CHECK(rec.target == 81);  // (3^5 + 3^5) / 6 = 3^4

  rec = explore_degenerate(CongruenceCase::DiffPower, 4, 2);
  CHECK(rec.status == Status::ExtraScope);
  CHECK(rec.target == 0);
  CHECK_FALSE(rec.phi.has_value());
}

TEST_CASE("decompose product equals target_value everywhere") {
  for (CongruenceCase c : kAllCases) {
    for (unsigned long n = 1; n <= 8; ++n) {
      if (c == CongruenceCase::SumQuotient && n % 2 == 0) continue;
      for (unsigned long first = 1; first <= 4; ++first) {
        for (unsigned long second = first + 1; second <= 5; ++second) {
          const auto dec = cyclo::decompose(c, n, second, first);
          CHECK(dec.product == target_value(c, {first, second, n}));
        }
      }
    }
  }
}

TEST_CASE("mode and status names round-trip") {
  for (Mode m : {Mode::Direct, Mode::Existence, Mode::Explicit}) {
    CHECK(mode_from_name(mode_name(m)) == m);
  }
  for (Status s : {Status::Verified, Status::WitnessFound, Status::Counterexample,
                   Status::Unresolved, Status::ExtraScope, Status::Exceptional}) {
    CHECK(status_from_name(status_name(s)) == s);
  }
  CHECK_FALSE(mode_from_name("bogus").has_value());
  CHECK_FALSE(status_from_name("bogus").has_value());
}
