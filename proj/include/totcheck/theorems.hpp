#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "totcheck/arithmetic.hpp"
#include "totcheck/cases.hpp"
#include "totcheck/natural.hpp"

namespace totcheck::theorems {

// Instance parameters. Sum cases read (first, second) as (x, y); difference
// cases as (x, z). Always 1 <= first < second, n >= 1.
struct CaseParams {
  Natural first;
  Natural second;
  unsigned long n = 1;
};

// Throws std::invalid_argument on any violated parameter constraint.
void validate(CongruenceCase c, const CaseParams& p);

enum class Mode { Direct, Existence, Explicit };

enum class Status {
  Verified,        // n | phi(N) established
  WitnessFound,    // explicit prime q == 1 (mod n), q | N
  Counterexample,  // phi(N) mod n != 0 on a fully factored target
  Unresolved,      // factoring budget exhausted
  ExtraScope,      // computed outside the theorems' stated preconditions
  Exceptional,     // documented no-primitive-prime instance, settled directly
};

const char* mode_name(Mode m);
const char* status_name(Status s);
std::optional<Mode> mode_from_name(const std::string& name);
std::optional<Status> status_from_name(const std::string& name);

// One verified instance. `mode` records the mode that actually ran, which for
// small n or exceptional instances may be Direct even when the caller asked
// for Existence/Explicit.
struct VerificationRecord {
  CongruenceCase congruence_case = CongruenceCase::SumPower;
  CaseParams params;
  Natural target;
  Mode mode = Mode::Direct;
  Status status = Status::Unresolved;
  std::optional<Natural> witness;
  std::optional<Natural> phi;
  std::optional<Natural> residue;  // phi mod n, when phi is known
  double elapsed_ms = 0.0;
};

// Order of y/x modulo x^n + y^n, claimed to be exactly 2n.
struct OrderCertificate {
  Natural element;
  Natural modulus;
  unsigned long claimed_order = 0;
  bool holds = false;
};

// Outcome of the factoring-free witness certificate: Phi_m of the reduced
// instance with every factor of largest_prime_factor(m) stripped. Any prime
// left over is == 1 (mod m), so its presence alone settles n | phi(N).
struct ExistenceResult {
  unsigned long phi_index = 0;  // m = n or 2n
  Natural phi_value;            // Phi_m(a, b)
  Natural stripped;
  bool exists = false;
  bool exceptional = false;
};

enum class Family { Mersenne, CunninghamPlus, CunninghamMinus, Repunit };

struct FamilyCase {
  Family family = Family::Mersenne;
  Natural base = 2;
  unsigned long n = 1;
};

// Pluggable factorization, so the sweep harness can route through its cache.
using FactorFn = std::function<arith::Factorization(const Natural&, std::uint64_t)>;

// The congruence argument: x^n + y^n, z^n - x^n, or the exact quotient.
Natural target_value(CongruenceCase c, const CaseParams& p);

// Divides both parameters by their gcd. The reduced target divides the
// original one, so congruences and witnesses transfer back.
CaseParams reduce_to_coprime(CongruenceCase c, const CaseParams& p);

// Full check: factors the target piecewise through its cyclotomic
// decomposition, merges, and tests phi(N) mod n. Budget exhaustion on any
// piece yields Unresolved, never an error.
VerificationRecord verify_direct(CongruenceCase c, const CaseParams& p,
                                 std::uint64_t budget = arith::kDefaultRhoBudget,
                                 const FactorFn& factor = {});

// Factoring-free witness certificate. Requires reduced coprime params and
// n >= 3 (below that, direct mode is the tool).
ExistenceResult witness_existence(CongruenceCase c, const CaseParams& p);

// Smallest prime of the stripped cyclotomic part, or nullopt when the budget
// ran out before it factored completely. Requires reduced coprime params.
std::optional<Natural> witness_explicit(CongruenceCase c, const CaseParams& p,
                                        std::uint64_t budget = arith::kDefaultRhoBudget,
                                        const FactorFn& factor = {});

// Certifies that y/x has order exactly 2n modulo x^n + y^n.
OrderCertificate order_check(const Natural& x, const Natural& y, unsigned long n);

// Maps a special family onto its congruence case:
//   Mersenne        -> DiffPower(x=1, z=2)
//   CunninghamPlus  -> SumPower(x=1, y=base)
//   CunninghamMinus -> DiffPower(x=1, z=base)
//   Repunit         -> DiffQuotient(x=1, z=base)
std::pair<CongruenceCase, CaseParams> family_case(const FamilyCase& f);

// Mode dispatcher with the documented fallbacks: n <= 2 and the exceptional
// no-primitive-prime instances are settled directly; explicit-mode results
// with 3 <= n < 5 are flagged ExtraScope.
VerificationRecord verify_instance(CongruenceCase c, const CaseParams& p, Mode mode,
                                   std::uint64_t budget = arith::kDefaultRhoBudget,
                                   const FactorFn& factor = {});

// first == second exploration (CLI --allow-degenerate). Reported as
// ExtraScope, never as a counterexample.
VerificationRecord explore_degenerate(CongruenceCase c, const Natural& value, unsigned long n,
                                      std::uint64_t budget = arith::kDefaultRhoBudget);

}  // namespace totcheck::theorems
