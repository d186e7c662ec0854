#include "totcheck/natural.hpp"

#include <stdexcept>

namespace totcheck {

Natural parse_natural(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument("not a non-negative integer: " + text);
    }
  }
  return Natural(text, 10);
}

std::string to_decimal(const Natural& n) { return n.get_str(10); }

Natural pow_nat(const Natural& base, unsigned long exp) {
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace totcheck
