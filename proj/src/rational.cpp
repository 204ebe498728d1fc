#include "qls/rational.hpp"

namespace qls {

Int int_pow(const Int& base, unsigned long exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Int factorial(unsigned long k) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

Int falling(const Int& n, unsigned long k) {
  Int out = 1;
  Int term = n;
  for (unsigned long i = 0; i < k; ++i) {
    out *= term;
    term -= 1;
  }
  return out;
}

Int binomial(unsigned long n, unsigned long k) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (exp < 0) {
    if (base == 0) fail("DivisionByZero", "rat_pow: 0 to a negative power");
    return Rat(1) / rat_pow(base, -exp);
  }
  Rat out = 1;
  Rat b = base;
  unsigned long e = static_cast<unsigned long>(exp);
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) fail("BadRational", "cannot parse '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace qls
