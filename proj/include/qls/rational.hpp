#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qls {

using Int = mpz_class;
using Rat = mpq_class;

/// Error with a stable machine-readable code ("NotLatin", "BudgetExceeded", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
  throw Error(std::move(code), msg);
}

Int int_pow(const Int& base, unsigned long exp);
Int factorial(unsigned long k);
Int falling(const Int& n, unsigned long k);  // (n)_k = n(n-1)...(n-k+1)
Int binomial(unsigned long n, unsigned long k);

// base^exp with negative exponents allowed (base != 0 in that case)
Rat rat_pow(const Rat& base, long exp);

// "p/q" (denominator omitted when 1); parse accepts both forms
std::string rat_str(const Rat& q);
Rat rat_parse(const std::string& s);

inline double rat_double(const Rat& q) { return q.get_d(); }

}  // namespace qls
