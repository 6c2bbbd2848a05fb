#ifndef TCOAL_RATIONAL_HPP_
#define TCOAL_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace tcoal {

// Arbitrary-precision integers and reduced rationals (GMP).
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt factorial(std::uint64_t n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// C(n, k); zero when k < 0 or k > n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "num/den", or "num" when den == 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace tcoal

#endif  // TCOAL_RATIONAL_HPP_
