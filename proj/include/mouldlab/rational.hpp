#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mouldlab {

// Exact rationals. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation, but mpq_class(n, d) does not
// reduce; call canonicalize() unless n/d is already in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised when a truncated object is asked for information beyond its bound.
class BoundError : public Error {
 public:
  BoundError(const std::string& what, int required)
      : Error(what + " (required bound " + std::to_string(required) + ")"),
        required_(required) {}
  int required() const noexcept { return required_; }

 private:
  int required_;
};

inline Rational make_rational(long num, unsigned long den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Rational inverse_factorial(unsigned n) { return Rational(Integer(1), factorial(n)); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "-p", "p/q" with optional leading '+'.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw DomainError("invalid rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

}  // namespace mouldlab
