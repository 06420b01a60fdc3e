#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torofree {

/// Exact rational numbers. Every coefficient in the library is one of these.
using Rational = mpq_class;

/// Inputs whose shapes do not fit together (rank mismatch, wrong vector length).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs that are well-formed but outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed text (polynomial literals, generator literals, rationals).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p", "p/q" into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// q^e for signed integer exponents; q must be nonzero when e < 0.
Rational pow(const Rational& q, long e);

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Loop degree r in Z^n.
using Degree = std::vector<int>;

}  // namespace torofree
