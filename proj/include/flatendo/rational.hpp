#pragma once

// Exact scalars. Integers and rationals are GMP-backed; mpq_class keeps every
// value canonical (lowest terms, positive denominator) after each operation.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatendo {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown for malformed user input (bad files, dimension mismatches, etc).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a computed result violates an invariant the library promises.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Accepts "p", "-p", "p/q", "-p/q" with optional surrounding whitespace.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw InputError("empty integer in rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InputError("bad integer literal '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw InputError("bad integer literal '" + std::string(s) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(trim(text.substr(0, slash)));
  Integer den = parse_int(trim(text.substr(slash + 1)));
  return make_rational(num, den);
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Largest integer <= r.
inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace flatendo
