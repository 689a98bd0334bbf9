#pragma once

// Univariate polynomials over Q and exact root location: Sturm counts,
// unit-circle counts and the Schur-Cohn "all roots inside" test.

#include "rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace flatendo {

/// Coefficients stored constant term first; trailing zeros are stripped so the
/// zero polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  RatPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static RatPoly monomial(const Rational& a, std::size_t k) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = a;
    return RatPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const Rational& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational constant() const { return c_.empty() ? Rational(0) : c_.front(); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  RatPoly monic() const {
    if (is_zero()) return *this;
    RatPoly r(*this);
    Rational lead = leading();
    for (auto& x : r.c_) x /= lead;
    return r;
  }

  RatPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
    return RatPoly(std::move(d));
  }

  /// x^deg * p(1/x): the coefficient list reversed.
  RatPoly reciprocal() const { return RatPoly(std::vector<Rational>(c_.rbegin(), c_.rend())); }

  friend bool operator==(const RatPoly&, const RatPoly&) = default;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator-(const RatPoly& a) {
    RatPoly r(a);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator*(const Rational& s, const RatPoly& a) {
    RatPoly r(a);
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    if (a.degree() < b.degree()) return {RatPoly{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational f = rem[k + db] / b.c_[db];
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= f * b.c_[j];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& a = c_[k];
      if (a == 0) continue;
      Rational mag = abs(a);
      if (s.empty()) {
        if (a < 0) s += "-";
      } else {
        s += (a < 0) ? " - " : " + ";
      }
      bool unit = (mag == 1);
      if (!unit || k == 0) s += flatendo::to_string(Rational(mag));
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic greatest common divisor.
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  if (a.is_zero() && b.is_zero()) throw InputError("poly_gcd: both polynomials are zero");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r).monic();
  }
  return a.monic();
}

/// p / gcd(p, p'), monic.
inline RatPoly squarefree_part(const RatPoly& p) {
  if (p.is_zero()) throw InputError("squarefree_part of zero polynomial");
  if (p.degree() == 0) return RatPoly{Rational(1)};
  RatPoly g = poly_gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

namespace detail {

inline int sign_of(const Rational& x) { return sgn(x); }

inline std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    RatPoly r = -divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

inline int sign_variations(const std::vector<RatPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : seq) {
    int s = sign_of(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// Number of distinct real roots in the half-open interval (a, b].
inline int sturm_count(const RatPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw InputError("sturm_count: zero polynomial");
  if (!(a < b)) throw InputError("sturm_count: empty interval (a >= b)");
  if (p.degree() == 0) return 0;
  auto seq = detail::sturm_sequence(squarefree_part(p));
  return detail::sign_variations(seq, a) - detail::sign_variations(seq, b);
}

/// Number of distinct roots of p on the unit circle |z| = 1.
///
/// Works on the squarefree part s of p. Any unit-circle root of s is also a
/// root of its reciprocal, so it divides g = gcd(s, s*). After removing the
/// factors x, x - 1 and x + 1, g is palindromic of even degree 2m and
/// x^-m g(x) = r(x + 1/x) for a polynomial r of degree m. A root pair
/// (z, 1/z) lies on the circle exactly when y = z + 1/z is real in (-2, 2).
inline int unit_circle_root_count(const RatPoly& p) {
  if (p.is_zero()) throw InputError("unit_circle_root_count: zero polynomial");
  RatPoly s = squarefree_part(p);
  while (s.degree() > 0 && s.constant() == 0) s = divmod(s, RatPoly{Rational(0), Rational(1)}).first;
  if (s.degree() <= 0) return 0;

  RatPoly g = poly_gcd(s, s.reciprocal());
  int count = 0;
  for (int root : {1, -1}) {
    RatPoly lin{Rational(-root), Rational(1)};
    auto [q, r] = divmod(g, lin);
    if (r.is_zero()) {
      ++count;
      g = q.monic();
    }
  }
  if (g.degree() <= 0) return count;
  if (g.degree() % 2 != 0) throw InvariantError("unit_circle_root_count: self-reciprocal factor has odd degree");
  const std::size_t m = static_cast<std::size_t>(g.degree() / 2);
  for (std::size_t k = 0; k <= 2 * m; ++k)
    if (g[k] != g[2 * m - k]) throw InvariantError("unit_circle_root_count: factor is not palindromic");

  // P_0 = 2, P_1 = y, P_{k+1} = y P_k - P_{k-1} express x^k + x^-k in y.
  const RatPoly y{Rational(0), Rational(1)};
  RatPoly prev{Rational(2)}, cur = y;
  RatPoly r{g[m]};
  for (std::size_t k = 1; k <= m; ++k) {
    r = r + g[m + k] * cur;
    RatPoly next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  int inside = sturm_count(r, Rational(-2), Rational(2));
  if (r(Rational(2)) == 0) --inside;
  return count + 2 * inside;
}

/// True iff every root of p lies strictly inside the unit disk.
///
/// Schur-Cohn reduction: with a_0 = p(0) and a_n the leading coefficient,
/// |a_0| < |a_n| is necessary (the roots' moduli multiply to |a_0/a_n|), and
/// then p and (a_n p - a_0 p*) / x have the same number of roots inside the
/// disk after accounting for the removed root at 0. A step with
/// |a_0| >= |a_n| is decided exactly as "not all inside".
inline bool schur_cohn_all_inside(const RatPoly& p) {
  if (p.is_zero()) throw InputError("schur_cohn_all_inside: zero polynomial");
  RatPoly cur = p;
  while (cur.degree() > 0) {
    const Rational a0 = cur.constant();
    const Rational an = cur.leading();
    if (abs(a0) >= abs(an)) return false;
    RatPoly t = an * cur - a0 * cur.reciprocal();
    // Constant term of t vanishes; divide by x.
    std::vector<Rational> c(t.coefficients().begin() + 1, t.coefficients().end());
    cur = RatPoly(std::move(c));
  }
  return true;
}

}  // namespace flatendo
