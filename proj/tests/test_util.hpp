#pragma once

#include <flatendo/matrix.hpp>

#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace flatendo::testing {

inline Rational Q(std::string_view s) { return parse_rational(s); }
inline Rational Q(int n) { return Rational(n); }
inline Rational Q(long n) { return Rational(n); }
inline Rational Q(long p, long q) { return make_rational(Integer(p), Integer(q)); }

inline RatVector V(std::initializer_list<Rational> xs) { return RatVector(xs); }
inline IntVector Z(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix IM(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> r;
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return IntMatrix::from_rows(r, cols);
}

inline RatMatrix RM(std::initializer_list<std::initializer_list<long>> rows) { return to_rational(IM(rows)); }

/// Deterministic source for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rational rational(long range = 9, long max_den = 6) {
    return make_rational(Integer(integer(-range, range)), Integer(integer(1, max_den)));
  }
  IntMatrix int_matrix(std::size_t r, std::size_t c, long lo, long hi) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(lo, hi);
    return m;
  }
  RatMatrix rat_matrix(std::size_t r, std::size_t c) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational();
    return m;
  }
  RatVector rat_vector(std::size_t n) {
    RatVector v(n);
    for (auto& x : v) x = rational();
    return v;
  }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace flatendo::testing
