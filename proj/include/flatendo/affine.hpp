#pragma once

// Elements of Aff(R^n) = R^n x| GL_n(R): pairs (d, delta) acting by x -> d + delta x.

#include "matrix.hpp"

#include <string>
#include <utility>

namespace flatendo {

class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(RatVector translation, RatMatrix linear)
      : translation_(std::move(translation)), linear_(std::move(linear)) {
    if (!linear_.is_square() || linear_.rows() != translation_.size())
      throw InputError("affine map: translation length and linear part size differ");
    if (determinant(linear_) == 0) throw InputError("affine map: linear part is singular");
  }

  static AffineMap identity(std::size_t n) {
    return AffineMap(RatVector(n, Rational(0)), RatMatrix::identity(n));
  }
  static AffineMap translation(RatVector t) {
    const std::size_t n = t.size();
    return AffineMap(std::move(t), RatMatrix::identity(n));
  }
  static AffineMap linear(RatMatrix m) {
    const std::size_t n = m.rows();
    return AffineMap(RatVector(n, Rational(0)), std::move(m));
  }

  std::size_t dim() const { return translation_.size(); }
  const RatVector& translation_part() const { return translation_; }
  const RatMatrix& linear_part() const { return linear_; }
  bool is_pure_linear() const { return is_zero_vector(translation_); }
  bool is_pure_translation() const { return linear_ == RatMatrix::identity(dim()); }

  RatVector apply(const RatVector& x) const {
    if (x.size() != dim()) throw InputError("apply: point dimension mismatch");
    return translation_ + linear_ * x;
  }
  RatVector operator()(const RatVector& x) const { return apply(x); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

  std::string to_string() const {
    return "(" + flatendo::to_string(translation_) + ", " + flatendo::to_string(linear_) + ")";
  }

 private:
  struct Unchecked {};
  AffineMap(Unchecked, RatVector t, RatMatrix m) : translation_(std::move(t)), linear_(std::move(m)) {}

  friend AffineMap compose(const AffineMap& f, const AffineMap& g);
  friend AffineMap inverse(const AffineMap& f);

  RatVector translation_;
  RatMatrix linear_;
};

/// (d1, D1) o (d2, D2) = (d1 + D1 d2, D1 D2).
inline AffineMap compose(const AffineMap& f, const AffineMap& g) {
  if (f.dim() != g.dim()) throw InputError("compose: dimension mismatch");
  return AffineMap(AffineMap::Unchecked{}, f.translation_ + f.linear_ * g.translation_,
                   f.linear_ * g.linear_);
}

inline AffineMap operator*(const AffineMap& f, const AffineMap& g) { return compose(f, g); }

/// (d, D)^-1 = (-D^-1 d, D^-1).
inline AffineMap inverse(const AffineMap& f) {
  RatMatrix inv = *flatendo::inverse(f.linear_);
  RatVector t = -(inv * f.translation_);
  return AffineMap(AffineMap::Unchecked{}, std::move(t), std::move(inv));
}

/// alpha * g * alpha^-1.
inline AffineMap conjugate(const AffineMap& alpha, const AffineMap& g) {
  return compose(compose(alpha, g), inverse(alpha));
}

inline AffineMap power(const AffineMap& f, unsigned k) {
  AffineMap r = AffineMap::identity(f.dim());
  for (unsigned i = 0; i < k; ++i) r = compose(r, f);
  return r;
}

}  // namespace flatendo
