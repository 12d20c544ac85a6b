#pragma once

#include <gmpxx.h>

#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace levinf {

/// Exact element of Q(i). Rational data keeps a zero imaginary part, and the
/// arithmetic takes real-only fast paths in that case.
class Scalar {
 public:
  Scalar() = default;
  template <std::integral T>
  Scalar(T v) : re_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar ratio(long num, long den);
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return is_real() && re_ == 1; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Adds a*b in place; the hot loop of every product.
  void add_product(const Scalar& a, const Scalar& b);

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2 as a double.
  double norm2() const;
  double abs() const;

  /// "p/q" (or "p") for real values, "re+im*i" otherwise. Human-readable only.
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Strict parser for "p/q" or "p" with a nonzero denominator.
mpq_class parse_rational(std::string_view text);
/// Canonical "p/q" form; integers are written without a denominator.
std::string format_rational(const mpq_class& q);

}  // namespace levinf
