#include "levinf/scalar.hpp"

#include <cmath>
#include <ostream>

#include "levinf/error.hpp"

namespace levinf {

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw DomainError("division by zero");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  const mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar Scalar::operator-() const { return Scalar(-re_, -im_); }

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  if (a.is_real() && b.is_real()) {
    // mpq has no fused multiply-add; reuse one scratch value per thread.
    thread_local mpq_class scratch;
    mpq_mul(scratch.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
    mpq_add(re_.get_mpq_t(), re_.get_mpq_t(), scratch.get_mpq_t());
    return;
  }
  re_ += a.re_ * b.re_ - a.im_ * b.im_;
  im_ += a.re_ * b.im_ + a.im_ * b.re_;
}

double Scalar::norm2() const {
  const double r = re_.get_d();
  const double i = im_.get_d();
  return r * r + i * i;
}

double Scalar::abs() const { return std::sqrt(norm2()); }

std::string Scalar::to_string() const {
  if (is_real()) return format_rational(re_);
  return format_rational(re_) + (sgn(im_) < 0 ? "" : "+") + format_rational(im_) + "*i";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace {
bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}
}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in rational \"" + std::string(text) + "\"");
  }
  if (text.front() == '-') n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& q) { return q.get_str(10); }

}  // namespace levinf
