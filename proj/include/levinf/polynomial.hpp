#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "levinf/scalar.hpp"

namespace levinf {

inline constexpr std::size_t kMaxVariables = 16;
inline constexpr int kMaxExponent = 255;

/// Exponent vector. Only the first `nvars` slots of the owning polynomial are
/// meaningful; the remaining ones stay zero.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const int> exponents);

  static Monomial variable(std::size_t index, int power = 1);

  int operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, int value);
  int degree() const { return degree_; }
  /// Sum of exponents over the index range [begin, end).
  int partial_degree(std::size_t begin, std::size_t end) const;

  std::vector<int> exponents(std::size_t nvars) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  /// Graded-lex: lower total degree first; within a degree, larger exponents
  /// of earlier variables first (so x-block powers precede y-block ones).
  friend bool graded_lex_less(const Monomial& a, const Monomial& b);

 private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
  int degree_ = 0;
};

struct GradedLexOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return graded_lex_less(a, b); }
};

/// Sparse multivariate polynomial with exact coefficients. No zero
/// coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedLexOrder>;

  explicit Polynomial(std::size_t nvars = 0);

  static Polynomial constant(std::size_t nvars, const Scalar& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(std::size_t nvars, const Monomial& m, const Scalar& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  /// Lowest total degree present; -1 for the zero polynomial.
  int min_degree() const;

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(std::size_t var) const;
  /// Re-expresses the polynomial in a larger variable list, variable i
  /// becoming variable offset + i.
  Polynomial embed(std::size_t new_nvars, std::size_t offset) const;

 private:
  void require_same_variables(const Polynomial& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Product with every term of degree > max_degree discarded (never formed).
Polynomial multiply(const Polynomial& a, const Polynomial& b, int max_degree);
/// Drops all terms of total degree > max_degree.
Polynomial truncate(const Polynomial& p, int max_degree);
/// Keeps the terms with lo < degree <= hi.
Polynomial window_part(const Polynomial& p, int lo, int hi);
Polynomial homogeneous_part(const Polynomial& p, int degree);

enum class MapRole { CoordinateChange, VectorField };

/// Tuple of polynomials over a common variable list.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::vector<Polynomial> components, MapRole role);

  static PolyMap identity(std::size_t n);

  std::size_t size() const { return components_.size(); }
  std::size_t nvars() const;
  MapRole role() const { return role_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  Polynomial& operator[](std::size_t i) { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }

  /// Component i = variable i + terms of degree >= 2.
  bool is_near_identity() const;
  bool is_identity() const;
  PolyMap truncated(int max_degree) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b);

 private:
  std::vector<Polynomial> components_;
  MapRole role_ = MapRole::CoordinateChange;
};

/// Reusable substitution p -> p(phi(z)) truncated at a fixed degree. The map
/// is written phi = Id + h and p(z + h) is expanded as a finite Taylor sum;
/// powers of h are cached across calls, so one instance serves a whole table.
class Substitution {
 public:
  /// When every polynomial passed to apply() has no terms below
  /// `min_source_degree`, terms of h above max_degree - min_source_degree + 1
  /// cannot contribute and are dropped up front.
  Substitution(PolyMap phi, int max_degree, int min_source_degree = 0);
  ~Substitution();
  Substitution(Substitution&&) noexcept;
  Substitution& operator=(Substitution&&) noexcept;

  Polynomial apply(const Polynomial& p) const;
  int max_degree() const { return max_degree_; }

 private:
  struct Cache;
  PolyMap phi_;
  int max_degree_;
  int min_source_degree_;
  std::unique_ptr<Cache> cache_;
};

/// p o phi truncated at max_degree.
Polynomial substitute(const Polynomial& p, const PolyMap& phi, int max_degree);
/// outer o inner, componentwise, truncated.
PolyMap compose(const PolyMap& outer, const PolyMap& inner, int max_degree);
/// Formal inverse of a near-identity map through max_degree. Both
/// compositions are checked against the identity when `verify` is set.
PolyMap invert_near_identity(const PolyMap& phi, int max_degree, bool verify = true);

/// sqrt( sum_a [a!(n-1)!/(|a|+n-1)!] |c_a|^2 rho^(2|a|) ), n = p.nvars().
double weighted_l2_norm(const Polynomial& p, double rho);
/// sum_a |c_a| rho^|a|, an upper bound for the sup-norm on the rho-ball.
double majorant_sup_norm(const Polynomial& p, double rho);
/// Exact weight a!(n-1)!/(|a|+n-1)! of the monomial in the L2 product.
mpq_class l2_weight(const Monomial& m, std::size_t nvars);

}  // namespace levinf
