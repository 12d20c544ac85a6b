#include "levinf/polynomial.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstring>
#include <mutex>

#include "levinf/error.hpp"

namespace levinf {

Monomial::Monomial(std::span<const int> exponents) {
  if (exponents.size() > kMaxVariables) throw InputError("too many variables (limit 16)");
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

Monomial Monomial::variable(std::size_t index, int power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, int value) {
  if (i >= kMaxVariables) throw InputError("variable index out of range");
  if (value < 0 || value > kMaxExponent) throw InputError("exponent out of range");
  degree_ += value - exps_[i];
  exps_[i] = static_cast<std::uint8_t>(value);
}

int Monomial::partial_degree(std::size_t begin, std::size_t end) const {
  int d = 0;
  for (std::size_t i = begin; i < end && i < kMaxVariables; ++i) d += exps_[i];
  return d;
}

std::vector<int> Monomial::exponents(std::size_t nvars) const {
  return std::vector<int>(exps_.begin(), exps_.begin() + static_cast<std::ptrdiff_t>(nvars));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    const int e = a.exps_[i] + b.exps_[i];
    if (e > kMaxExponent) throw DomainError("exponent overflow");
    m.exps_[i] = static_cast<std::uint8_t>(e);
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

bool graded_lex_less(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  return std::memcmp(b.exps_.data(), a.exps_.data(), kMaxVariables) < 0;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVariables) throw InputError("too many variables (limit 16)");
}

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) { return monomial(nvars, Monomial{}, c); }

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  return monomial(nvars, Monomial::variable(index), Scalar(1));
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
int Polynomial::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  for (std::size_t i = nvars_; i < kMaxVariables; ++i) {
    if (m[i] != 0) throw InputError("monomial uses a variable outside the polynomial's variable list");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same_variables(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw InputError("polynomial variable lists differ");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_variables(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_variables(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b, INT_MAX); }

bool operator==(const Polynomial& a, const Polynomial& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw InputError("derivative variable out of range");
  Polynomial d(nvars_);
  for (const auto& [m, c] : terms_) {
    const int e = m[var];
    if (e == 0) continue;
    Monomial dm = m;
    dm.set(var, e - 1);
    d.terms_.emplace_hint(d.terms_.end(), dm, c * Scalar(e));
  }
  return d;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) throw InputError("embedding does not fit the target variable list");
  Polynomial r(new_nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e;
    for (std::size_t i = 0; i < nvars_; ++i) e.set(offset + i, m[i]);
    r.terms_.emplace(e, c);
  }
  return r;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, int max_degree) {
  if (a.nvars() != b.nvars()) throw InputError("polynomial variable lists differ");
  Polynomial::TermMap acc;
  for (const auto& [ma, ca] : a.terms()) {
    const int room = max_degree - ma.degree();
    if (room < 0) break;
    for (const auto& [mb, cb] : b.terms()) {
      if (mb.degree() > room) break;
      acc[ma * mb].add_product(ca, cb);
    }
  }
  Polynomial p(a.nvars());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) p.add_term(m, c);
  }
  return p;
}

Polynomial truncate(const Polynomial& p, int max_degree) {
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > max_degree) break;
    r.add_term(m, c);
  }
  return r;
}

Polynomial window_part(const Polynomial& p, int lo, int hi) {
  Polynomial r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > hi) break;
    if (m.degree() > lo) r.add_term(m, c);
  }
  return r;
}

Polynomial homogeneous_part(const Polynomial& p, int degree) { return window_part(p, degree - 1, degree); }

PolyMap::PolyMap(std::vector<Polynomial> components, MapRole role) : components_(std::move(components)), role_(role) {
  for (const auto& c : components_) {
    if (c.nvars() != components_.front().nvars()) throw InputError("map components use different variable lists");
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<Polynomial> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
  return PolyMap(std::move(comps), MapRole::CoordinateChange);
}

std::size_t PolyMap::nvars() const { return components_.empty() ? 0 : components_.front().nvars(); }

bool PolyMap::is_near_identity() const {
  if (nvars() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(truncate(components_[i], 1) == Polynomial::variable(size(), i))) return false;
  }
  return true;
}

bool PolyMap::is_identity() const { return *this == identity(size()); }

PolyMap PolyMap::truncated(int max_degree) const {
  std::vector<Polynomial> comps;
  for (const auto& c : components_) comps.push_back(truncate(c, max_degree));
  return PolyMap(std::move(comps), role_);
}

bool operator==(const PolyMap& a, const PolyMap& b) { return a.components_ == b.components_; }

struct Substitution::Cache {
  std::mutex mutex;
  std::vector<Polynomial> shift;  // h_i = phi_i - z_i
  std::vector<int> shift_order;   // min degree of h_i, INT_MAX if zero
  std::map<Monomial, Polynomial, GradedLexOrder> powers;  // h^alpha
};

Substitution::Substitution(PolyMap phi, int max_degree, int min_source_degree)
    : phi_(std::move(phi)),
      max_degree_(max_degree),
      min_source_degree_(min_source_degree),
      cache_(std::make_unique<Cache>()) {
  const std::size_t n = phi_.size();
  if (phi_.nvars() != n && n != 0) throw InputError("substitution map must have one component per variable");
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial h = truncate(phi_[i] - Polynomial::variable(n, i), max_degree_ - std::max(1, min_source_degree_) + 1);
    cache_->shift_order.push_back(h.is_zero() ? INT_MAX : h.min_degree());
    cache_->shift.push_back(std::move(h));
  }
  cache_->powers.emplace(Monomial{}, Polynomial::constant(n, Scalar(1)));
}

Substitution::~Substitution() = default;
Substitution::Substitution(Substitution&&) noexcept = default;
Substitution& Substitution::operator=(Substitution&&) noexcept = default;

Polynomial Substitution::apply(const Polynomial& p) const {
  const std::size_t n = phi_.size();
  if (p.nvars() != n) throw InputError("substitution: dimension mismatch");
  if (!p.is_zero() && p.min_degree() < min_source_degree_)
    throw InputError("substitution: polynomial has terms below the declared lowest degree");
  const int D = max_degree_;
  Cache& cache = *cache_;

  auto power = [&](const Monomial& parent, std::size_t var) -> Polynomial {
    Monomial child = parent;
    child.set(var, parent[var] + 1);
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.powers.find(child);
    if (it != cache.powers.end()) return it->second;
    const Polynomial& base = cache.powers.at(parent);
    Polynomial pw = multiply(base, cache.shift[var], D);
    cache.powers.emplace(child, pw);
    return pw;
  };

  Polynomial result(n);
  // Taylor expansion p(z + h) = sum_alpha (1/alpha!) d^alpha p(z) h^alpha, with
  // alpha enumerated as nondecreasing variable sequences.
  auto visit = [&](auto&& self, const Monomial& alpha, std::size_t first, const Polynomial& deriv,
                   const Polynomial& hpow, const mpq_class& coef, int hord) -> void {
    if (alpha.degree() == 0) {
      result += deriv;
    } else {
      result += multiply(deriv, hpow, D) * Scalar(coef);
    }
    for (std::size_t i = first; i < n; ++i) {
      const int ord = cache.shift_order[i];
      if (ord == INT_MAX) continue;
      Polynomial d = deriv.derivative(i);
      if (d.is_zero()) continue;
      const int next_ord = hord + ord;
      if (next_ord + d.min_degree() > D) continue;
      d = truncate(d, D - next_ord);
      Polynomial next_pow = power(alpha, i);
      if (next_pow.is_zero()) continue;
      Monomial next_alpha = alpha;
      next_alpha.set(i, alpha[i] + 1);
      const mpq_class next_coef = coef / next_alpha[i];
      self(self, next_alpha, i, d, next_pow, next_coef, next_ord);
    }
  };
  visit(visit, Monomial{}, 0, truncate(p, D), cache.powers.at(Monomial{}), mpq_class(1), 0);
  return result;
}

Polynomial substitute(const Polynomial& p, const PolyMap& phi, int max_degree) {
  if (phi.size() != p.nvars()) throw InputError("substitution: map has " + std::to_string(phi.size()) +
                                                " components for " + std::to_string(p.nvars()) + " variables");
  return Substitution(phi, max_degree).apply(p);
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner, int max_degree) {
  if (outer.nvars() != inner.size()) throw InputError("composition: dimension mismatch");
  int lowest = INT_MAX;
  for (const auto& c : outer.components())
    if (!c.is_zero()) lowest = std::min(lowest, c.min_degree());
  Substitution sub(inner, max_degree, lowest == INT_MAX ? 0 : lowest);
  std::vector<Polynomial> comps;
  comps.reserve(outer.size());
  for (const auto& c : outer.components()) comps.push_back(sub.apply(c));
  return PolyMap(std::move(comps), outer.role());
}

PolyMap invert_near_identity(const PolyMap& phi, int max_degree, bool verify) {
  const std::size_t n = phi.size();
  if (!phi.is_near_identity()) throw DomainError("map is not near-identity (linear part must be the identity)");
  const PolyMap id = PolyMap::identity(n);
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < n; ++i) shift.push_back(truncate(phi[i] - id[i], max_degree));
  const PolyMap psi(shift, MapRole::CoordinateChange);

  int order = INT_MAX;  // lowest degree in psi
  for (const auto& c : shift)
    if (!c.is_zero()) order = std::min(order, c.min_degree());
  PolyMap g = id;
  if (order != INT_MAX) {
    // g <- Id - psi o g. When g is exact through degree e, the update is
    // exact through e + order - 1, so each pass runs at just that precision.
    const int gain = order - 1;
    for (int exact = gain; exact < max_degree;) {
      exact = std::min(max_degree, exact + gain);
      PolyMap psi_g = compose(psi.truncated(exact), g.truncated(exact), exact);
      std::vector<Polynomial> next;
      for (std::size_t i = 0; i < n; ++i) next.push_back(id[i] - psi_g[i]);
      g = PolyMap(std::move(next), MapRole::CoordinateChange);
    }
  }
  if (verify) {
    const PolyMap target = id.truncated(max_degree);
    if (!(compose(phi, g, max_degree) == target) || !(compose(g, phi.truncated(max_degree), max_degree) == target)) {
      throw InternalError("near-identity inversion failed its composition check");
    }
  }
  return g;
}

mpq_class l2_weight(const Monomial& m, std::size_t nvars) {
  if (nvars == 0) return mpq_class(1);
  mpz_class num = 1;
  mpz_class f;
  for (std::size_t i = 0; i < nvars; ++i) {
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m[i]));
    num *= f;
  }
  mpz_fac_ui(f.get_mpz_t(), nvars - 1);
  num *= f;
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(m.degree()) + nvars - 1);
  mpq_class w(num, den);
  w.canonicalize();
  return w;
}

double weighted_l2_norm(const Polynomial& p, double rho) {
  if (!(rho > 0)) throw InputError("radius must be positive");
  double sum = 0;
  for (const auto& [m, c] : p.terms()) {
    sum += l2_weight(m, p.nvars()).get_d() * c.norm2() * std::pow(rho, 2.0 * m.degree());
  }
  return std::sqrt(sum);
}

double majorant_sup_norm(const Polynomial& p, double rho) {
  if (!(rho > 0)) throw InputError("radius must be positive");
  double sum = 0;
  for (const auto& [m, c] : p.terms()) sum += c.abs() * std::pow(rho, m.degree());
  return sum;
}

}  // namespace levinf
