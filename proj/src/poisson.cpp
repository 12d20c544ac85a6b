#include "levinf/poisson.hpp"

#include "levinf/error.hpp"

namespace levinf {

PoissonTable::PoissonTable(std::size_t n, int max_degree, std::optional<std::size_t> levi_dim)
    : n_(n), max_degree_(max_degree), levi_dim_(levi_dim), entries_(n * (n > 0 ? n - 1 : 0) / 2, Polynomial(n)) {
  if (n > kMaxVariables) throw InputError("too many variables (limit 16)");
  if (max_degree < 1) throw InputError("truncation degree must be at least 1");
  if (levi_dim && *levi_dim > n) throw InputError("Levi block larger than the variable count");
}

PoissonTable PoissonTable::linear(const StructureConstants& c, int max_degree, std::optional<std::size_t> levi_dim) {
  PoissonTable t(c.dim(), max_degree, levi_dim);
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j) {
      Polynomial p(c.dim());
      for (std::size_t k = 0; k < c.dim(); ++k) p.add_term(Monomial::variable(k), c(i, j, k));
      t.set(i, j, p);
    }
  return t;
}

const Polynomial& PoissonTable::entry(std::size_t i, std::size_t j) const {
  if (i >= j || j >= n_) throw InputError("table entry index must satisfy i < j < n");
  return entries_[slot(i, j)];
}

Polynomial PoissonTable::bracket_of(std::size_t i, std::size_t j) const {
  if (i == j) return Polynomial(n_);
  return i < j ? entry(i, j) : -entry(j, i);
}

void PoissonTable::set(std::size_t i, std::size_t j, const Polynomial& p) {
  if (i == j || i >= n_ || j >= n_) throw InputError("table entry index out of range");
  if (p.nvars() != n_) throw InputError("bracket polynomial does not match the table variables");
  if (i < j)
    entries_[slot(i, j)] = truncate(p, max_degree_);
  else
    entries_[slot(j, i)] = -truncate(p, max_degree_);
}

namespace {

// sum_a {z_a, z_k} d_a p, truncated.
Polynomial bracket_with_coordinate(const PoissonTable& pi, const Polynomial& p, std::size_t k, int max_degree) {
  Polynomial out(pi.n());
  for (std::size_t a = 0; a < pi.n(); ++a) {
    if (a == k) continue;
    const Polynomial d = p.derivative(a);
    if (d.is_zero()) continue;
    out += multiply(pi.bracket_of(a, k), d, max_degree);
  }
  return out;
}

}  // namespace

Polynomial bracket(const PoissonTable& pi, const Polynomial& f, const Polynomial& g) {
  if (f.nvars() != pi.n() || g.nvars() != pi.n()) throw InputError("bracket arguments do not match the table variables");
  const int d = pi.max_degree();
  std::vector<Polynomial> df, dg;
  for (std::size_t i = 0; i < pi.n(); ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  Polynomial out(pi.n());
  for (std::size_t i = 0; i < pi.n(); ++i)
    for (std::size_t j = i + 1; j < pi.n(); ++j) {
      const Polynomial& p = pi.entry(i, j);
      if (p.is_zero()) continue;
      const int room = d - p.min_degree();
      Polynomial t = multiply(df[i], dg[j], room) - multiply(df[j], dg[i], room);
      if (!t.is_zero()) out += multiply(p, t, d);
    }
  return out;
}

std::vector<JacobiEntry> jacobiator(const PoissonTable& pi) {
  const std::size_t n = pi.n();
  const int d = pi.max_degree() - 1;
  std::vector<JacobiEntry> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Polynomial s = bracket_with_coordinate(pi, pi.bracket_of(i, j), k, d);
        s += bracket_with_coordinate(pi, pi.bracket_of(j, k), i, d);
        s += bracket_with_coordinate(pi, pi.bracket_of(k, i), j, d);
        out.push_back({{i, j, k}, truncate(s, d)});
      }
  return out;
}

std::optional<JacobiEntry> jacobi_violation(const PoissonTable& pi) {
  for (auto& e : jacobiator(pi))
    if (!e.value.is_zero()) return e;
  return std::nullopt;
}

StructureConstants linear_part(const PoissonTable& pi) {
  const std::size_t n = pi.n();
  StructureConstants c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Polynomial& p = pi.entry(i, j);
      if (!p.coefficient(Monomial{}).is_zero()) throw DomainError("Pi(0) != 0: constant term in a bracket");
      for (std::size_t k = 0; k < n; ++k) c.set_bracket(i, j, k, p.coefficient(Monomial::variable(k)));
    }
  if (!c.jacobi_violation().empty()) throw DomainError("linear part is not a Lie algebra (Jacobi fails at degree 1)");
  return c;
}

PolyMap hamiltonian_vf(const PoissonTable& pi, const Polynomial& f) {
  if (f.nvars() != pi.n()) throw InputError("function does not match the table variables");
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < pi.n(); ++j) comps.push_back(bracket_with_coordinate(pi, f, j, pi.max_degree()));
  return PolyMap(std::move(comps), MapRole::VectorField);
}

PoissonTable pushforward(const PoissonTable& pi, const PolyMap& phi, int max_degree) {
  return pushforward(pi, phi, invert_near_identity(phi, max_degree), max_degree);
}

PoissonTable pushforward(const PoissonTable& pi, const PolyMap& phi, const PolyMap& phi_inverse, int max_degree) {
  const std::size_t n = pi.n();
  if (phi.size() != n || phi.nvars() != n) throw InputError("coordinate change does not match the table");
  if (!phi.is_near_identity()) throw DomainError("coordinate change is not near-identity");
  const int d = max_degree;
  // jac[i][a] = d u_i / d z_a ; v[j][a] = {z_a, u_j} = sum_b pi_ab jac[j][b]
  std::vector<std::vector<Polynomial>> jac(n), v(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) jac[i].push_back(truncate(phi[i], d + 1).derivative(a));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t a = 0; a < n; ++a) {
      Polynomial s(n);
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || jac[j][b].is_zero()) continue;
        s += multiply(pi.bracket_of(a, b), jac[j][b], d);
      }
      v[j].push_back(std::move(s));
    }
  const Substitution back(phi_inverse, d);
  PoissonTable out(n, d, pi.levi_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Polynomial s(n);
      for (std::size_t a = 0; a < n; ++a) {
        if (jac[i][a].is_zero() || v[j][a].is_zero()) continue;
        s += multiply(jac[i][a], v[j][a], d);
      }
      out.set(i, j, back.apply(s));
    }
  return out;
}

}  // namespace levinf
