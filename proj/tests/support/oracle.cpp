#include "oracle.hpp"

#include <numeric>

namespace testsupport {

using namespace levinf;

namespace {
int degree_of(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }
}  // namespace

RefPoly RefPoly::from(const Polynomial& p) {
  RefPoly r;
  r.n = p.nvars();
  for (const auto& [m, c] : p.terms()) r.terms[m.exponents(p.nvars())] = c;
  return r;
}

Polynomial RefPoly::to() const {
  Polynomial p(n);
  for (const auto& [e, c] : terms) p.add_term(Monomial(e), c);
  return p;
}

RefPoly RefPoly::var(std::size_t n, std::size_t i) {
  RefPoly r;
  r.n = n;
  std::vector<int> e(n, 0);
  e[i] = 1;
  r.terms[e] = Scalar(1);
  return r;
}

RefPoly RefPoly::one(std::size_t n) {
  RefPoly r;
  r.n = n;
  r.terms[std::vector<int>(n, 0)] = Scalar(1);
  return r;
}

void RefPoly::add(const std::vector<int>& e, const Scalar& c) {
  auto it = terms.find(e);
  if (it == terms.end()) {
    if (!c.is_zero()) terms.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

RefPoly RefPoly::operator+(const RefPoly& o) const {
  RefPoly r = *this;
  for (const auto& [e, c] : o.terms) r.add(e, c);
  return r;
}

RefPoly RefPoly::operator-(const RefPoly& o) const { return *this + o.scaled(Scalar(-1)); }

RefPoly RefPoly::scaled(const Scalar& s) const {
  RefPoly r;
  r.n = n;
  if (s.is_zero()) return r;
  for (const auto& [e, c] : terms) r.terms[e] = c * s;
  return r;
}

RefPoly RefPoly::derivative(std::size_t i) const {
  RefPoly r;
  r.n = n;
  for (const auto& [e, c] : terms) {
    if (e[i] == 0) continue;
    std::vector<int> f = e;
    --f[i];
    r.add(f, c * Scalar(e[i]));
  }
  return r;
}

RefPoly RefPoly::mul(const RefPoly& o, int max_degree) const {
  RefPoly r;
  r.n = n;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : o.terms) {
      std::vector<int> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = a[i] + b[i];
      if (max_degree >= 0 && degree_of(e) > max_degree) continue;
      r.add(e, ca * cb);
    }
  return r;
}

RefPoly RefPoly::truncated(int max_degree) const {
  RefPoly r;
  r.n = n;
  for (const auto& [e, c] : terms)
    if (degree_of(e) <= max_degree) r.terms[e] = c;
  return r;
}

Scalar evaluate(const Polynomial& p, const std::vector<Scalar>& point) {
  Scalar total;
  for (const auto& [m, c] : p.terms()) {
    Scalar t = c;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

RefPoly ref_substitute(const RefPoly& p, const std::vector<RefPoly>& phi, int max_degree) {
  const std::size_t n = phi.empty() ? 0 : phi[0].n;
  RefPoly out;
  out.n = n;
  for (const auto& [e, c] : p.terms) {
    RefPoly t = RefPoly::one(n);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t = t.mul(phi[i], max_degree);
    out = out + t.scaled(c);
  }
  return out;
}

PolyMap ref_compose(const PolyMap& outer, const PolyMap& inner, int max_degree) {
  std::vector<RefPoly> phi;
  for (const auto& c : inner.components()) phi.push_back(RefPoly::from(c));
  std::vector<Polynomial> out;
  for (const auto& c : outer.components())
    out.push_back(ref_substitute(RefPoly::from(c), phi, max_degree).truncated(max_degree).to());
  return PolyMap(std::move(out), outer.role());
}

RefPoly ref_bracket(const PoissonTable& pi, const RefPoly& f, const RefPoly& g, int max_degree) {
  const std::size_t n = pi.n();
  RefPoly out;
  out.n = n;
  std::vector<RefPoly> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || df[i].terms.empty() || dg[j].terms.empty()) continue;
      const RefPoly pij = RefPoly::from(pi.bracket_of(i, j));
      out = out + df[i].mul(dg[j], max_degree).mul(pij, max_degree);
    }
  return out;
}

bool ref_is_poisson(const PoissonTable& pi) {
  const std::size_t n = pi.n();
  const int d = pi.max_degree() - 1;
  std::vector<RefPoly> z;
  for (std::size_t i = 0; i < n; ++i) z.push_back(RefPoly::var(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const RefPoly pij = RefPoly::from(pi.entry(i, j));
        const RefPoly pjk = RefPoly::from(pi.entry(j, k));
        const RefPoly pki = RefPoly::from(pi.bracket_of(k, i));
        const RefPoly j3 = ref_bracket(pi, pij, z[k], d) + ref_bracket(pi, pjk, z[i], d) + ref_bracket(pi, pki, z[j], d);
        if (!j3.truncated(d).terms.empty()) return false;
      }
  return true;
}

PoissonTable ref_pushforward(const PoissonTable& pi, const PolyMap& phi, const PolyMap& phi_inverse, int max_degree) {
  const std::size_t n = pi.n();
  std::vector<RefPoly> u, back;
  for (std::size_t i = 0; i < n; ++i) {
    u.push_back(RefPoly::from(phi[i]));
    back.push_back(RefPoly::from(phi_inverse[i]));
  }
  PoissonTable out(n, max_degree, pi.levi_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const RefPoly b = ref_bracket(pi, u[i], u[j], max_degree);
      out.set(i, j, ref_substitute(b, back, max_degree).truncated(max_degree).to());
    }
  return out;
}

DenseMatrix ref_killing(const StructureConstants& c) {
  const std::size_t n = c.dim();
  std::vector<DenseMatrix> ad(n, DenseMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) ad[i](k, j) = c(i, j, k);
  DenseMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const DenseMatrix p = ad[i] * ad[j];
      Scalar tr;
      for (std::size_t r = 0; r < n; ++r) tr += p(r, r);
      k(i, j) = tr;
    }
  return k;
}

RefPoly ref_act(const LeviAlgebraData& d, std::size_t g, const RefPoly& p) {
  RefPoly out;
  out.n = p.n;
  for (std::size_t j = 0; j < d.n; ++j) {
    const RefPoly dp = p.derivative(j);
    if (dp.terms.empty()) continue;
    for (std::size_t k = 0; k < d.n; ++k)
      if (!d.full(g, j, k).is_zero()) out = out + dp.mul(RefPoly::var(p.n, k)).scaled(d.full(g, j, k));
  }
  return out;
}

}  // namespace testsupport
