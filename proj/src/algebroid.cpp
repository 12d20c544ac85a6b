#include "levinf/algebroid.hpp"

#include "levinf/error.hpp"

namespace levinf {

AlgebroidData::AlgebroidData(std::size_t rank, std::size_t base_dim, int max_degree)
    : rank_(rank),
      base_(base_dim),
      max_degree_(max_degree),
      bracket_(rank * (rank > 0 ? rank - 1 : 0) / 2 * rank, Polynomial(base_dim)),
      anchor_(rank * base_dim, Polynomial(base_dim)) {
  if (rank + base_dim > kMaxVariables) throw InputError("too many variables (limit 16)");
  if (max_degree < 1) throw InputError("truncation degree must be at least 1");
}

Polynomial AlgebroidData::bracket(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= rank_ || j >= rank_ || k >= rank_) throw InputError("section index out of range");
  if (i == j) return Polynomial(base_);
  return i < j ? bracket_[pair(i, j) * rank_ + k] : -bracket_[pair(j, i) * rank_ + k];
}

void AlgebroidData::set_bracket(std::size_t i, std::size_t j, std::size_t k, const Polynomial& p) {
  if (i == j || i >= rank_ || j >= rank_ || k >= rank_) throw InputError("section index out of range");
  if (p.nvars() != base_) throw InputError("bracket coefficient must be a base function");
  const Polynomial t = truncate(p, max_degree_ - 1);
  if (i < j)
    bracket_[pair(i, j) * rank_ + k] = t;
  else
    bracket_[pair(j, i) * rank_ + k] = -t;
}

void AlgebroidData::set_anchor(std::size_t i, std::size_t j, const Polynomial& p) {
  if (i >= rank_ || j >= base_) throw InputError("anchor index out of range");
  if (p.nvars() != base_) throw InputError("anchor coefficient must be a base function");
  anchor_[i * base_ + j] = truncate(p, max_degree_);
}

AlgebroidData action_algebroid(const StructureConstants& c, const std::vector<DenseMatrix>& b, int max_degree) {
  const std::size_t rank = c.dim();
  if (b.size() != rank) throw InputError("one anchor matrix per section is required");
  const std::size_t n = rank ? b[0].rows() : 0;
  AlgebroidData a(rank, n, max_degree);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j)
      for (std::size_t k = 0; k < rank; ++k)
        if (!c(i, j, k).is_zero()) a.set_bracket(i, j, k, Polynomial::constant(n, c(i, j, k)));
  for (std::size_t i = 0; i < rank; ++i) {
    if (b[i].rows() != n || b[i].cols() != n) throw InputError("anchor matrices must be square of the base dimension");
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial p(n);
      for (std::size_t k = 0; k < n; ++k) p.add_term(Monomial::variable(k), b[i](j, k));
      a.set_anchor(i, j, p);
    }
  }
  return a;
}

PoissonTable dual_poisson(const AlgebroidData& a, bool check) {
  const std::size_t rank = a.rank(), n = a.base_dim(), total = rank + n;
  PoissonTable pi(total, a.max_degree());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) {
      Polynomial p(total);
      for (std::size_t k = 0; k < rank; ++k) {
        const Polynomial coef = a.bracket(i, j, k);
        if (!coef.is_zero()) p += coef.embed(total, rank) * Polynomial::variable(total, k);
      }
      pi.set(i, j, p);
    }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial& q = a.anchor(i, j);
      if (check && !q.coefficient(Monomial{}).is_zero())
        throw DomainError("anchor does not vanish at the origin (section " + std::to_string(i) + ")");
      pi.set(i, rank + j, q.embed(total, rank));
    }
  if (check) {
    if (auto bad = jacobi_violation(pi))
      throw DomainError("not a Lie algebroid to order " + std::to_string(a.max_degree() - 1) +
                        ": jacobiator nonzero on (" + std::to_string(bad->index[0]) + ", " +
                        std::to_string(bad->index[1]) + ", " + std::to_string(bad->index[2]) + ")");
  }
  return pi;
}

bool check_fiberwise_linear(const PoissonTable& pi, std::size_t fiber_dim) {
  const std::size_t n = pi.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int want = (i < fiber_dim && j < fiber_dim) ? 1 : (i < fiber_dim || j < fiber_dim) ? 0 : -1;
      for (const auto& [mono, c] : pi.entry(i, j).terms())
        if (want < 0 || mono.partial_degree(0, fiber_dim) != want) return false;
    }
  return true;
}

namespace {

Polynomial restrict_to_base(const Polynomial& p, std::size_t rank, std::size_t n) {
  Polynomial out(n);
  for (const auto& [mono, c] : p.terms()) {
    if (mono.partial_degree(0, rank) != 0) throw InputError("expected a base function");
    Monomial m;
    for (std::size_t j = 0; j < n; ++j) m.set(j, mono[rank + j]);
    out.add_term(m, c);
  }
  return out;
}

}  // namespace

AlgebroidData algebroid_from_dual(const PoissonTable& pi, std::size_t rank) {
  if (rank > pi.n()) throw InputError("rank exceeds the table dimension");
  if (!check_fiberwise_linear(pi, rank)) throw DomainError("table is not fiberwise linear");
  const std::size_t n = pi.n() - rank;
  AlgebroidData a(rank, n, pi.max_degree());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) {
      std::vector<Polynomial> coefs(rank, Polynomial(pi.n()));
      for (const auto& [mono, c] : pi.entry(i, j).terms()) {
        std::size_t k = 0;
        while (mono[k] == 0) ++k;
        Monomial rest = mono;
        rest.set(k, 0);
        coefs[k].add_term(rest, c);
      }
      for (std::size_t k = 0; k < rank; ++k)
        if (!coefs[k].is_zero()) a.set_bracket(i, j, k, restrict_to_base(coefs[k], rank, n));
    }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set_anchor(i, j, restrict_to_base(pi.entry(i, rank + j), rank, n));
  return a;
}

PolyMap random_bundle_map(Rng& rng, std::size_t rank, std::size_t base_dim, int min_degree, int max_degree,
                          std::size_t terms) {
  if (min_degree < 2 || max_degree < min_degree) throw InputError("bundle perturbations start at degree 2");
  const std::size_t total = rank + base_dim;
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < rank; ++i) {
    Polynomial p = Polynomial::variable(total, i);
    if (base_dim > 0) {
      for (std::size_t t = 0; t < terms; ++t) {
        const Polynomial base = random_polynomial(rng, base_dim, min_degree - 1, max_degree - 1, 1).embed(total, rank);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, rank - 1)(rng);
        p += base * Polynomial::variable(total, k);
      }
    }
    comps.push_back(std::move(p));
  }
  for (std::size_t j = 0; j < base_dim; ++j)
    comps.push_back(Polynomial::variable(total, rank + j) +
                    random_polynomial(rng, base_dim, min_degree, max_degree, terms).embed(total, rank));
  return PolyMap(std::move(comps), MapRole::CoordinateChange);
}

bool is_bundle_map(const PolyMap& phi, std::size_t rank) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const int want = i < rank ? 1 : 0;
    for (const auto& [mono, c] : phi[i].terms())
      if (mono.partial_degree(0, rank) != want) return false;
  }
  return true;
}

LeviAlgebraData dual_levi_data(const AlgebroidData& a, const LeviAlgebraData& fiber) {
  const std::size_t rank = a.rank(), n = a.base_dim();
  if (fiber.n != rank) throw InputError("fiber algebra dimension differs from the algebroid rank");
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j)
      for (std::size_t k = 0; k < rank; ++k)
        if (!(a.bracket(i, j, k).coefficient(Monomial{}) == fiber.full(i, j, k)))
          throw DomainError("constant part of the bracket does not match the fiber algebra");
  const PoissonTable pi = dual_poisson(a, false);
  StructureConstants lin(rank + n);
  for (std::size_t i = 0; i < rank + n; ++i)
    for (std::size_t j = i + 1; j < rank + n; ++j) {
      const Polynomial& p = pi.entry(i, j);
      for (std::size_t k = 0; k < rank + n; ++k) lin.set_bracket(i, j, k, p.coefficient(Monomial::variable(k)));
    }
  return LeviAlgebraData(fiber.m, std::move(lin));
}

std::vector<std::string> levi_relation_failures(const AlgebroidData& a, const LeviAlgebraData& fiber) {
  std::vector<std::string> out;
  const std::size_t n = a.base_dim();
  for (std::size_t i = 0; i < fiber.m; ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j)
      for (std::size_t k = 0; k < a.rank(); ++k)
        if (!(a.bracket(i, j, k) == Polynomial::constant(n, fiber.full(i, j, k))))
          out.push_back("bracket of sections " + std::to_string(i) + ", " + std::to_string(j) +
                        " is not the linear one in component " + std::to_string(k));
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial& q = a.anchor(i, j);
      if (!q.is_zero() && (q.degree() != 1 || q.min_degree() != 1))
        out.push_back("anchor of section " + std::to_string(i) + " is not linear in direction " + std::to_string(j));
    }
  }
  return out;
}

AlgebroidLeviResult algebroid_levi_normalize(const AlgebroidData& a, const LeviAlgebraData& fiber,
                                             const LeviOptions& options) {
  const auto report = validate_levi_input(fiber);
  if (!report.ok()) throw DomainError("fiber algebra: " + report.violations.front());
  const LeviAlgebraData data = dual_levi_data(a, fiber);
  const PoissonTable pi = dual_poisson(a, true);
  LeviOptions opts = options;
  opts.fiber_dim = a.rank();
  AlgebroidLeviResult out;
  out.run = levi_normalize(pi, data, opts);
  out.normalized = algebroid_from_dual(out.run.normal_form, a.rank());
  out.bundle_map = is_bundle_map(out.run.phi, a.rank()) && is_bundle_map(out.run.phi_inverse, a.rank());
  if (out.run.verification.verified_degree == out.run.max_degree)
    out.relation_failures = levi_relation_failures(out.normalized, fiber);
  return out;
}

}  // namespace levinf
