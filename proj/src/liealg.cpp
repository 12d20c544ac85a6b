#include "levinf/liealg.hpp"

#include <sstream>

#include "levinf/error.hpp"

namespace levinf {

StructureConstants::StructureConstants(std::size_t dim) : dim_(dim), data_(dim * dim * dim) {}

void StructureConstants::set_bracket(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw InputError("structure constant index out of range");
  (*this)(i, j, k) = v;
  (*this)(j, i, k) = -v;
}

Vector StructureConstants::bracket(const Vector& x, const Vector& y) const {
  Vector r = zero_vector(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) {
        const Scalar& c = (*this)(i, j, k);
        if (!c.is_zero()) r[k].add_product(xy, c);
      }
    }
  }
  return r;
}

DenseMatrix StructureConstants::ad(std::size_t i) const {
  DenseMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = (*this)(i, j, k);
  return m;
}

StructureConstants StructureConstants::change_basis(const DenseMatrix& basis) const {
  if (basis.rows() != dim_ || basis.cols() != dim_) throw InputError("basis change has the wrong shape");
  const DenseMatrix inv = inverse(basis);
  StructureConstants out(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = a + 1; b < dim_; ++b) {
      const Vector v = inv.apply(bracket(basis.column(a), basis.column(b)));
      for (std::size_t k = 0; k < dim_; ++k) out.set_bracket(a, b, k, v[k]);
    }
  }
  return out;
}

bool StructureConstants::is_antisymmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (!((*this)(i, j, k) == -(*this)(j, i, k))) return false;
  return true;
}

std::vector<std::size_t> StructureConstants::jacobi_violation() const {
  auto unit = [&](std::size_t i) {
    Vector v = zero_vector(dim_);
    v[i] = Scalar(1);
    return v;
  };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Vector eij = bracket(unit(i), unit(j));
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vector s = bracket(eij, unit(k));
        axpy(Scalar(1), bracket(bracket(unit(j), unit(k)), unit(i)), s);
        axpy(Scalar(1), bracket(bracket(unit(k), unit(i)), unit(j)), s);
        if (!is_zero(s)) return {i, j, k};
      }
    }
  }
  return {};
}

LeviAlgebraData::LeviAlgebraData(std::size_t m_, StructureConstants constants)
    : n(constants.dim()), m(m_), full(std::move(constants)) {
  if (m > n) throw InputError("Levi factor dimension exceeds the algebra dimension");
}

StructureConstants LeviAlgebraData::levi_factor() const {
  StructureConstants g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) g(i, j, k) = full(i, j, k);
  return g;
}

ValidationReport validate_levi_input(const LeviAlgebraData& data) {
  if (data.full.dim() != data.n || data.m > data.n) throw InputError("structure constants have inconsistent dimensions");
  ValidationReport report;
  const auto& c = data.full;
  const std::size_t n = data.n;
  const std::size_t m = data.m;
  if (!c.is_antisymmetric()) report.violations.push_back("structure constants are not antisymmetric");
  if (auto bad = c.jacobi_violation(); !bad.empty()) {
    std::ostringstream os;
    os << "Jacobi identity fails on (" << bad[0] << ", " << bad[1] << ", " << bad[2] << ")";
    report.violations.push_back(os.str());
  }
  bool shape = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (c(i, j, k).is_zero()) continue;
        const bool gg = i < m && j < m;
        // [g,g] lands in g; everything touching r lands in r.
        if (gg != (k < m)) shape = false;
      }
  if (!shape) report.violations.push_back("brackets are not of the form g x r with r an ideal");

  // Module law for the a-block.
  bool module_law = true;
  for (std::size_t i = 0; i < m && module_law; ++i)
    for (std::size_t j = 0; j < m && module_law; ++j)
      for (std::size_t y = m; y < n && module_law; ++y) {
        for (std::size_t t = m; t < n; ++t) {
          Scalar lhs;
          for (std::size_t s = m; s < n; ++s) {
            lhs.add_product(c(j, y, s), c(i, s, t));
            lhs -= c(i, y, s) * c(j, s, t);
          }
          Scalar rhs;
          for (std::size_t k = 0; k < m; ++k) rhs.add_product(c(i, j, k), c(k, y, t));
          if (!(lhs == rhs)) {
            module_law = false;
            break;
          }
        }
      }
  if (!module_law) report.violations.push_back("a-block does not define a g-module");

  if (m > 0 && determinant(killing_form(data.levi_factor())).is_zero()) {
    report.violations.push_back("Levi factor not semisimple (degenerate Killing form)");
  }
  return report;
}

DenseMatrix killing_form(const StructureConstants& c) {
  const std::size_t d = c.dim();
  DenseMatrix k(d, d);
  // tr(ad_i ad_j) = sum_{a,b} C(j,a,b) C(i,b,a)
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Scalar t;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const Scalar& x = c(j, a, b);
          if (!x.is_zero()) t.add_product(x, c(i, b, a));
        }
      k(i, j) = t;
      k(j, i) = t;
    }
  return k;
}

std::vector<std::pair<std::size_t, Vector>> CasimirElement::pairs() const {
  std::vector<std::pair<std::size_t, Vector>> out;
  for (std::size_t i = 0; i < kinv.rows(); ++i) {
    Vector f(kinv.cols());
    for (std::size_t j = 0; j < kinv.cols(); ++j) f[j] = kinv(i, j);
    out.emplace_back(i, std::move(f));
  }
  return out;
}

CasimirElement casimir(const StructureConstants& c) {
  const DenseMatrix k = killing_form(c);
  if (c.dim() > 0 && determinant(k).is_zero()) throw DomainError("Levi factor not semisimple (degenerate Killing form)");
  return CasimirElement{c.dim() == 0 ? DenseMatrix() : inverse(k)};
}

SparseMatrix casimir_operator(const CasimirElement& gamma, const std::vector<SparseMatrix>& rho) {
  if (rho.size() != gamma.dim()) throw InputError("representation has the wrong number of generators");
  if (rho.empty()) return SparseMatrix();
  SparseMatrix total(rho[0].rows(), rho[0].cols());
  for (std::size_t j = 0; j < rho.size(); ++j) {
    // sum_i kinv(i,j) rho_i, then times rho_j
    SparseMatrix left(rho[0].rows(), rho[0].cols());
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (!gamma.kinv(i, j).is_zero()) left = left + rho[i].scaled(gamma.kinv(i, j));
    }
    total = total + left * rho[j];
  }
  return total;
}

namespace {

// Coordinates of the columns of `span` (assumed independent) solving span*x = v.
std::optional<Vector> coordinates(const EliminationSolver& solver, const Vector& v) { return solver.solve(v); }

DenseMatrix columns_to_matrix(const std::vector<Vector>& cols, std::size_t rows) {
  DenseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

std::vector<Vector> matrix_columns(const DenseMatrix& m) {
  std::vector<Vector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

// Basis (as columns) of the span of the given vectors.
std::vector<Vector> span_basis(const std::vector<Vector>& vs, std::size_t dim) {
  if (vs.empty()) return {};
  const DenseMatrix m = columns_to_matrix(vs, dim);
  std::vector<Vector> out;
  for (std::size_t p : row_reduce(m).pivots) out.push_back(vs[p]);
  return out;
}

std::vector<Vector> bracket_span(const StructureConstants& l, const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> vs;
  for (const auto& x : a)
    for (const auto& y : b) vs.push_back(l.bracket(x, y));
  return span_basis(vs, l.dim());
}

}  // namespace

LeviSplit levi_malcev_split(const StructureConstants& l) {
  const std::size_t n = l.dim();
  if (!l.is_antisymmetric() || !l.jacobi_violation().empty()) throw InputError("input is not a Lie algebra");
  std::vector<Vector> units;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = zero_vector(n);
    e[i] = Scalar(1);
    units.push_back(std::move(e));
  }

  // Radical: Killing-orthogonal complement of [L,L].
  const std::vector<Vector> derived = bracket_span(l, units, units);
  const DenseMatrix k = killing_form(l);
  std::vector<Vector> radical;
  if (derived.empty()) {
    radical = units;
  } else {
    const DenseMatrix constraints = columns_to_matrix(derived, n).transpose() * k;
    radical = matrix_columns(nullspace(constraints));
  }

  // Complement of the radical from unit vectors.
  std::vector<Vector> levi;
  {
    std::vector<Vector> current = radical;
    std::size_t r = radical.size();
    for (const auto& e : units) {
      current.push_back(e);
      if (rank(columns_to_matrix(current, n)) > r) {
        ++r;
        levi.push_back(e);
      } else {
        current.pop_back();
      }
    }
  }
  const std::size_t m = levi.size();

  if (m > 0) {
    // Structure constants of L/R in the chosen complement.
    std::vector<Vector> all = levi;
    all.insert(all.end(), radical.begin(), radical.end());
    const DenseMatrix all_m = columns_to_matrix(all, n);
    const DenseMatrix all_inv = inverse(all_m);
    StructureConstants gamma(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const Vector coords = all_inv.apply(l.bracket(levi[i], levi[j]));
        for (std::size_t t = 0; t < m; ++t) gamma.set_bracket(i, j, t, coords[t]);
      }

    auto defect = [&](std::size_t i, std::size_t j) {
      Vector d = l.bracket(levi[i], levi[j]);
      for (std::size_t t = 0; t < m; ++t)
        if (!gamma(i, j, t).is_zero()) axpy(-gamma(i, j, t), levi[t], d);
      return d;
    };

    // Derived series of the radical; each term is an ideal of L.
    std::vector<std::vector<Vector>> series{radical};
    while (!series.back().empty()) series.push_back(bracket_span(l, series.back(), series.back()));

    for (std::size_t step = 0; step + 1 < series.size(); ++step) {
      const auto& rk = series[step];
      const auto& rnext = series[step + 1];
      // Unknowns: r_i in R_k (m * |R_k| coords) plus slack in R_{k+1} per pair.
      const std::size_t npairs = m * (m - 1) / 2;
      const std::size_t nu = m * rk.size() + npairs * rnext.size();
      DenseMatrix sys(npairs * n, nu);
      Vector rhs(npairs * n);
      std::size_t p = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j, ++p) {
          const Vector d = defect(i, j);
          for (std::size_t t = 0; t < n; ++t) rhs[p * n + t] = -d[t];
          // [s_i, r_j] - [s_j, r_i] - sum gamma r_t
          for (std::size_t a = 0; a < rk.size(); ++a) {
            const Vector si_ra = l.bracket(levi[i], rk[a]);
            const Vector sj_ra = l.bracket(levi[j], rk[a]);
            for (std::size_t t = 0; t < n; ++t) {
              sys(p * n + t, j * rk.size() + a) += si_ra[t];
              sys(p * n + t, i * rk.size() + a) -= sj_ra[t];
            }
            for (std::size_t q = 0; q < m; ++q) {
              if (gamma(i, j, q).is_zero()) continue;
              for (std::size_t t = 0; t < n; ++t) sys(p * n + t, q * rk.size() + a) -= gamma(i, j, q) * rk[a][t];
            }
          }
          for (std::size_t a = 0; a < rnext.size(); ++a)
            for (std::size_t t = 0; t < n; ++t) sys(p * n + t, m * rk.size() + p * rnext.size() + a) = rnext[a][t];
        }
      const auto sol = coordinates(EliminationSolver(sys), rhs);
      if (!sol) throw DomainError("Levi factor lifting failed (inconsistent system)");
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < rk.size(); ++a) axpy((*sol)[i * rk.size() + a], rk[a], levi[i]);
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!is_zero(defect(i, j))) throw DomainError("Levi factor lifting failed to close the subalgebra");
  }

  std::vector<Vector> basis_cols = levi;
  basis_cols.insert(basis_cols.end(), radical.begin(), radical.end());
  LeviSplit split;
  split.basis = columns_to_matrix(basis_cols, n);
  split.data = LeviAlgebraData(m, l.change_basis(split.basis));
  const auto report = validate_levi_input(split.data);
  if (!report.ok()) throw DomainError("Levi decomposition check failed: " + report.violations.front());
  return split;
}

}  // namespace levinf
