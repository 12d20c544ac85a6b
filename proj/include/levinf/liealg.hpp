#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "levinf/linalg.hpp"

namespace levinf {

/// Structure constants C(i,j,k): [e_i, e_j] = sum_k C(i,j,k) e_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * dim_ + j) * dim_ + k]; }
  /// Sets C(i,j,k) = v and C(j,i,k) = -v.
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Scalar& v);

  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad(e_i): column j holds [e_i, e_j].
  DenseMatrix ad(std::size_t i) const;
  /// Constants re-expressed in the basis given by the columns of `basis`.
  StructureConstants change_basis(const DenseMatrix& basis) const;

  bool is_antisymmetric() const;
  /// First triple (i<j<k) where the Jacobi identity fails, if any.
  std::vector<std::size_t> jacobi_violation() const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Scalar> data_;
};

/// Linear part L = g x r in a Levi-adapted basis: indices [0, m) span the
/// Levi factor g, [m, n) the radical r. The full constants are stored; the
/// blocks c, a, b are views.
struct LeviAlgebraData {
  std::size_t n = 0;
  std::size_t m = 0;
  StructureConstants full;

  LeviAlgebraData() = default;
  LeviAlgebraData(std::size_t m_, StructureConstants constants);

  /// [xi_i, xi_j] = sum c(i,j,k) xi_k, all indices < m.
  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return full(i, j, k); }
  /// [xi_i, y_j] = sum a(i,j,k) y_k, i < m, j,k < n-m.
  const Scalar& a(std::size_t i, std::size_t j, std::size_t k) const { return full(i, m + j, m + k); }
  /// [y_i, y_j] = sum b(i,j,k) y_k.
  const Scalar& b(std::size_t i, std::size_t j, std::size_t k) const { return full(m + i, m + j, m + k); }
  /// Constants of g alone.
  StructureConstants levi_factor() const;

  friend bool operator==(const LeviAlgebraData&, const LeviAlgebraData&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks antisymmetry, Jacobi, the block shape of a semidirect product, the
/// module law for the a-block and nondegeneracy of the Killing form of g.
ValidationReport validate_levi_input(const LeviAlgebraData& data);

/// K(i,j) = tr(ad e_i ad e_j).
DenseMatrix killing_form(const StructureConstants& c);

/// Casimir element in dual-pair form: Gamma = sum_i e_i f^i with
/// f^i = sum_j kinv(i,j) e_j Killing-dual to e_i.
struct CasimirElement {
  DenseMatrix kinv;
  std::size_t dim() const { return kinv.rows(); }
  /// (i, coordinates of f^i)
  std::vector<std::pair<std::size_t, Vector>> pairs() const;
};

/// Throws DomainError when the Killing form is degenerate.
CasimirElement casimir(const StructureConstants& c);

/// sum_ij kinv(i,j) rho_i rho_j for a representation given by its matrices.
SparseMatrix casimir_operator(const CasimirElement& gamma, const std::vector<SparseMatrix>& rho);

struct LeviSplit {
  /// Columns are the new basis vectors in the old coordinates.
  DenseMatrix basis;
  LeviAlgebraData data;
};

/// Levi-Malcev decomposition of an arbitrary Lie algebra. The radical is the
/// Killing-orthogonal complement of [L,L]; a complement of it is lifted to a
/// subalgebra through the derived series of the radical.
LeviSplit levi_malcev_split(const StructureConstants& l);

}  // namespace levinf
