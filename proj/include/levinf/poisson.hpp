#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "levinf/liealg.hpp"
#include "levinf/polynomial.hpp"

namespace levinf {

/// Bracket table {z_i, z_j} (i<j) truncated at a global degree D.
class PoissonTable {
 public:
  PoissonTable() = default;
  PoissonTable(std::size_t n, int max_degree, std::optional<std::size_t> levi_dim = std::nullopt);

  /// Lie-Poisson table of the given constants.
  static PoissonTable linear(const StructureConstants& c, int max_degree,
                             std::optional<std::size_t> levi_dim = std::nullopt);

  std::size_t n() const { return n_; }
  int max_degree() const { return max_degree_; }
  std::optional<std::size_t> levi_dim() const { return levi_dim_; }
  void set_levi_dim(std::optional<std::size_t> m) { levi_dim_ = m; }

  /// Stored entry, i < j.
  const Polynomial& entry(std::size_t i, std::size_t j) const;
  /// {z_i, z_j} for any i, j.
  Polynomial bracket_of(std::size_t i, std::size_t j) const;
  /// Sets {z_i, z_j} (and {z_j, z_i} by antisymmetry), truncated at D.
  void set(std::size_t i, std::size_t j, const Polynomial& p);

  friend bool operator==(const PoissonTable&, const PoissonTable&) = default;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  std::size_t n_ = 0;
  int max_degree_ = 0;
  std::optional<std::size_t> levi_dim_;
  std::vector<Polynomial> entries_;
};

Polynomial bracket(const PoissonTable& pi, const Polynomial& f, const Polynomial& g);

struct JacobiEntry {
  std::array<std::size_t, 3> index;
  Polynomial value;
};

/// J(i,j,k) for all i<j<k, truncated at D-1.
std::vector<JacobiEntry> jacobiator(const PoissonTable& pi);
/// First nonzero entry of the jacobiator, if any.
std::optional<JacobiEntry> jacobi_violation(const PoissonTable& pi);

/// Degree-1 coefficients as structure constants. Throws DomainError when a
/// constant term is present or the constants are not a Lie algebra.
StructureConstants linear_part(const PoissonTable& pi);

/// Component j = {f, z_j}.
PolyMap hamiltonian_vf(const PoissonTable& pi, const Polynomial& f);

/// Table in the coordinates u = phi(z): entry (i,j) is {u_i, u_j} o phi^-1.
PoissonTable pushforward(const PoissonTable& pi, const PolyMap& phi, int max_degree);
/// Same with a precomputed inverse of phi.
PoissonTable pushforward(const PoissonTable& pi, const PolyMap& phi, const PolyMap& phi_inverse, int max_degree);

}  // namespace levinf
