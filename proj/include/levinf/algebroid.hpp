#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "levinf/levi.hpp"
#include "levinf/random.hpp"

namespace levinf {

/// Local Lie algebroid of rank N over (K^n, 0) in a basis of sections s_i:
/// [s_i, s_j] = sum_k P(i,j,k)(x) s_k and #s_i = sum_j Q(i,j)(x) d/dx_j.
/// Bracket coefficients are kept through degree D-1 and the anchor through D,
/// so the dual table is truncated at D.
class AlgebroidData {
 public:
  AlgebroidData() = default;
  AlgebroidData(std::size_t rank, std::size_t base_dim, int max_degree);

  std::size_t rank() const { return rank_; }
  std::size_t base_dim() const { return base_; }
  int max_degree() const { return max_degree_; }

  /// P(i,j,k) for any i, j (antisymmetric).
  Polynomial bracket(std::size_t i, std::size_t j, std::size_t k) const;
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Polynomial& p);
  const Polynomial& anchor(std::size_t i, std::size_t j) const { return anchor_[i * base_ + j]; }
  void set_anchor(std::size_t i, std::size_t j, const Polynomial& p);

  friend bool operator==(const AlgebroidData&, const AlgebroidData&) = default;

 private:
  std::size_t pair(std::size_t i, std::size_t j) const { return i * rank_ - i * (i + 1) / 2 + (j - i - 1); }

  std::size_t rank_ = 0;
  std::size_t base_ = 0;
  int max_degree_ = 1;
  std::vector<Polynomial> bracket_;  // [pair * rank + k]
  std::vector<Polynomial> anchor_;   // [i * base + j]
};

/// Action algebroid of a linear action: constant bracket c, anchor
/// #s_i = sum_{j,k} b(i,j,k) x_k d/dx_j with b given as matrices b[i](j,k).
AlgebroidData action_algebroid(const StructureConstants& c, const std::vector<DenseMatrix>& b, int max_degree);

/// Fiberwise-linear Poisson table on (s_1..s_N, x_1..x_n). Throws DomainError
/// when the anchor does not vanish at the origin or the table violates Jacobi.
PoissonTable dual_poisson(const AlgebroidData& a, bool check = true);
/// Inverse of dual_poisson on fiberwise-linear tables.
AlgebroidData algebroid_from_dual(const PoissonTable& pi, std::size_t rank);

/// {fiber, fiber} fiber-linear, {fiber, base} a base function, {base, base} = 0.
bool check_fiberwise_linear(const PoissonTable& pi, std::size_t fiber_dim);

/// Near-identity bundle map: sections pick up fiber-linear terms with base
/// degree in [min_degree-1, max_degree-1], base coordinates base terms of
/// degree [min_degree, max_degree].
PolyMap random_bundle_map(Rng& rng, std::size_t rank, std::size_t base_dim, int min_degree, int max_degree,
                          std::size_t terms);
bool is_bundle_map(const PolyMap& phi, std::size_t rank);

/// Levi-adapted data of the dual table's linear part: fiber algebra (c, a, b)
/// plus the linear anchor, with the base coordinates appended to the radical.
LeviAlgebraData dual_levi_data(const AlgebroidData& a, const LeviAlgebraData& fiber);

/// Violations of [s_i,s_j] = sum c s_k, [s_i,v_j] = sum a v_k and a linear
/// anchor on s_i, for the Levi sections i < fiber.m.
std::vector<std::string> levi_relation_failures(const AlgebroidData& a, const LeviAlgebraData& fiber);

struct AlgebroidLeviResult {
  AlgebroidData normalized;
  LeviResult run;
  bool bundle_map = false;  // Phi and Phi^-1 preserve fiber-linear / base functions
  std::vector<std::string> relation_failures;
  bool ok() const { return run.verification.ok() && bundle_map && relation_failures.empty(); }
};

/// `fiber` holds the constants of the fiber Lie algebra in a Levi-adapted
/// basis; they must match the constant part of the bracket.
AlgebroidLeviResult algebroid_levi_normalize(const AlgebroidData& a, const LeviAlgebraData& fiber,
                                             const LeviOptions& options);

}  // namespace levinf
