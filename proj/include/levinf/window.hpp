#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "levinf/liealg.hpp"
#include "levinf/polynomial.hpp"

namespace levinf {

/// Per-algebra data shared by every window built over it.
struct AlgebraContext {
  LeviAlgebraData data;
  CasimirElement casimir;
  /// Right inverse of the map (i<j) -> c_ij: column k solves
  /// sum_{i<j} R(ij,k) c_ij = e_k. Used for the trivial-module homotopy.
  DenseMatrix pair_right_inverse;

  std::size_t m() const { return data.m; }
  std::size_t n() const { return data.n; }
  std::size_t pair_count() const { return data.m * (data.m - (data.m > 0 ? 1 : 0)) / 2; }
  /// Position of the pair (i<j) in the lexicographic pair list.
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * data.m - i * (i + 1) / 2 + (j - i - 1); }

  /// Validates the data and precomputes the Casimir element.
  static std::shared_ptr<const AlgebraContext> make(const LeviAlgebraData& data);
};

enum class WindowKind { Function, VectorField, FiberLinearFunction, AlgebroidVectorField };

/// Monomial, or monomial times d/dy_direction for vector-field windows.
struct BasisElement {
  Monomial monomial;
  int direction = -1;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct BasisElementHash {
  std::size_t operator()(const BasisElement& b) const;
};

/// Finite-dimensional g-module spanned by the monomials (or monomial vector
/// fields along the y-block) of total degree in (lo, hi]. Basis order: degree
/// ascending, graded-lex within a degree, direction innermost.
///
/// The Casimir operator is block diagonal along the connected components of
/// its sparsity pattern. Each block is split into kernel and image on first
/// use, and the factorization is cached.
class ModuleWindow {
 public:
  ModuleWindow(std::shared_ptr<const AlgebraContext> ctx, WindowKind kind, int lo, int hi, std::size_t fiber_dim);

  WindowKind kind() const { return kind_; }
  bool is_vector_field() const { return kind_ == WindowKind::VectorField || kind_ == WindowKind::AlgebroidVectorField; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t nvars() const { return ctx_->n(); }
  /// Number of vector-field directions (the y-block), 0 for function kinds.
  std::size_t directions() const { return is_vector_field() ? ctx_->n() - ctx_->m() : 0; }
  const AlgebraContext& context() const { return *ctx_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  std::optional<std::size_t> index_of(const BasisElement& b) const;

  const SparseMatrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<SparseMatrix>& actions() const { return action_; }
  Vector act(std::size_t i, const Vector& v) const { return action_[i].apply(v); }
  const SparseMatrix& casimir_matrix() const { return casimir_; }

  /// Coordinates of a polynomial whose terms all lie in the window basis.
  Vector from_polynomial(const Polynomial& p) const;
  Polynomial to_polynomial(const Vector& v) const;
  Vector from_field(const std::vector<Polynomial>& components) const;
  std::vector<Polynomial> to_field(const Vector& v) const;

  /// Projection onto ker(Gamma) along im(Gamma).
  Vector invariant_part(const Vector& v) const;
  /// Inverse of Gamma on im(Gamma), composed with the projection onto it.
  Vector casimir_inverse(const Vector& v) const;

  std::size_t component_count() const { return components_.size(); }
  std::size_t kernel_dim() const;

 private:
  struct Block {
    DenseMatrix projector;
    DenseMatrix inverse;
    std::size_t kernel_dim = 0;
  };
  std::shared_ptr<const Block> block(std::size_t c) const;
  Vector apply_blocks(const Vector& v, bool projector) const;
  void check_representation() const;

  std::shared_ptr<const AlgebraContext> ctx_;
  WindowKind kind_;
  int lo_;
  int hi_;
  std::size_t fiber_dim_;
  std::vector<BasisElement> basis_;
  std::unordered_map<BasisElement, std::size_t, BasisElementHash> index_;
  std::vector<SparseMatrix> action_;
  SparseMatrix casimir_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<std::size_t> component_of_;
  std::vector<std::size_t> position_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const Block>> blocks_;
};

/// `fiber_dim` is the number of leading fiber variables for the algebroid
/// kinds (ignored otherwise).
std::shared_ptr<const ModuleWindow> build_window(std::shared_ptr<const AlgebraContext> ctx, WindowKind kind, int lo,
                                                 int hi, std::size_t fiber_dim = 0);

/// All monomials of total degree d in n variables, graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t n, int d);

}  // namespace levinf
