#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "levinf/scalar.hpp"

namespace levinf {

using Vector = std::vector<Scalar>;

bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);
void axpy(const Scalar& alpha, const Vector& x, Vector& y);  // y += alpha x

/// Dense row-major matrix over Q(i).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector apply(const Vector& x) const;
  DenseMatrix transpose() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with the pivot columns.
struct RowEchelon {
  DenseMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(DenseMatrix m);
std::size_t rank(const DenseMatrix& m);
/// Basis of the kernel, one basis vector per column, in the canonical
/// form obtained from the reduced echelon form.
DenseMatrix nullspace(const DenseMatrix& m);
/// Throws DomainError when singular.
DenseMatrix inverse(const DenseMatrix& m);
Scalar determinant(DenseMatrix m);

/// Factors A once (E*A = R with R reduced echelon) and solves A x = b for any
/// number of right-hand sides. Free variables are set to zero.
class EliminationSolver {
 public:
  explicit EliminationSolver(const DenseMatrix& a);

  /// nullopt when b is not in the column space of A.
  std::optional<Vector> solve(const Vector& b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::size_t cols_ = 0;
  DenseMatrix transform_;
  std::vector<std::size_t> pivots_;
};

/// Compressed-row sparse matrix.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t col;
    Scalar value;
  };
  struct Triplet {
    std::size_t row;
    std::size_t col;
    Scalar value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Duplicate coordinates are summed; zeros are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  const std::vector<Entry>& row(std::size_t r) const { return rows_data_[r]; }

  Vector apply(const Vector& x) const;
  DenseMatrix to_dense() const;
  /// Submatrix on the given (sorted or not) row and column index lists.
  DenseMatrix dense_block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  SparseMatrix scaled(const Scalar& s) const;
  bool is_zero() const { return nonzeros() == 0; }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_data_;
};

/// Union-find over [0, n).
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);
  /// Groups of indices, each sorted, ordered by smallest member.
  std::vector<std::vector<std::size_t>> groups();

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace levinf
