#include "levinf/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "levinf/error.hpp"

namespace levinf {

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector zero_vector(std::size_t n) { return Vector(n); }

void axpy(const Scalar& alpha, const Vector& x, Vector& y) {
  if (alpha.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i].add_product(alpha, x[i]);
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector DenseMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector DenseMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw InputError("matrix/vector size mismatch");
  Vector y(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero()) y[r].add_product(a, x[c]);
    }
  }
  return y;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product size mismatch");
  DenseMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) p(i, j).add_product(aik, bkj);
      }
    }
  }
  return p;
}

namespace {

// Gauss-Jordan on m, mirroring every row operation onto `companion` when given.
std::vector<std::size_t> gauss_jordan(DenseMatrix& m, DenseMatrix* companion) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
    std::size_t sel = m.rows();
    for (std::size_t r = prow; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == m.rows()) continue;
    if (sel != prow) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(prow, c));
      if (companion)
        for (std::size_t c = 0; c < companion->cols(); ++c) std::swap((*companion)(sel, c), (*companion)(prow, c));
    }
    const Scalar inv = Scalar(1) / m(prow, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(prow, c) *= inv;
    if (companion)
      for (std::size_t c = 0; c < companion->cols(); ++c) (*companion)(prow, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == prow || m(r, col).is_zero()) continue;
      const Scalar factor = -m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(prow, c).is_zero()) m(r, c).add_product(factor, m(prow, c));
      }
      if (companion) {
        for (std::size_t c = 0; c < companion->cols(); ++c) {
          if (!(*companion)(prow, c).is_zero()) (*companion)(r, c).add_product(factor, (*companion)(prow, c));
        }
      }
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

}  // namespace

RowEchelon row_reduce(DenseMatrix m) {
  auto pivots = gauss_jordan(m, nullptr);
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const DenseMatrix& m) { return row_reduce(m).pivots.size(); }

DenseMatrix nullspace(const DenseMatrix& m) {
  const RowEchelon re = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : re.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  DenseMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    basis(fc, k) = 1;
    for (std::size_t i = 0; i < re.pivots.size(); ++i) basis(re.pivots[i], k) = -re.reduced(i, fc);
  }
  return basis;
}

DenseMatrix inverse(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
  DenseMatrix work = m;
  DenseMatrix inv = DenseMatrix::identity(m.rows());
  const auto pivots = gauss_jordan(work, &inv);
  if (pivots.size() != m.rows()) throw DomainError("singular matrix");
  return inv;
}

Scalar determinant(DenseMatrix m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!m(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == n) return Scalar(0);
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(sel, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Scalar factor = -(m(r, col) * inv);
      for (std::size_t c = col; c < n; ++c) m(r, c).add_product(factor, m(col, c));
    }
  }
  return det;
}

EliminationSolver::EliminationSolver(const DenseMatrix& a) : cols_(a.cols()) {
  DenseMatrix work = a;
  transform_ = DenseMatrix::identity(a.rows());
  pivots_ = gauss_jordan(work, &transform_);
}

std::optional<Vector> EliminationSolver::solve(const Vector& b) const {
  if (b.size() != transform_.cols()) throw InputError("right-hand side size mismatch");
  const Vector eb = transform_.apply(b);
  for (std::size_t r = pivots_.size(); r < eb.size(); ++r) {
    if (!eb[r].is_zero()) return std::nullopt;
  }
  Vector x(cols_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = eb[i];
  return x;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), rows_data_(rows) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  for (std::size_t i = 0; i < triplets.size();) {
    const std::size_t r = triplets[i].row;
    const std::size_t c = triplets[i].col;
    if (r >= rows || c >= cols) throw InputError("sparse triplet out of range");
    Scalar sum = std::move(triplets[i].value);
    std::size_t j = i + 1;
    for (; j < triplets.size() && triplets[j].row == r && triplets[j].col == c; ++j) sum += triplets[j].value;
    if (!sum.is_zero()) m.rows_data_[r].push_back({static_cast<std::uint32_t>(c), std::move(sum)});
    i = j;
  }
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_data_) n += r.size();
  return n;
}

Vector SparseMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw InputError("sparse matrix/vector size mismatch");
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : rows_data_[r]) {
      if (!x[e.col].is_zero()) y[r].add_product(e.value, x[e.col]);
    }
  }
  return y;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : rows_data_[r]) d(r, e.col) = e.value;
  return d;
}

DenseMatrix SparseMatrix::dense_block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  std::map<std::size_t, std::size_t> col_pos;
  for (std::size_t k = 0; k < cols.size(); ++k) col_pos[cols[k]] = k;
  DenseMatrix d(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& e : rows_data_[rows[i]]) {
      auto it = col_pos.find(e.col);
      if (it != col_pos.end()) d(i, it->second) = e.value;
    }
  }
  return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("sparse product size mismatch");
  SparseMatrix p(a.rows_, b.cols_);
  std::map<std::uint32_t, Scalar> acc;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    acc.clear();
    for (const auto& ea : a.rows_data_[r]) {
      for (const auto& eb : b.rows_data_[ea.col]) acc[eb.col].add_product(ea.value, eb.value);
    }
    for (auto& [c, v] : acc) {
      if (!v.is_zero()) p.rows_data_[r].push_back({c, std::move(v)});
    }
  }
  return p;
}

namespace {
SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, const Scalar& sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("sparse sum size mismatch");
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& e : a.row(r)) t.push_back({r, e.col, e.value});
    for (const auto& e : b.row(r)) t.push_back({r, e.col, e.value * sign});
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}
}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, Scalar(1)); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, Scalar(-1)); }

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
  SparseMatrix m(rows_, cols_);
  if (s.is_zero()) return m;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : rows_data_[r]) m.rows_data_[r].push_back({e.col, e.value * s});
  return m;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    const auto& ra = a.rows_data_[r];
    const auto& rb = b.rows_data_[r];
    if (ra.size() != rb.size()) return false;
    for (std::size_t k = 0; k < ra.size(); ++k) {
      if (ra[k].col != rb[k].col || !(ra[k].value == rb[k].value)) return false;
    }
  }
  return true;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a < b) std::swap(a, b);
  parent_[a] = b;
}

std::vector<std::vector<std::size_t>> DisjointSets::groups() {
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < parent_.size(); ++i) by_root[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(by_root.size());
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace levinf
