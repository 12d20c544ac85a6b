#include "levinf/window.hpp"

#include <functional>

#include "levinf/error.hpp"

namespace levinf {

std::shared_ptr<const AlgebraContext> AlgebraContext::make(const LeviAlgebraData& data) {
  const auto report = validate_levi_input(data);
  if (!report.ok()) throw DomainError(report.violations.front());
  auto ctx = std::make_shared<AlgebraContext>();
  ctx->data = data;
  ctx->casimir = levinf::casimir(data.levi_factor());
  const std::size_t m = data.m;
  const std::size_t np = ctx->pair_count();
  ctx->pair_right_inverse = DenseMatrix(np, m);
  if (m > 0) {
    DenseMatrix cmat(m, np);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) cmat(k, ctx->pair_index(i, j)) = data.c(i, j, k);
    const EliminationSolver solver(cmat);
    for (std::size_t k = 0; k < m; ++k) {
      Vector e = zero_vector(m);
      e[k] = Scalar(1);
      const auto r = solver.solve(e);
      if (!r) throw DomainError("Levi factor not semisimple ([g,g] != g)");
      for (std::size_t p = 0; p < np; ++p) ctx->pair_right_inverse(p, k) = (*r)[p];
    }
  }
  return ctx;
}

std::size_t BasisElementHash::operator()(const BasisElement& b) const {
  std::size_t h = static_cast<std::size_t>(b.direction + 1);
  for (std::size_t i = 0; i < kMaxVariables; ++i) h = h * 1099511628211ULL + static_cast<std::size_t>(b.monomial[i]);
  return h;
}

std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t var, int left) {
    if (var + 1 == n) {
      cur.set(var, left);
      out.push_back(cur);
      cur.set(var, 0);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.set(var, e);
      rec(var + 1, left - e);
    }
    cur.set(var, 0);
  };
  rec(0, d);
  return out;
}

ModuleWindow::ModuleWindow(std::shared_ptr<const AlgebraContext> ctx, WindowKind kind, int lo, int hi,
                           std::size_t fiber_dim)
    : ctx_(std::move(ctx)), kind_(kind), lo_(lo), hi_(hi), fiber_dim_(fiber_dim) {
  switch (kind_) {
    case WindowKind::Function:
    case WindowKind::VectorField:
      break;
    case WindowKind::FiberLinearFunction:
    case WindowKind::AlgebroidVectorField:
      if (fiber_dim_ < ctx_->m() || fiber_dim_ > ctx_->n())
        throw InputError("fiber block must contain the Levi block and fit in the variables");
      break;
    default:
      throw InputError("unknown window kind");
  }
  if (lo < 0) throw InputError("window lower bound must be nonnegative");
  const std::size_t n = ctx_->n();
  const std::size_t m = ctx_->m();
  const std::size_t ndirs = directions();

  for (int d = lo + 1; d <= hi; ++d) {
    for (const Monomial& mono : monomials_of_degree(n, d)) {
      const int fiber_degree = mono.partial_degree(0, fiber_dim_);
      switch (kind_) {
        case WindowKind::Function:
          basis_.push_back({mono, -1});
          break;
        case WindowKind::FiberLinearFunction:
          if (fiber_degree == 1) basis_.push_back({mono, -1});
          break;
        case WindowKind::VectorField:
          for (std::size_t j = 0; j < ndirs; ++j) basis_.push_back({mono, static_cast<int>(j)});
          break;
        case WindowKind::AlgebroidVectorField:
          for (std::size_t j = 0; j < ndirs; ++j) {
            // Fiber directions carry fiber-linear coefficients, base ones base functions.
            const int wanted = (m + j < fiber_dim_) ? 1 : 0;
            if (fiber_degree == wanted) basis_.push_back({mono, static_cast<int>(j)});
          }
          break;
      }
    }
  }
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);

  const auto& c = ctx_->data.full;
  const std::size_t dim = basis_.size();
  for (std::size_t g = 0; g < m; ++g) {
    std::vector<SparseMatrix::Triplet> trip;
    auto emit = [&](const BasisElement& target, std::size_t col, const Scalar& v) {
      auto it = index_.find(target);
      if (it == index_.end()) throw InternalError("window is not invariant under the g-action");
      trip.push_back({it->second, col, v});
    };
    for (std::size_t col = 0; col < dim; ++col) {
      const BasisElement& b = basis_[col];
      // rho_g(z^alpha) = sum_{j,k} C(g,j,k) z_k d/dz_j z^alpha
      for (std::size_t j = 0; j < n; ++j) {
        const int e = b.monomial[j];
        if (e == 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& ck = c(g, j, k);
          if (ck.is_zero()) continue;
          Monomial t = b.monomial;
          t.set(j, e - 1);
          t.set(k, t[k] + 1);
          emit({t, b.direction}, col, ck * Scalar(e));
        }
      }
      if (b.direction >= 0) {
        // (rho_g u)_j gets - sum_k a(g,j,k) u_k
        const std::size_t d = static_cast<std::size_t>(b.direction);
        for (std::size_t j = 0; j < ndirs; ++j) {
          const Scalar& a = ctx_->data.a(g, j, d);
          if (!a.is_zero()) emit({b.monomial, static_cast<int>(j)}, col, -a);
        }
      }
    }
    action_.push_back(SparseMatrix::from_triplets(dim, dim, std::move(trip)));
  }
  check_representation();

  casimir_ = m > 0 ? casimir_operator(ctx_->casimir, action_) : SparseMatrix(dim, dim);
  DisjointSets sets(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (const auto& e : casimir_.row(r)) sets.unite(r, e.col);
  components_ = sets.groups();
  component_of_.assign(dim, 0);
  position_.assign(dim, 0);
  for (std::size_t ci = 0; ci < components_.size(); ++ci)
    for (std::size_t p = 0; p < components_[ci].size(); ++p) {
      component_of_[components_[ci][p]] = ci;
      position_[components_[ci][p]] = p;
    }
  blocks_.resize(components_.size());
}

void ModuleWindow::check_representation() const {
  const std::size_t m = ctx_->m();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      SparseMatrix comm = action_[i] * action_[j] - action_[j] * action_[i];
      for (std::size_t k = 0; k < m; ++k) {
        const Scalar& cijk = ctx_->data.c(i, j, k);
        if (!cijk.is_zero()) comm = comm - action_[k].scaled(cijk);
      }
      if (!comm.is_zero()) throw InternalError("window action violates the bracket law");
    }
}

std::optional<std::size_t> ModuleWindow::index_of(const BasisElement& b) const {
  auto it = index_.find(b);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vector ModuleWindow::from_polynomial(const Polynomial& p) const {
  if (is_vector_field()) throw InputError("vector-field window needs a field");
  if (p.nvars() != nvars()) throw InputError("polynomial does not match the window variables");
  Vector v = zero_vector(dim());
  for (const auto& [mono, coef] : p.terms()) {
    auto idx = index_of({mono, -1});
    if (!idx) throw InternalError("polynomial term lies outside the window subspace");
    v[*idx] = coef;
  }
  return v;
}

Polynomial ModuleWindow::to_polynomial(const Vector& v) const {
  Polynomial p(nvars());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) p.add_term(basis_[i].monomial, v[i]);
  return p;
}

Vector ModuleWindow::from_field(const std::vector<Polynomial>& components) const {
  if (!is_vector_field()) throw InputError("function window needs a polynomial");
  if (components.size() != directions()) throw InputError("vector field has the wrong number of components");
  Vector v = zero_vector(dim());
  for (std::size_t j = 0; j < components.size(); ++j) {
    for (const auto& [mono, coef] : components[j].terms()) {
      auto idx = index_of({mono, static_cast<int>(j)});
      if (!idx) throw InternalError("vector field term lies outside the window subspace");
      v[*idx] = coef;
    }
  }
  return v;
}

std::vector<Polynomial> ModuleWindow::to_field(const Vector& v) const {
  std::vector<Polynomial> out(directions(), Polynomial(nvars()));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[static_cast<std::size_t>(basis_[i].direction)].add_term(basis_[i].monomial, v[i]);
  return out;
}

std::shared_ptr<const ModuleWindow::Block> ModuleWindow::block(std::size_t ci) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (blocks_[ci]) return blocks_[ci];
  }
  const auto& idx = components_[ci];
  const std::size_t k = idx.size();
  const DenseMatrix g = casimir_.dense_block(idx, idx);
  auto blk = std::make_shared<Block>();
  const DenseMatrix kernel = nullspace(g);
  const std::size_t d0 = kernel.cols();
  blk->kernel_dim = d0;
  if (d0 == 0) {
    blk->projector = DenseMatrix(k, k);
    blk->inverse = inverse(g);
  } else if (d0 == k) {
    blk->projector = DenseMatrix::identity(k);
    blk->inverse = DenseMatrix(k, k);
  } else {
    const auto pivots = row_reduce(g).pivots;
    const std::size_t r = pivots.size();
    DenseMatrix basis(k, k);
    for (std::size_t row = 0; row < k; ++row) {
      for (std::size_t c = 0; c < d0; ++c) basis(row, c) = kernel(row, c);
      for (std::size_t c = 0; c < r; ++c) basis(row, d0 + c) = g(row, pivots[c]);
    }
    if (determinant(basis).is_zero())
      throw DomainError("module is not completely reducible: Casimir kernel and image intersect");
    const DenseMatrix binv = inverse(basis);
    // Gamma on the image, in image coordinates.
    DenseMatrix image(k, r);
    for (std::size_t row = 0; row < k; ++row)
      for (std::size_t c = 0; c < r; ++c) image(row, c) = basis(row, d0 + c);
    const DenseMatrix coords = binv * (g * image);
    DenseMatrix gr(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) gr(a, b) = coords(d0 + a, b);
    const DenseMatrix grinv = inverse(gr);
    DenseMatrix binv_kernel(d0, k), binv_image(r, k);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t a = 0; a < d0; ++a) binv_kernel(a, c) = binv(a, c);
      for (std::size_t a = 0; a < r; ++a) binv_image(a, c) = binv(d0 + a, c);
    }
    blk->projector = kernel * binv_kernel;
    blk->inverse = image * (grinv * binv_image);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  if (!blocks_[ci]) blocks_[ci] = std::move(blk);
  return blocks_[ci];
}

Vector ModuleWindow::apply_blocks(const Vector& v, bool projector) const {
  if (v.size() != dim()) throw InputError("vector does not match the window dimension");
  Vector out = zero_vector(dim());
  std::vector<bool> seen(components_.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const std::size_t ci = component_of_[i];
    if (seen[ci]) continue;
    seen[ci] = true;
    const auto blk = block(ci);
    const auto& idx = components_[ci];
    Vector local(idx.size());
    for (std::size_t p = 0; p < idx.size(); ++p) local[p] = v[idx[p]];
    const Vector res = (projector ? blk->projector : blk->inverse).apply(local);
    for (std::size_t p = 0; p < idx.size(); ++p) out[idx[p]] = res[p];
  }
  return out;
}

Vector ModuleWindow::invariant_part(const Vector& v) const { return apply_blocks(v, true); }
Vector ModuleWindow::casimir_inverse(const Vector& v) const { return apply_blocks(v, false); }

std::size_t ModuleWindow::kernel_dim() const {
  std::size_t total = 0;
  for (std::size_t ci = 0; ci < components_.size(); ++ci) total += block(ci)->kernel_dim;
  return total;
}

std::shared_ptr<const ModuleWindow> build_window(std::shared_ptr<const AlgebraContext> ctx, WindowKind kind, int lo,
                                                 int hi, std::size_t fiber_dim) {
  return std::make_shared<const ModuleWindow>(std::move(ctx), kind, lo, hi, fiber_dim);
}

}  // namespace levinf
