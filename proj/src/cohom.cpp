#include "levinf/cohom.hpp"

#include <cmath>
#include <sstream>

#include "levinf/error.hpp"

namespace levinf {

std::size_t Cochain::slot_count(std::size_t m, int degree) {
  switch (degree) {
    case 0: return 1;
    case 1: return m;
    case 2: return m * (m > 0 ? m - 1 : 0) / 2;
    case 3: return m * (m > 0 ? m - 1 : 0) * (m > 1 ? m - 2 : 0) / 6;
    default: throw InputError("unsupported cochain degree");
  }
}

Cochain Cochain::zero(std::shared_ptr<const ModuleWindow> window, int degree) {
  Cochain c;
  const std::size_t m = window->context().m();
  c.slots.assign(slot_count(m, degree), zero_vector(window->dim()));
  c.window = std::move(window);
  c.degree = degree;
  return c;
}

Vector Cochain::pair_value(std::size_t i, std::size_t j) const {
  if (i == j) return zero_vector(window->dim());
  const auto& ctx = window->context();
  if (i < j) return slots[ctx.pair_index(i, j)];
  Vector v = slots[ctx.pair_index(j, i)];
  for (auto& x : v) x = -x;
  return v;
}

Vector& Cochain::pair_slot(std::size_t i, std::size_t j) {
  if (i >= j) throw InputError("pair slot needs i < j");
  return slots[window->context().pair_index(i, j)];
}

bool Cochain::is_zero() const {
  for (const auto& s : slots)
    if (!levinf::is_zero(s)) return false;
  return true;
}

namespace {

void add_scaled(Vector& y, const Scalar& a, const Vector& x) {
  if (!a.is_zero()) axpy(a, x, y);
}

void add_to(Vector& y, const Vector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += x[i];
}

void sub_from(Vector& y, const Vector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] -= x[i];
}

std::string describe_slot(int degree, std::size_t slot, std::size_t m) {
  std::ostringstream os;
  std::size_t s = 0;
  if (degree == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j, ++s)
        if (s == slot) os << "(" << i << ", " << j << ")";
  } else if (degree == 3) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t l = j + 1; l < m; ++l, ++s)
          if (s == slot) os << "(" << i << ", " << j << ", " << l << ")";
  } else {
    os << "(" << slot << ")";
  }
  return os.str();
}

}  // namespace

Cochain ce_differential(const Cochain& c) {
  const auto& win = *c.window;
  const auto& ctx = win.context();
  const std::size_t m = ctx.m();
  if (c.degree == 0) {
    Cochain out = Cochain::zero(c.window, 1);
    for (std::size_t i = 0; i < m; ++i) out.slots[i] = win.act(i, c.slots[0]);
    return out;
  }
  if (c.degree == 1) {
    Cochain out = Cochain::zero(c.window, 2);
    std::vector<std::vector<Vector>> act(m);  // act[i][j] = rho_i w_j
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) act[i].push_back(win.act(i, c.slots[j]));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Vector& v = out.pair_slot(i, j);
        v = act[i][j];
        sub_from(v, act[j][i]);
        for (std::size_t k = 0; k < m; ++k) add_scaled(v, -ctx.data.c(i, j, k), c.slots[k]);
      }
    return out;
  }
  throw InputError("ce_differential supports cochain degrees 0 and 1 only");
}

Cochain cocycle_defect(const Cochain& c) {
  if (c.degree != 2) return ce_differential(c);
  const auto& win = *c.window;
  const auto& ctx = win.context();
  const std::size_t m = ctx.m();
  Cochain out = Cochain::zero(c.window, 3);
  // f([x,y], z) with x, y, z generators
  auto f_bracket = [&](std::size_t x, std::size_t y, std::size_t z) {
    Vector v = zero_vector(win.dim());
    for (std::size_t t = 0; t < m; ++t) {
      const Scalar& cc = ctx.data.c(x, y, t);
      if (!cc.is_zero()) add_scaled(v, cc, c.pair_value(t, z));
    }
    return v;
  };
  std::size_t s = 0;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x + 1; y < m; ++y)
      for (std::size_t z = y + 1; z < m; ++z, ++s) {
        Vector& v = out.slots[s];
        add_to(v, win.act(x, c.pair_value(y, z)));
        sub_from(v, win.act(y, c.pair_value(x, z)));
        add_to(v, win.act(z, c.pair_value(x, y)));
        sub_from(v, f_bracket(x, y, z));
        add_to(v, f_bracket(x, z, y));
        sub_from(v, f_bracket(y, z, x));
      }
  return out;
}

bool is_cocycle(const Cochain& c) {
  if (c.degree == 0) return ce_differential(c).is_zero();
  return cocycle_defect(c).is_zero();
}

namespace {

void require_cocycle(const Cochain& c) {
  const Cochain d = cocycle_defect(c);
  for (std::size_t s = 0; s < d.slots.size(); ++s)
    if (!is_zero(d.slots[s]))
      throw DomainError("not a cocycle: differential nonzero on " +
                        describe_slot(d.degree, s, c.window->context().m()));
}

}  // namespace

Cochain solve_2cocycle(const Cochain& f) {
  if (f.degree != 2) throw InputError("solve_2cocycle needs a 2-cochain");
  require_cocycle(f);
  const auto& win = *f.window;
  const auto& ctx = win.context();
  const std::size_t m = ctx.m();
  const DenseMatrix& kinv = ctx.casimir.kinv;
  Cochain w = Cochain::zero(f.window, 1);
  for (std::size_t k = 0; k < m; ++k) {
    // Gamma# sum_{j,l} kinv(j,l) rho_l f(xi_j, xi_k)
    Vector acc = zero_vector(win.dim());
    for (std::size_t l = 0; l < m; ++l) {
      Vector inner = zero_vector(win.dim());
      for (std::size_t j = 0; j < m; ++j)
        if (j != k) add_scaled(inner, kinv(j, l), f.pair_value(j, k));
      if (!is_zero(inner)) add_to(acc, win.act(l, inner));
    }
    w.slots[k] = win.casimir_inverse(acc);
  }
  // Invariant part: w0(xi_k) = -sum_{i<j} R(ij,k) P0 f(xi_i, xi_j).
  for (std::size_t p = 0; p < f.slots.size(); ++p) {
    const Vector inv = win.invariant_part(f.slots[p]);
    if (is_zero(inv)) continue;
    for (std::size_t k = 0; k < m; ++k) add_scaled(w.slots[k], -ctx.pair_right_inverse(p, k), inv);
  }
  if (!(ce_differential(w) == f)) throw InternalError("2-cocycle homotopy failed: delta(w) != f");
  return w;
}

Cochain solve_1cocycle(const Cochain& w) {
  if (w.degree != 1) throw InputError("solve_1cocycle needs a 1-cochain");
  require_cocycle(w);
  const auto& win = *w.window;
  const auto& ctx = win.context();
  const std::size_t m = ctx.m();
  const DenseMatrix& kinv = ctx.casimir.kinv;
  Vector acc = zero_vector(win.dim());
  for (std::size_t i = 0; i < m; ++i) {
    Vector inner = zero_vector(win.dim());
    for (std::size_t j = 0; j < m; ++j) add_scaled(inner, kinv(i, j), w.slots[j]);
    if (!is_zero(inner)) add_to(acc, win.act(i, inner));
  }
  Cochain g = Cochain::zero(w.window, 0);
  g.slots[0] = win.casimir_inverse(acc);
  if (!(ce_differential(g) == w)) throw InternalError("1-cocycle homotopy failed: delta(g) != w");
  return g;
}

struct DirectSolver::Component {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::unique_ptr<EliminationSolver> solver;
};

DirectSolver::DirectSolver(std::shared_ptr<const ModuleWindow> window, int target_degree)
    : window_(std::move(window)), target_degree_(target_degree) {
  if (target_degree != 1 && target_degree != 2) throw InputError("direct solver handles 1- and 2-cochains");
  const auto& win = *window_;
  const auto& ctx = win.context();
  const std::size_t m = ctx.m();
  const std::size_t dim = win.dim();
  const std::size_t nrows = Cochain::slot_count(m, target_degree) * dim;
  const std::size_t ncols = Cochain::slot_count(m, target_degree - 1) * dim;
  std::vector<SparseMatrix::Triplet> trip;
  if (target_degree == 1) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t r = 0; r < dim; ++r)
        for (const auto& e : win.action(i).row(r)) trip.push_back({i * dim + r, e.col, e.value});
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const std::size_t p = ctx.pair_index(i, j);
        for (std::size_t r = 0; r < dim; ++r) {
          for (const auto& e : win.action(i).row(r)) trip.push_back({p * dim + r, j * dim + e.col, e.value});
          for (const auto& e : win.action(j).row(r)) trip.push_back({p * dim + r, i * dim + e.col, -e.value});
          for (std::size_t k = 0; k < m; ++k)
            if (!ctx.data.c(i, j, k).is_zero()) trip.push_back({p * dim + r, k * dim + r, -ctx.data.c(i, j, k)});
        }
      }
  }
  delta_ = SparseMatrix::from_triplets(nrows, ncols, std::move(trip));

  DisjointSets sets(nrows + ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (const auto& e : delta_.row(r)) sets.unite(r, nrows + e.col);
  const auto groups = sets.groups();
  row_component_.assign(nrows, 0);
  for (const auto& g : groups) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t x : g) {
      if (x < nrows)
        rows.push_back(x);
      else
        cols.push_back(x - nrows);
    }
    if (rows.empty()) continue;
    for (std::size_t r : rows) row_component_[r] = rows_of_.size();
    rows_of_.push_back(std::move(rows));
    cols_of_.push_back(std::move(cols));
  }
  cache_.resize(rows_of_.size());
}

DirectSolver::~DirectSolver() = default;

std::shared_ptr<const DirectSolver::Component> DirectSolver::component(std::size_t c) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_[c]) return cache_[c];
  }
  auto comp = std::make_shared<Component>();
  comp->rows = rows_of_[c];
  comp->cols = cols_of_[c];
  if (!comp->cols.empty()) comp->solver = std::make_unique<EliminationSolver>(delta_.dense_block(comp->rows, comp->cols));
  std::lock_guard<std::mutex> lock(mutex_);
  if (!cache_[c]) cache_[c] = std::move(comp);
  return cache_[c];
}

Cochain DirectSolver::solve(const Cochain& f) const {
  if (f.degree != target_degree_) throw InputError("direct solver: cochain degree mismatch");
  const std::size_t dim = window_->dim();
  Cochain x = Cochain::zero(window_, target_degree_ - 1);
  std::vector<bool> done(rows_of_.size(), false);
  for (std::size_t s = 0; s < f.slots.size(); ++s)
    for (std::size_t b = 0; b < dim; ++b) {
      if (f.slots[s][b].is_zero()) continue;
      const std::size_t row = s * dim + b;
      const std::size_t ci = row_component_[row];
      if (delta_.row(row).empty() && rows_of_[ci].size() == 1 && cols_of_[ci].empty())
        throw DomainError("not a coboundary");
      if (done[ci]) continue;
      done[ci] = true;
      const auto comp = component(ci);
      if (!comp->solver) throw DomainError("not a coboundary");
      Vector rhs(comp->rows.size());
      for (std::size_t r = 0; r < comp->rows.size(); ++r)
        rhs[r] = f.slots[comp->rows[r] / dim][comp->rows[r] % dim];
      const auto sol = comp->solver->solve(rhs);
      if (!sol) throw DomainError("not a coboundary");
      for (std::size_t c = 0; c < comp->cols.size(); ++c)
        x.slots[comp->cols[c] / dim][comp->cols[c] % dim] = (*sol)[c];
    }
  if (!(ce_differential(x) == f)) throw InternalError("direct solve produced a wrong primitive");
  return x;
}

Cochain solve_direct(const Cochain& f) {
  if (f.window->dim() == 0 || f.is_zero()) return Cochain::zero(f.window, f.degree - 1);
  return DirectSolver(f.window, f.degree).solve(f);
}

double window_norm(const ModuleWindow& window, const Vector& v, double rho) {
  if (!(rho > 0)) throw InputError("radius must be positive");
  double sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const Monomial& mono = window.basis()[i].monomial;
    sum += l2_weight(mono, window.nvars()).get_d() * v[i].norm2() * std::pow(rho, 2.0 * mono.degree());
  }
  return std::sqrt(sum);
}

double cochain_norm(const Cochain& c, double rho) {
  double best = 0;
  for (const auto& s : c.slots) best = std::max(best, window_norm(*c.window, s, rho));
  return best;
}

Cochain random_cochain(Rng& rng, std::shared_ptr<const ModuleWindow> window, int degree, std::size_t terms_per_slot) {
  Cochain c = Cochain::zero(window, degree);
  for (auto& s : c.slots) s = random_sparse_vector(rng, window->dim(), terms_per_slot);
  return c;
}

HomotopyRatioReport homotopy_norm_bound(std::shared_ptr<const ModuleWindow> window, double rho, std::size_t samples,
                                        std::uint64_t seed, std::size_t terms_per_slot) {
  Rng rng(seed);
  HomotopyRatioReport report;
  std::size_t n1 = 0, n2 = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Cochain f = ce_differential(random_cochain(rng, window, 1, terms_per_slot));
    if (!f.is_zero()) {
      const double r = cochain_norm(solve_2cocycle(f), rho) / cochain_norm(f, rho);
      report.max_ratio_2 = std::max(report.max_ratio_2, r);
      report.mean_ratio_2 += r;
      ++n2;
    }
    const Cochain w = ce_differential(random_cochain(rng, window, 0, terms_per_slot));
    if (!w.is_zero()) {
      const double r = cochain_norm(solve_1cocycle(w), rho) / cochain_norm(w, rho);
      report.max_ratio_1 = std::max(report.max_ratio_1, r);
      report.mean_ratio_1 += r;
      ++n1;
    }
  }
  if (n2) report.mean_ratio_2 /= static_cast<double>(n2);
  if (n1) report.mean_ratio_1 /= static_cast<double>(n1);
  report.samples = std::max(n1, n2);
  return report;
}

}  // namespace levinf
