#include "levinf/levi.hpp"

#include <chrono>
#include <cmath>

#include "levinf/algebroid.hpp"
#include "levinf/error.hpp"

namespace levinf {

int Schedule::lo(int l) const { return kind == ScheduleKind::Doubling ? (1 << l) : l + 1; }
int Schedule::hi(int l) const { return kind == ScheduleKind::Doubling ? (2 << l) : l + 2; }

namespace {

WindowKind function_kind(const LeviOptions& o) {
  return o.fiber_dim ? WindowKind::FiberLinearFunction : WindowKind::Function;
}
WindowKind field_kind(const LeviOptions& o) {
  return o.fiber_dim ? WindowKind::AlgebroidVectorField : WindowKind::VectorField;
}

}  // namespace

LeviRunState initial_state(const PoissonTable& pi, const LeviAlgebraData& data, const LeviOptions& options) {
  if (options.schedule.steps < 0) throw InputError("step count must be nonnegative");
  if (pi.n() != data.n) throw InputError("table and algebra dimensions differ");
  const int final_degree = options.schedule.final_degree();
  const int d = options.max_degree == 0 ? final_degree : options.max_degree;
  if (d < final_degree)
    throw DomainError("schedule error: truncation degree " + std::to_string(d) + " is below the last window bound " +
                      std::to_string(final_degree));
  if (d > pi.max_degree())
    throw DomainError("truncation degree " + std::to_string(d) + " exceeds the degree of the input table (" +
                      std::to_string(pi.max_degree()) + ")");
  LeviRunState state;
  state.context = AlgebraContext::make(data);
  if (!(linear_part(pi) == data.full)) throw DomainError("linear part of the table does not match the algebra data");
  state.max_degree = d;
  state.options = options;
  state.table = PoissonTable(pi.n(), d, data.m);
  for (std::size_t i = 0; i < pi.n(); ++i)
    for (std::size_t j = i + 1; j < pi.n(); ++j) state.table.set(i, j, pi.entry(i, j));
  if (auto bad = jacobi_violation(state.table)) {
    throw DomainError("input not Poisson to order " + std::to_string(d - 1) + ": jacobiator nonzero on (" +
                      std::to_string(bad->index[0]) + ", " + std::to_string(bad->index[1]) + ", " +
                      std::to_string(bad->index[2]) + ")");
  }
  if (options.fiber_dim && !check_fiberwise_linear(state.table, *options.fiber_dim))
    throw DomainError("table is not fiberwise linear");
  state.phi = PolyMap::identity(pi.n());
  state.phi_inverse = state.phi;
  return state;
}

std::vector<Polynomial> normal_form_defects(const PoissonTable& pi, const LeviAlgebraData& data) {
  const std::size_t n = data.n, m = data.m;
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Polynomial p = pi.entry(i, j);
      for (std::size_t k = 0; k < m; ++k) p.add_term(Monomial::variable(k), -data.c(i, j, k));
      out.push_back(std::move(p));
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n - m; ++j) {
      Polynomial p = pi.entry(i, m + j);
      for (std::size_t k = 0; k < n - m; ++k) p.add_term(Monomial::variable(m + k), -data.a(i, j, k));
      out.push_back(std::move(p));
    }
  return out;
}

int lowest_defect_degree(const PoissonTable& pi, const LeviAlgebraData& data) {
  int best = -1;
  for (const auto& p : normal_form_defects(pi, data))
    if (!p.is_zero() && (best < 0 || p.min_degree() < best)) best = p.min_degree();
  return best;
}

Cochain extract_2cocycle(const LeviRunState& state, std::shared_ptr<const ModuleWindow> window) {
  const auto& data = state.context->data;
  const std::size_t m = data.m;
  Cochain f = Cochain::zero(window, 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Polynomial p = window_part(state.table.entry(i, j), window->lo(), window->hi());
      f.pair_slot(i, j) = window->from_polynomial(p);
    }
  if (!is_cocycle(f)) throw DomainError("input not Poisson to required order: window defects are not a 2-cocycle");
  return f;
}

SubstepResult substep_x(const LeviRunState& state, const Cochain& f) {
  const auto& win = *f.window;
  const std::size_t n = state.table.n();
  const std::size_t m = state.context->m();
  const Cochain w = solve_2cocycle(f);
  SubstepResult out;
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < m; ++i) {
    comps.push_back(win.to_polynomial(w.slots[i]));
    out.coordinates.push_back(Polynomial::variable(n, i) - comps.back());
  }
  out.correction = PolyMap(std::move(comps), MapRole::VectorField);
  out.cocycle_norm = cochain_norm(f, 1.0);
  // {x'_i, x'_j} - sum c x'_k has no terms through the window top.
  const auto& data = state.context->data;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Polynomial d = bracket(state.table, out.coordinates[i], out.coordinates[j]);
      for (std::size_t k = 0; k < m; ++k)
        if (!data.c(i, j, k).is_zero()) d -= out.coordinates[k] * data.c(i, j, k);
      if (!truncate(d, win.hi()).is_zero()) throw InternalError("x-substep post-condition failed");
    }
  return out;
}

SubstepResult substep_y(const LeviRunState& state, const std::vector<Polynomial>& new_x,
                        std::shared_ptr<const ModuleWindow> window) {
  const auto& data = state.context->data;
  const std::size_t n = data.n, m = data.m, r = n - m;
  SubstepResult out;
  if (r == 0) {
    out.correction = PolyMap({}, MapRole::VectorField);
    return out;
  }
  Cochain u = Cochain::zero(window, 1);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Polynomial> field;
    for (std::size_t j = 0; j < r; ++j) {
      Polynomial p = bracket(state.table, new_x[i], Polynomial::variable(n, m + j));
      for (std::size_t k = 0; k < r; ++k) p.add_term(Monomial::variable(m + k), -data.a(i, j, k));
      field.push_back(window_part(p, window->lo(), window->hi()));
    }
    u.slots[i] = window->from_field(field);
  }
  if (!is_cocycle(u)) throw DomainError("input not Poisson to required order: x-y defects are not a 1-cocycle");
  const Cochain v = solve_1cocycle(u);
  out.cocycle_norm = cochain_norm(u, 1.0);
  std::vector<Polynomial> comps = window->to_field(v.slots[0]);
  for (std::size_t j = 0; j < r; ++j) out.coordinates.push_back(Polynomial::variable(n, m + j) - comps[j]);
  out.correction = PolyMap(std::move(comps), MapRole::VectorField);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Polynomial d = bracket(state.table, new_x[i], out.coordinates[j]);
      for (std::size_t k = 0; k < r; ++k)
        if (!data.a(i, j, k).is_zero()) d -= out.coordinates[k] * data.a(i, j, k);
      if (!truncate(d, window->hi()).is_zero()) throw InternalError("y-substep post-condition failed");
    }
  return out;
}

LeviRunState levi_step(const LeviRunState& state) {
  const auto start = std::chrono::steady_clock::now();
  const auto& data = state.context->data;
  const std::size_t n = data.n, m = data.m;
  const int l = state.step;
  if (l >= state.options.schedule.steps) throw InputError("no steps left in the schedule");
  const int lo = state.options.schedule.lo(l);
  const int hi = state.options.schedule.hi(l);
  const std::size_t fiber = state.options.fiber_dim.value_or(0);
  const int d = state.max_degree;

  StepLog log;
  log.step = l;
  log.lo = lo;
  log.hi = hi;
  const auto fwin = build_window(state.context, function_kind(state.options), lo, hi, fiber);
  const Cochain f = extract_2cocycle(state, fwin);
  const SubstepResult x = substep_x(state, f);
  log.function_dim = fwin->dim();
  log.function_invariants = fwin->kernel_dim();
  log.cocycle_norm = x.cocycle_norm;
  log.w = x.correction;

  std::shared_ptr<const ModuleWindow> vwin;
  if (n > m) vwin = build_window(state.context, field_kind(state.options), lo, hi, fiber);
  const SubstepResult y = substep_y(state, x.coordinates, vwin);
  log.field_dim = vwin ? vwin->dim() : 0;
  log.field_cocycle_norm = y.cocycle_norm;
  log.v = y.correction;

  std::vector<Polynomial> comps = x.coordinates;
  comps.insert(comps.end(), y.coordinates.begin(), y.coordinates.end());
  const PolyMap phi(std::move(comps), MapRole::CoordinateChange);
  std::vector<Polynomial> psi;
  for (std::size_t i = 0; i < n; ++i) psi.push_back(phi[i] - Polynomial::variable(n, i));
  log.psi = PolyMap(std::move(psi), MapRole::VectorField);

  LeviRunState next = state;
  // One-sided check: truncated near-identity jets form a group.
  const PolyMap phi_inv = invert_near_identity(phi, d, false);
  if (!(compose(phi, phi_inv, d) == PolyMap::identity(n))) throw InternalError("step inverse check failed");
  next.table = pushforward(state.table, phi, phi_inv, d);
  // phi o Phi = Phi + psi o Phi; psi starts above the window bottom, which
  // keeps the substitution cheap.
  {
    const PolyMap moved = compose(log.psi, state.phi, d);
    std::vector<Polynomial> acc;
    for (std::size_t i = 0; i < n; ++i) acc.push_back(state.phi[i] + moved[i]);
    next.phi = PolyMap(std::move(acc), MapRole::CoordinateChange);
  }
  next.phi_inverse = compose(state.phi_inverse, phi_inv, d);
  next.step = l + 1;

  // Step invariants.
  const int lowest = lowest_defect_degree(next.table, data);
  if (lowest >= 0 && lowest <= hi)
    throw InternalError("window progress failed: defect of degree " + std::to_string(lowest) + " after step " +
                        std::to_string(l));
  if (!(linear_part(next.table) == data.full)) throw InternalError("linear part changed during a step");
  if (auto bad = jacobi_violation(next.table)) throw InternalError("step produced a table violating Jacobi");
  if (state.options.fiber_dim && !check_fiberwise_linear(next.table, fiber))
    throw InternalError("constraint failure: table left the fiberwise-linear class");

  log.table = next.table;
  log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  next.log.push_back(std::move(log));
  return next;
}

LeviResult levi_normalize(const PoissonTable& pi, const LeviAlgebraData& data, const LeviOptions& options) {
  LeviRunState state = initial_state(pi, data, options);
  LeviResult result;
  result.input = state.table;
  result.max_degree = state.max_degree;
  while (state.step < options.schedule.steps) {
    state = levi_step(state);
    if (options.on_step) options.on_step(state.log.back());
  }
  result.normal_form = state.table;
  result.phi = state.phi;
  result.phi_inverse = state.phi_inverse;
  result.log = state.log;

  auto& v = result.verification;
  const int d = state.max_degree;
  v.verified_degree = std::min(d, options.schedule.final_degree());
  const int lowest = lowest_defect_degree(result.normal_form, data);
  v.normal_form = lowest < 0 || lowest > v.verified_degree;
  if (!v.normal_form) v.failures.push_back("normal-form relations fail at degree " + std::to_string(lowest));

  v.tails = true;
  const std::size_t m = data.m, n = data.n;
  for (std::size_t i = 0; i < n - m; ++i)
    for (std::size_t j = i + 1; j < n - m; ++j) {
      Polynomial g = result.normal_form.entry(m + i, m + j);
      for (std::size_t k = 0; k < n - m; ++k) g.add_term(Monomial::variable(m + k), -data.b(i, j, k));
      if (!g.is_zero() && g.min_degree() < 2) v.tails = false;
    }
  if (!v.tails) v.failures.push_back("y-y tails contain terms of degree < 2");

  v.windows = true;
  v.jacobi = !jacobi_violation(result.input).has_value();
  v.linear_part = true;
  for (const auto& s : result.log) {
    const int low = lowest_defect_degree(s.table, data);
    if (low >= 0 && low <= s.hi) v.windows = false;
    if (jacobi_violation(s.table)) v.jacobi = false;
    if (!(linear_part(s.table) == data.full)) v.linear_part = false;
    if (options.fiber_dim && !check_fiberwise_linear(s.table, *options.fiber_dim)) v.fiberwise_linear = false;
  }
  if (!v.windows) v.failures.push_back("window progress invariant violated");
  if (!v.jacobi) v.failures.push_back("jacobiator nonzero on an intermediate table");
  if (!v.linear_part) v.failures.push_back("linear part changed");
  if (!v.fiberwise_linear) v.failures.push_back("table left the fiberwise-linear class");

  v.pushforward = pushforward(result.input, result.phi, result.phi_inverse, d) == result.normal_form;
  if (!v.pushforward) v.failures.push_back("pushforward of the input by Phi differs from the output");
  v.inverse = compose(result.phi, result.phi_inverse, d) == PolyMap::identity(n);
  if (!v.inverse) v.failures.push_back("Phi o Phi^-1 is not the identity");

  if (options.check_idempotence) {
    LeviOptions again = options;
    again.check_idempotence = false;
    again.on_step = nullptr;
    const LeviResult second = levi_normalize(result.normal_form, data, again);
    v.idempotent = second.phi.is_identity() && second.normal_form == result.normal_form;
    if (!*v.idempotent) v.failures.push_back("normalizing the output again is not the identity");
  }
  return result;
}

double table_majorant(const PoissonTable& pi, double rho) {
  double best = 0;
  for (std::size_t i = 0; i < pi.n(); ++i)
    for (std::size_t j = i + 1; j < pi.n(); ++j) best = std::max(best, majorant_sup_norm(pi.entry(i, j), rho));
  return best;
}

double table_l2(const PoissonTable& pi, double rho) {
  double best = 0;
  for (std::size_t i = 0; i < pi.n(); ++i)
    for (std::size_t j = i + 1; j < pi.n(); ++j) best = std::max(best, weighted_l2_norm(pi.entry(i, j), rho));
  return best;
}

ConvergenceReport convergence_report(const PoissonTable& input, const std::vector<StepLog>& log, double rho,
                                     double epsilon) {
  if (!(rho > 0)) throw InputError("rho must be positive");
  if (!(epsilon > 0)) throw InputError("epsilon must be positive");
  ConvergenceReport rep;
  rep.rho = rho;
  rep.epsilon = epsilon;
  ConvergenceRow first;
  first.pi_radius = rho;
  first.pi_majorant = table_majorant(input, rho);
  first.pi_l2 = table_l2(input, rho);
  rep.rows.push_back(first);
  for (std::size_t s = 0; s < log.size(); ++s) {
    const double k = static_cast<double>(s + 1);  // coordinates after this step are the k-th ones
    ConvergenceRow row;
    row.step = static_cast<int>(s + 1);
    row.lo = log[s].lo;
    row.hi = log[s].hi;
    row.psi_radius = k >= 2 ? std::exp(1.0 / (k - 1) - epsilon / ((k - 1) * (k - 1))) * rho : rho;
    double psi_major = 0, psi_l2 = 0;
    for (const auto& c : log[s].psi.components()) {
      psi_major = std::max(psi_major, majorant_sup_norm(c, row.psi_radius));
      psi_l2 = std::max(psi_l2, weighted_l2_norm(c, row.psi_radius));
    }
    row.psi_majorant = psi_major;
    row.psi_l2 = psi_l2;
    row.pi_radius = std::exp(1.0 / k) * rho;
    row.pi_majorant = table_majorant(log[s].table, row.pi_radius);
    row.pi_l2 = table_l2(log[s].table, row.pi_radius);
    row.function_dim = log[s].function_dim;
    row.field_dim = log[s].field_dim;
    row.seconds = log[s].seconds;
    rep.rows.push_back(row);
  }
  rep.pi_nonincreasing = true;
  for (std::size_t r = 2; r < rep.rows.size(); ++r)
    if (rep.rows[r].pi_majorant > rep.rows[r - 1].pi_majorant * (1 + 1e-12)) rep.pi_nonincreasing = false;
  rep.decay_consistent = true;
  if (rep.rows.size() > 1) {
    rep.decay_constant = rep.rows[1].pi_majorant / (std::exp(-1.0) * rho);
    for (std::size_t r = 1; r < rep.rows.size(); ++r) {
      const double bound = rep.decay_constant * std::exp(-1.0 / std::sqrt(static_cast<double>(r))) * rho;
      if (rep.rows[r].pi_majorant > bound * (1 + 1e-12)) rep.decay_consistent = false;
    }
  }
  return rep;
}

}  // namespace levinf
