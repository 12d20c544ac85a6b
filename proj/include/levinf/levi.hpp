#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levinf/cohom.hpp"
#include "levinf/poisson.hpp"

namespace levinf {

enum class ScheduleKind { Doubling, Single };

/// Degree windows (lo, hi] visited by the steps: (2^l, 2^(l+1)] for the
/// doubling schedule, (l+1, l+2] for the single-degree one.
struct Schedule {
  ScheduleKind kind = ScheduleKind::Doubling;
  int steps = 0;

  int lo(int l) const;
  int hi(int l) const;
  /// Upper bound of the last window (1 when there are no steps).
  int final_degree() const { return steps == 0 ? 1 : hi(steps - 1); }
};

struct StepLog;

struct LeviOptions {
  Schedule schedule;
  /// Truncation degree; 0 means schedule.final_degree().
  int max_degree = 0;
  /// Number of leading fiber variables when the table is the dual of a Lie
  /// algebroid; switches to the constrained windows.
  std::optional<std::size_t> fiber_dim;
  /// Run the normalization again on the output and require an identity map.
  bool check_idempotence = false;
  /// Called after every completed step (used for partial logs).
  std::function<void(const StepLog&)> on_step;
};

struct StepLog {
  int step = 0;
  int lo = 0;
  int hi = 0;
  PoissonTable table;   // after the step
  PolyMap w;            // x-corrections
  PolyMap v;            // y-corrections
  PolyMap psi;          // phi = Id + psi
  std::size_t function_dim = 0;
  std::size_t field_dim = 0;
  std::size_t function_invariants = 0;
  double cocycle_norm = 0;       // ||f||_1 of the 2-cocycle
  double field_cocycle_norm = 0; // ||u||_1 of the 1-cocycle
  double seconds = 0;
};

struct LeviRunState {
  int step = 0;
  PoissonTable table;
  /// Current coordinates as polynomials in the original ones, and back.
  PolyMap phi;
  PolyMap phi_inverse;
  std::vector<StepLog> log;
  std::shared_ptr<const AlgebraContext> context;
  LeviOptions options;
  int max_degree = 0;
};

/// Validates the input and truncates it at the run degree.
LeviRunState initial_state(const PoissonTable& pi, const LeviAlgebraData& data, const LeviOptions& options);

/// x-x defects of the current table in the window of the current step.
Cochain extract_2cocycle(const LeviRunState& state, std::shared_ptr<const ModuleWindow> window);

struct SubstepResult {
  std::vector<Polynomial> coordinates;  // new x (or y) in current coordinates
  PolyMap correction;                   // w (or v)
  double cocycle_norm = 0;
};

SubstepResult substep_x(const LeviRunState& state, const Cochain& f);
SubstepResult substep_y(const LeviRunState& state, const std::vector<Polynomial>& new_x,
                        std::shared_ptr<const ModuleWindow> window);

LeviRunState levi_step(const LeviRunState& state);

/// {x_i,x_j} - sum c x_k for i<j<m and {x_i,y_j} - sum a y_k, in that order.
std::vector<Polynomial> normal_form_defects(const PoissonTable& pi, const LeviAlgebraData& data);
/// Lowest degree of a nonzero defect, or -1 when all vanish.
int lowest_defect_degree(const PoissonTable& pi, const LeviAlgebraData& data);

struct LeviVerification {
  bool normal_form = false;      // x-x, x-y relations exact through the verified degree
  bool tails = false;            // y-y brackets: b-part plus terms of degree >= 2
  bool windows = false;          // defects vanish through hi after every step
  bool jacobi = false;           // every table Poisson through D-1
  bool linear_part = false;      // unchanged across steps
  bool pushforward = false;      // input pushed by Phi equals output
  bool inverse = false;          // Phi o Phi^-1 = Id
  bool fiberwise_linear = true;  // algebroid runs only
  std::optional<bool> idempotent;
  int verified_degree = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct LeviResult {
  PoissonTable input;
  PoissonTable normal_form;
  PolyMap phi;
  PolyMap phi_inverse;
  std::vector<StepLog> log;
  LeviVerification verification;
  int max_degree = 0;
};

LeviResult levi_normalize(const PoissonTable& pi, const LeviAlgebraData& data, const LeviOptions& options);

struct ConvergenceRow {
  int step = 0;
  int lo = 0;
  int hi = 0;
  std::optional<double> psi_majorant;  // |psi_l| at exp(1/(l-1) - eps/(l-1)^2) rho
  double psi_radius = 0;
  double psi_l2 = 0;
  double pi_majorant = 0;  // |Pi|_l at exp(1/l) rho
  double pi_radius = 0;
  double pi_l2 = 0;
  std::size_t function_dim = 0;
  std::size_t field_dim = 0;
  double seconds = 0;
};

struct ConvergenceReport {
  double rho = 0;
  double epsilon = 0;
  std::vector<ConvergenceRow> rows;  // row 0 is the input table
  bool pi_nonincreasing = false;
  bool decay_consistent = false;
  double decay_constant = 0;  // C estimated from the first step
};

/// Majorant and weighted L2 norms along a run; informational only.
ConvergenceReport convergence_report(const PoissonTable& input, const std::vector<StepLog>& log, double rho,
                                     double epsilon);

/// max over entries of the majorant norm / weighted L2 norm.
double table_majorant(const PoissonTable& pi, double rho);
double table_l2(const PoissonTable& pi, double rho);

}  // namespace levinf
