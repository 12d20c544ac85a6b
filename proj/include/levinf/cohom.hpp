#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "levinf/random.hpp"
#include "levinf/window.hpp"

namespace levinf {

/// k-cochain of g with values in a window. Slots: one for k=0, one per
/// generator for k=1, one per pair i<j (lexicographic) for k=2, one per
/// triple i<j<l for k=3.
struct Cochain {
  std::shared_ptr<const ModuleWindow> window;
  int degree = 0;
  std::vector<Vector> slots;

  static Cochain zero(std::shared_ptr<const ModuleWindow> window, int degree);
  static std::size_t slot_count(std::size_t m, int degree);

  /// Value on xi_i ^ xi_j for any i, j (antisymmetric).
  Vector pair_value(std::size_t i, std::size_t j) const;
  Vector& pair_slot(std::size_t i, std::size_t j);
  bool is_zero() const;

  friend bool operator==(const Cochain& a, const Cochain& b) { return a.degree == b.degree && a.slots == b.slots; }
};

/// delta for k = 0, 1. Throws InputError for other degrees.
Cochain ce_differential(const Cochain& c);
/// delta of a 1- or 2-cochain (the 2 -> 3 case is kept internal to the
/// cocycle checks).
Cochain cocycle_defect(const Cochain& c);
bool is_cocycle(const Cochain& c);

/// Homotopy for 2-cocycles: Casimir part plus the trivial-module part.
/// The result satisfies delta(w) = f; that identity is checked.
Cochain solve_2cocycle(const Cochain& f);
/// Homotopy for 1-cocycles; checks delta(g) = w.
Cochain solve_1cocycle(const Cochain& w);

/// Exact elimination oracle for delta x = f over one window. The delta matrix
/// is split into connected components that are factored on demand.
class DirectSolver {
 public:
  /// `target_degree` is the degree of the right-hand sides (1 or 2).
  DirectSolver(std::shared_ptr<const ModuleWindow> window, int target_degree);
  ~DirectSolver();

  Cochain solve(const Cochain& f) const;
  const SparseMatrix& matrix() const { return delta_; }

 private:
  struct Component;
  std::shared_ptr<const Component> component(std::size_t c) const;

  std::shared_ptr<const ModuleWindow> window_;
  int target_degree_;
  SparseMatrix delta_;
  std::vector<std::vector<std::size_t>> rows_of_, cols_of_;
  std::vector<std::size_t> row_component_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const Component>> cache_;
};

Cochain solve_direct(const Cochain& f);

/// Weighted L2 norm of one window element (fields: root of the sum of the
/// squared component norms).
double window_norm(const ModuleWindow& window, const Vector& v, double rho);
/// max over slots.
double cochain_norm(const Cochain& c, double rho);

Cochain random_cochain(Rng& rng, std::shared_ptr<const ModuleWindow> window, int degree, std::size_t terms_per_slot);

struct HomotopyRatioReport {
  std::size_t samples = 0;
  double max_ratio_2 = 0;   // ||h(f)|| / ||f|| for 2-cocycles
  double max_ratio_1 = 0;   // same for 1-cocycles
  double mean_ratio_2 = 0;
  double mean_ratio_1 = 0;
  double max_ratio() const { return max_ratio_2 > max_ratio_1 ? max_ratio_2 : max_ratio_1; }
};

/// Samples random coboundaries f = delta(x) and records ||h(f)||_rho / ||f||_rho.
/// Zero coboundaries are skipped.
HomotopyRatioReport homotopy_norm_bound(std::shared_ptr<const ModuleWindow> window, double rho, std::size_t samples,
                                        std::uint64_t seed, std::size_t terms_per_slot = 5);

}  // namespace levinf
