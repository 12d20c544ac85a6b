// Acceptance run: one PASS/FAIL line per criterion on stdout, progress on
// stderr. Exit status 0 iff every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "levinf/cohom.hpp"
#include "oracle.hpp"

using namespace levinf;
using namespace testsupport;

namespace {

// Pinned thresholds.
constexpr double kMonteCarloTolerance = 0.05;   // relative, criterion 5
constexpr std::size_t kMonteCarloSamples = 1000000;
constexpr double kRatioGrowthSlack = 1.25;      // criterion 6: r_l <= slack * max_{l'<l} r_l'
constexpr int kCoboundariesPerWindow = 100;     // criterion 4
constexpr int kPoissonInstances = 10;           // criteria 1, 2
constexpr int kAlgebroidInstances = 5;          // criterion 7

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Line {
  int id;
  bool pass;
  std::string text;
};
std::vector<Line> lines;

void report(int id, bool pass, const std::string& text) {
  lines.push_back({id, pass, text});
  std::cerr << "  -> criterion " << id << (pass ? " PASS" : " FAIL") << "\n";
}

struct Run {
  std::string name;
  LeviAlgebraData data;
  LeviResult result;
};
std::vector<Run> runs;  // every normalization run, for criteria 3 and 8

PoissonTable perturb(const LeviAlgebraData& d, int max_degree, std::uint64_t seed) {
  Rng rng(seed);
  return pushforward(PoissonTable::linear(d.full, max_degree, d.m), random_near_identity(rng, d.n, 2, 3, 2),
                     max_degree);
}

// Lowest degree of a nonzero x-x or x-y defect, recomputed from the entries.
int lowest_defect(const PoissonTable& pi, const LeviAlgebraData& d) {
  int lowest = -1;
  for (std::size_t i = 0; i < d.m; ++i)
    for (std::size_t j = 0; j < d.n; ++j) {
      if (j < d.m && j <= i) continue;
      Polynomial p = pi.bracket_of(i, j);
      for (std::size_t k = 0; k < d.n; ++k) p.add_term(Monomial::variable(k), -d.full(i, j, k));
      if (!p.is_zero() && (lowest < 0 || p.min_degree() < lowest)) lowest = p.min_degree();
    }
  return lowest;
}

std::string fmt(double x, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

void criterion1() {
  std::cerr << "criterion 1: sl(2), L=4, D=16\n";
  const LeviAlgebraData d = sl2_data();
  const PoissonTable target = PoissonTable::linear(d.full, 16, 3);
  int exact = 0;
  double worst = 0;
  for (int s = 1; s <= kPoissonInstances; ++s) {
    const auto t = Clock::now();
    LeviOptions o;
    o.schedule.steps = 4;
    LeviResult r = levi_normalize(perturb(d, 16, 1000 + s), d, o);
    const double secs = since(t);
    worst = std::max(worst, secs);
    const bool ok = r.normal_form == target;
    exact += ok;
    std::cerr << "  seed " << 1000 + s << ": " << (ok ? "linear" : "NOT linear") << ", " << fmt(secs) << " s\n";
    runs.push_back({"sl2 seed " + std::to_string(1000 + s), d, std::move(r)});
  }
  report(1, exact == kPoissonInstances,
         "semisimple linearization: " + std::to_string(exact) + "/" + std::to_string(kPoissonInstances) +
             " perturbed sl(2) tables normalized to the exact linear table (L=4, D=16; slowest " + fmt(worst) + " s)");
}

void criterion2() {
  std::cerr << "criterion 2: sl(2) x K^2, L=3, D=8\n";
  const LeviAlgebraData d = sl2_k2_data();
  int good = 0;
  std::size_t tail_terms = 0;
  for (int s = 1; s <= kPoissonInstances; ++s) {
    LeviOptions o;
    o.schedule.steps = 3;
    LeviResult r = levi_normalize(perturb(d, 8, 2000 + s), d, o);
    bool ok = lowest_defect(r.normal_form, d) < 0;  // x-x and x-y exact through D
    const std::size_t q = d.n - d.m;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) {
        Polynomial g = r.normal_form.entry(d.m + i, d.m + j);
        for (std::size_t k = 0; k < q; ++k) g.add_term(Monomial::variable(d.m + k), -d.b(i, j, k));
        for (const auto& [mono, c] : g.terms()) {
          ++tail_terms;
          if (mono.degree() < 2) ok = false;
        }
      }
    good += ok;
    std::cerr << "  seed " << 2000 + s << ": " << (ok ? "normal form" : "VIOLATION") << "\n";
    runs.push_back({"sl2xK2 seed " + std::to_string(2000 + s), d, std::move(r)});
  }
  report(2, good == kPoissonInstances,
         "Levi normal form with radical: " + std::to_string(good) + "/" + std::to_string(kPoissonInstances) +
             " sl(2) x K^2 runs exact in x-x and x-y, y-y tails all of degree >= 2 (" + std::to_string(tail_terms) +
             " tail terms)");
}

void criterion7() {
  std::cerr << "criterion 7: sl(2)-action algebroid on K^2, L=3, D=8\n";
  const AlgebroidData lin = sl2_action_algebroid(8);
  int good = 0;
  for (int s = 1; s <= kAlgebroidInstances; ++s) {
    Rng rng(3000 + s);
    const PoissonTable pi = pushforward(dual_poisson(lin), random_bundle_map(rng, 3, 2, 2, 3, 2), 8);
    const AlgebroidData a = algebroid_from_dual(pi, 3);
    LeviOptions o;
    o.schedule.steps = 3;
    bool ok = true;
    try {
      AlgebroidLeviResult r = algebroid_levi_normalize(a, sl2_data(), o);
      const AlgebroidData& out = r.normalized;
      // three relations, checked on the read-back data
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k)
            if (!(out.bracket(i, j, k) == Polynomial::constant(2, sl2()(i, j, k)))) ok = false;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          if (!(out.anchor(i, j) == lin.anchor(i, j))) ok = false;
      // constrained subspaces: corrections and tables keep the bundle shape
      for (const auto& st : r.run.log) {
        if (!check_fiberwise_linear(st.table, 3)) ok = false;
        if (!is_bundle_map(PolyMap(st.w.components(), MapRole::CoordinateChange), 3)) ok = false;
        for (const auto& c : st.v.components())
          for (const auto& [mono, coef] : c.terms())
            if (mono.partial_degree(0, 3) != 0) ok = false;
        if (!is_bundle_map(st.psi, 3)) ok = false;
      }
      if (!r.ok()) ok = false;
      runs.push_back({"algebroid seed " + std::to_string(3000 + s), dual_levi_data(a, sl2_data()), std::move(r.run)});
    } catch (const std::exception& e) {
      std::cerr << "  seed " << 3000 + s << ": " << e.what() << "\n";
      ok = false;
    }
    good += ok;
    std::cerr << "  seed " << 3000 + s << ": " << (ok ? "normal form" : "VIOLATION") << "\n";
  }
  report(7, good == kAlgebroidInstances,
         "algebroid normal form: " + std::to_string(good) + "/" + std::to_string(kAlgebroidInstances) +
             " perturbed sl(2)-action algebroids satisfy all three relations exactly; every step stayed fiberwise "
             "linear");
}

void criterion3() {
  std::size_t steps = 0, bad = 0;
  for (const auto& r : runs)
    for (const auto& s : r.result.log) {
      ++steps;
      const int low = lowest_defect(s.table, r.data);
      if (low >= 0 && low <= s.hi) {
        ++bad;
        std::cerr << "  " << r.name << " step " << s.step << ": defect at degree " << low << "\n";
      }
    }
  report(3, bad == 0 && steps > 0,
         "window progress: " + std::to_string(steps - bad) + "/" + std::to_string(steps) +
             " steps over " + std::to_string(runs.size()) + " runs have zero x-x and x-y defects through 2^(l+1)");
}

void criterion8() {
  std::size_t tables = 0, bad = 0, oracle = 0;
  for (const auto& r : runs) {
    std::vector<const PoissonTable*> all{&r.result.input};
    for (const auto& s : r.result.log) all.push_back(&s.table);
    all.push_back(&r.result.normal_form);
    for (const PoissonTable* t : all) {
      ++tables;
      if (jacobi_violation(*t)) ++bad;
    }
    if (r.result.max_degree <= 8) {  // reference expansion on the small runs' outputs
      ++oracle;
      if (!ref_is_poisson(r.result.normal_form)) ++bad;
    }
  }
  report(8, bad == 0 && tables > 0,
         "Jacobi preservation: " + std::to_string(tables) + " input, intermediate and final tables Poisson through D-1 (" +
             std::to_string(oracle) + " final tables re-checked by direct expansion), " + std::to_string(bad) +
             " failures");
}

struct WindowStats {
  int l;
  double ratio = 0;  // max ||h(f)|| / ||f||, rho = 1
};

Cochain minus(const Cochain& a, const Cochain& b) {
  Cochain d = a;
  for (std::size_t s = 0; s < d.slots.size(); ++s) axpy(Scalar(-1), b.slots[s], d.slots[s]);
  return d;
}

// Criteria 4 and 6 share the samples.
void criteria4and6() {
  std::size_t checked = 0, failed = 0;
  bool bounded = true;
  std::string profiles;
  struct Algebra {
    std::string name;
    LeviAlgebraData data;
    bool gated = true;
  };
  // so(3) is the compact form of sl(2); its profile is printed for comparison only.
  for (const Algebra& alg : {Algebra{"sl(2)", sl2_data()}, Algebra{"sl(2) x K^2", sl2_k2_data()},
                             Algebra{"so(3)", so3_data(), false}}) {
    const auto ctx = AlgebraContext::make(alg.data);
    std::vector<double> profile;
    for (int l = 0; l <= 3; ++l) {
      const auto t = Clock::now();
      Rng rng(4000 + 10 * l + alg.data.n);
      double worst = 0;
      auto record = [&](const Cochain& f, const Cochain& h) {
        const double nf = cochain_norm(f, 1.0);
        if (nf > 0) worst = std::max(worst, cochain_norm(h, 1.0) / nf);
      };
      auto check = [&](const Cochain& f, const Cochain& h, const Cochain& direct) {
        ++checked;
        if (!(ce_differential(h) == f) || !(ce_differential(direct) == f) || !is_cocycle(minus(h, direct))) ++failed;
      };
      const auto fw = build_window(ctx, WindowKind::Function, 1 << l, 2 << l);
      for (int s = 0; s < kCoboundariesPerWindow; ++s) {
        const Cochain f = ce_differential(random_cochain(rng, fw, 1, 3));
        const Cochain h = solve_2cocycle(f);
        check(f, h, solve_direct(f));
        record(f, h);
        const Cochain u = ce_differential(random_cochain(rng, fw, 0, 3));
        const Cochain g = solve_1cocycle(u);
        check(u, g, solve_direct(u));
      }
      if (alg.data.m < alg.data.n) {
        const auto vw = build_window(ctx, WindowKind::VectorField, 1 << l, 2 << l);
        for (int s = 0; s < kCoboundariesPerWindow; ++s) {
          const Cochain u = ce_differential(random_cochain(rng, vw, 0, 3));
          const Cochain g = solve_1cocycle(u);
          check(u, g, solve_direct(u));
          record(u, g);
        }
      }
      std::cerr << "  " << alg.name << " l=" << l << ": dim " << fw->dim() << ", max ratio " << fmt(worst, 4) << ", "
                << fmt(since(t)) << " s\n";
      profile.push_back(worst);
    }
    double running = profile[0];
    for (std::size_t l = 1; l < profile.size(); ++l) {
      if (alg.gated && (!(profile[l] <= kRatioGrowthSlack * running) || !std::isfinite(profile[l]))) bounded = false;
      running = std::max(running, profile[l]);
    }
    profiles += " " + alg.name + (alg.gated ? "" : " (not gated)") + " [";
    for (std::size_t l = 0; l < profile.size(); ++l) profiles += (l ? ", " : "") + fmt(profile[l], 3);
    profiles += "] bound " + fmt(running, 3) + ";";
  }
  report(4, failed == 0,
         "homotopy correctness: " + std::to_string(checked - failed) + "/" + std::to_string(checked) +
             " random coboundaries over windows l=0..3 satisfy delta(h f) = f, with h - solve_direct a cocycle");
  profiles.pop_back();
  report(6, bounded,
         "homotopy ratio profile (rho=1, max over samples per window l=0..3):" + profiles +
             "; growth slack " + fmt(kRatioGrowthSlack));
}

// Criterion 5: weighted L2 norm vs Monte Carlo over the complex ball.
std::complex<double> eval(const Polynomial& p, const std::vector<std::complex<double>>& z) {
  std::complex<double> s = 0;
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> t(c.re().get_d(), c.im().get_d());
    for (std::size_t i = 0; i < p.nvars(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= z[i];
    s += t;
  }
  return s;
}

void criterion5() {
  std::mt19937_64 gen(5000);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  Rng rng(5001);
  double worst_ball = 0, worst_sphere = 0, worst_moments = 0;
  int within = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = t < 10 ? 2 : 3;
    const Polynomial p = random_polynomial(rng, n, 0, 4, 6);
    double ball = 0, sphere = 0;
    std::vector<std::complex<double>> z(n);
    for (std::size_t s = 0; s < kMonteCarloSamples; ++s) {
      double r2 = 0;
      for (auto& zi : z) {
        zi = {normal(gen), normal(gen)};
        r2 += std::norm(zi);
      }
      const double inv = 1.0 / std::sqrt(r2);
      for (auto& zi : z) zi *= inv;  // uniform on the unit sphere S^(2n-1)
      sphere += std::norm(eval(p, z));
      const double radius = std::pow(unif(gen), 1.0 / (2.0 * n));  // uniform in the unit ball of C^n
      for (auto& zi : z) zi *= radius;
      ball += std::norm(eval(p, z));
    }
    const double mc_ball = std::sqrt(ball / kMonteCarloSamples);
    const double mc_sphere = std::sqrt(sphere / kMonteCarloSamples);
    const double formula = weighted_l2_norm(p, 1.0);
    // closed-form ball average: weights a! n! / (|a| + n)!
    double moments = 0;
    for (const auto& [m, c] : p.terms()) {
      const double w = l2_weight(m, n).get_d() * n / (m.degree() + n);
      moments += w * c.norm2();
    }
    moments = std::sqrt(moments);
    const double e_ball = std::abs(formula - mc_ball) / mc_ball;
    worst_ball = std::max(worst_ball, e_ball);
    worst_sphere = std::max(worst_sphere, std::abs(formula - mc_sphere) / mc_sphere);
    worst_moments = std::max(worst_moments, std::abs(moments - mc_ball) / mc_ball);
    within += e_ball <= kMonteCarloTolerance;
    std::cerr << "  poly " << t << " (n=" << n << ", deg " << p.degree() << "): formula " << fmt(formula, 5)
              << ", ball MC " << fmt(mc_ball, 5) << ", sphere MC " << fmt(mc_sphere, 5) << "\n";
  }
  report(5, within == 20,
         "norm formula vs Monte Carlo over the complex ball (10^6 samples): " + std::to_string(within) +
             "/20 within 5%, max relative error " + fmt(worst_ball) + " (normalized sphere measure: max error " +
             fmt(worst_sphere) + "; ball moments a!n!/(|a|+n)!: max error " + fmt(worst_moments) + ")");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<std::pair<int, std::function<void()>>> jobs = {
      {1, criterion1}, {2, criterion2}, {7, criterion7}, {3, criterion3},
      {8, criterion8}, {4, criteria4and6}, {5, criterion5}};
  for (const auto& [id, job] : jobs) {
    try {
      job();
    } catch (const std::exception& e) {
      report(id, false, std::string("aborted: ") + e.what());
      if (id == 4) report(6, false, "aborted with criterion 4");
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  bool all = true;
  for (const auto& l : lines) {
    std::cout << (l.pass ? "PASS" : "FAIL") << "  criterion " << l.id << ": " << l.text << "\n";
    all = all && l.pass;
  }
  std::cout << "total " << fmt(since(t0), 4) << " s\n";
  return all ? 0 : 1;
}
