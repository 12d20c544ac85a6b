#include "levinf/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "levinf/error.hpp"
#include "levinf/io.hpp"

namespace levinf {

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kInput = 2;

ProblemFile load_problem(const std::string& path, const CliOptions& opts) {
  ProblemFile p = problem_from_json(read_json_file(path));
  if (opts.field && parse_field(*opts.field) != p.run.field) {
    // reparse so that coefficient checks follow the requested field
    Json j = read_json_file(path);
    j["run"]["field"] = *opts.field;
    p = problem_from_json(j);
  }
  if (opts.steps) p.run.steps = *opts.steps;
  if (opts.degree) p.run.degree = *opts.degree;
  if (opts.schedule) p.run.schedule = parse_schedule(*opts.schedule);
  if (opts.rho) p.run.rho = *opts.rho;
  if (opts.epsilon) p.run.epsilon = *opts.epsilon;
  if (p.run.steps < 0 || p.run.degree < 0) throw InputError("steps and degree must be nonnegative");
  return p;
}

void emit(const Json& j, const CliOptions& opts, std::ostream& out) {
  if (opts.output.empty())
    out << j.dump(1) << '\n';
  else
    write_json_file(opts.output, j);
}

std::string triple(const std::array<std::size_t, 3>& t) {
  return "(" + std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " + std::to_string(t[2]) + ")";
}

std::vector<std::string> poisson_findings(const PoissonTable& t, const LeviAlgebraData& algebra) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.n(); ++i)
    for (std::size_t j = i + 1; j < t.n(); ++j) {
      const Polynomial& p = t.entry(i, j);
      if (!p.coefficient(Monomial{}).is_zero())
        out.push_back("constant term in bracket (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      for (std::size_t k = 0; k < t.n(); ++k)
        if (!(p.coefficient(Monomial::variable(k)) == algebra.full(i, j, k)))
          out.push_back("linear part of bracket (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") differs from the algebra in component " + std::to_string(k));
    }
  if (auto bad = jacobi_violation(t)) out.push_back("jacobiator nonzero on " + triple(bad->index));
  return out;
}

std::vector<std::string> algebroid_findings(const AlgebroidData& a, const LeviAlgebraData& algebra) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.base_dim(); ++j)
      if (!a.anchor(i, j).coefficient(Monomial{}).is_zero())
        out.push_back("anchor of section " + std::to_string(i) + " does not vanish at the origin");
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = i + 1; j < a.rank(); ++j)
      for (std::size_t k = 0; k < a.rank(); ++k)
        if (!(a.bracket(i, j, k).coefficient(Monomial{}) == algebra.full(i, j, k)))
          out.push_back("constant part of bracket (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") differs from the algebra in component " + std::to_string(k));
  if (out.empty()) {
    const PoissonTable dual = dual_poisson(a, false);
    if (auto bad = jacobi_violation(dual))
      out.push_back("not a Lie algebroid to order " + std::to_string(a.max_degree() - 1) +
                    ": jacobiator of the dual table nonzero on " + triple(bad->index));
    else {
      const auto rep = validate_levi_input(dual_levi_data(a, algebra));
      for (const auto& v : rep.violations) out.push_back("linear part: " + v);
    }
  }
  return out;
}

template <class F>
int run_guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kDomain;
  }
}

Json run_json(const RunSettings& r, std::uint64_t seed) {
  return Json{{"steps", r.steps},
              {"degree", r.degree},
              {"schedule", schedule_name(r.schedule)},
              {"field", field_name(r.field)},
              {"seed", seed}};
}

}  // namespace

int cmd_check(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const ProblemFile p = load_problem(path, opts);
    std::vector<std::string> findings = validate_levi_input(p.algebra).violations;
    if (findings.empty()) {
      if (p.mode == ProblemMode::Poisson)
        findings = poisson_findings(std::get<PoissonTable>(p.structure), p.algebra);
      else
        findings = algebroid_findings(std::get<AlgebroidData>(p.structure), p.algebra);
    }
    if (opts.format == OutputFormat::Json) {
      out << Json{{"file", path}, {"valid", findings.empty()}, {"findings", findings}}.dump(1) << '\n';
    } else {
      out << path << ": " << (findings.empty() ? "valid" : "invalid") << '\n';
      for (const auto& f : findings) out << "  " << f << '\n';
    }
    return findings.empty() ? kOk : kDomain;
  });
}

int cmd_normalize(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const ProblemFile p = load_problem(path, opts);
    const FieldMode f = p.run.field;
    Json result{{"mode", p.mode == ProblemMode::Poisson ? "poisson" : "algebroid"},
                {"run", run_json(p.run, opts.seed)},
                {"status", "running"}};
    Json log = Json::array();
    LeviOptions lo;
    lo.schedule.kind = p.run.schedule;
    lo.schedule.steps = p.run.steps;
    lo.max_degree = p.run.degree;
    lo.on_step = [&](const StepLog& s) { log.push_back(step_log_to_json(s, f)); };

    bool ok = false;
    try {
      if (p.mode == ProblemMode::Poisson) {
        const LeviResult r = levi_normalize(std::get<PoissonTable>(p.structure), p.algebra, lo);
        result["input"] = table_to_json(r.input, f);
        result["normal_form"] = table_to_json(r.normal_form, f);
        result["phi"] = polymap_to_json(r.phi, f);
        result["phi_inverse"] = polymap_to_json(r.phi_inverse, f);
        result["verification"] = verification_to_json(r.verification);
        ok = r.verification.ok();
      } else {
        const AlgebroidLeviResult r = algebroid_levi_normalize(std::get<AlgebroidData>(p.structure), p.algebra, lo);
        result["input"] = table_to_json(r.run.input, f);
        result["normal_form"] = table_to_json(r.run.normal_form, f);
        result["algebroid"] = algebroid_to_json(r.normalized, f);
        result["phi"] = polymap_to_json(r.run.phi, f);
        result["phi_inverse"] = polymap_to_json(r.run.phi_inverse, f);
        Json v = verification_to_json(r.run.verification);
        v["bundle_map"] = r.bundle_map;
        v["levi_relations"] = r.relation_failures.empty();
        for (const auto& s : r.relation_failures) v["failures"].push_back(s);
        v["ok"] = r.ok();
        result["verification"] = v;
        ok = r.ok();
      }
    } catch (const std::exception& e) {
      result["status"] = "failed";
      result["error"] = e.what();
      result["log"] = log;
      if (!opts.output.empty()) write_json_file(opts.output, result);
      throw;
    }
    result["status"] = ok ? "ok" : "verification failed";
    result["log"] = log;
    if (opts.output.empty()) {
      out << result.dump(1) << '\n';
      return ok ? kOk : kDomain;
    }
    write_json_file(opts.output, result);
    if (opts.format == OutputFormat::Json) {
      out << Json{{"status", result["status"]}, {"output", opts.output}, {"verification", result["verification"]}}.dump(1)
          << '\n';
    } else {
      out << "status: " << result["status"].get<std::string>() << '\n';
      for (const auto& s : log)
        out << "step " << s["step"].get<int>() << " (" << s["lo"].get<int>() << ", " << s["hi"].get<int>()
            << "]  functions " << s["function_dim"].get<std::size_t>() << "  fields "
            << s["field_dim"].get<std::size_t>() << "  " << std::fixed << std::setprecision(2)
            << s["seconds"].get<double>() << " s\n";
      for (const auto& [key, value] : result["verification"].items())
        if (value.is_boolean()) out << "  " << key << ": " << (value.get<bool>() ? "pass" : "FAIL") << '\n';
      for (const auto& s : result["verification"]["failures"]) out << "  failure: " << s.get<std::string>() << '\n';
      out << "written to " << opts.output << '\n';
    }
    return ok ? kOk : kDomain;
  });
}

int cmd_diagnostics(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const Json j = read_json_file(path);
    if (!j.is_object() || !j.contains("log") || !j.contains("input")) throw InputError("not a run log: " + path);
    const FieldMode f = parse_field(j.at("run").value("field", std::string("rational")));
    const PoissonTable input = table_from_json(j.at("input"), f);
    std::vector<StepLog> log;
    for (const auto& s : j.at("log")) log.push_back(step_log_from_json(s, f));
    const double rho = opts.rho.value_or(1.0);
    const double eps = opts.epsilon.value_or(0.5);
    const ConvergenceReport rep = convergence_report(input, log, rho, eps);
    if (opts.format == OutputFormat::Json) {
      emit(convergence_to_json(rep), opts, out);
      return kOk;
    }
    std::ostringstream s;
    s << "rho " << rho << "  epsilon " << eps << '\n';
    s << std::setw(5) << "step" << std::setw(10) << "window" << std::setw(14) << "|psi|" << std::setw(14)
      << "|psi|_L2" << std::setw(14) << "|Pi|" << std::setw(14) << "|Pi|_L2" << std::setw(10) << "fn dim"
      << std::setw(10) << "vf dim" << '\n';
    s << std::scientific << std::setprecision(4);
    for (const auto& r : rep.rows) {
      const std::string window =
          r.step == 0 ? "input" : "(" + std::to_string(r.lo) + "," + std::to_string(r.hi) + "]";
      s << std::setw(5) << r.step << std::setw(10) << window;
      if (r.psi_majorant)
        s << std::setw(14) << *r.psi_majorant << std::setw(14) << r.psi_l2;
      else
        s << std::setw(14) << "-" << std::setw(14) << "-";
      s << std::setw(14) << r.pi_majorant << std::setw(14) << r.pi_l2 << std::setw(10) << r.function_dim
        << std::setw(10) << r.field_dim << '\n';
    }
    s << "Pi norms nonincreasing: " << (rep.pi_nonincreasing ? "yes" : "no") << '\n';
    s << "decay constant C: " << rep.decay_constant << '\n';
    s << "consistent with |Pi|_k <= C exp(-1/sqrt(k)) rho: " << (rep.decay_consistent ? "yes" : "no") << '\n';
    if (opts.output.empty()) {
      out << s.str();
    } else {
      std::ofstream file(opts.output);
      if (!file) throw InputError("cannot write \"" + opts.output + "\"");
      file << s.str();
    }
    return kOk;
  });
}

int cmd_perturb(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    ProblemFile p = load_problem(path, opts);
    Rng rng(opts.seed);
    if (p.mode == ProblemMode::Poisson) {
      const PoissonTable& t = std::get<PoissonTable>(p.structure);
      const PolyMap phi = random_near_identity(rng, t.n(), 2, 3, 2);
      p.structure = pushforward(t, phi, t.max_degree());
    } else {
      const AlgebroidData& a = std::get<AlgebroidData>(p.structure);
      const PolyMap phi = random_bundle_map(rng, a.rank(), a.base_dim(), 2, 3, 2);
      const PoissonTable dual = pushforward(dual_poisson(a), phi, a.max_degree());
      p.structure = algebroid_from_dual(dual, a.rank());
    }
    emit(problem_to_json(p), opts, out);
    return kOk;
  });
}

}  // namespace levinf
