#include "levinf/io.hpp"

#include <fstream>
#include <sstream>

#include "levinf/error.hpp"

namespace levinf {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t index_value(const Json& j, std::size_t bound, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0 || static_cast<unsigned long long>(v) >= bound) throw InputError(std::string(what) + " out of range");
  return static_cast<std::size_t>(v);
}

int int_value(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::size_t size_value(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

mpq_class rational_value(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  throw InputError("rationals are written as \"p/q\" strings");
}

}  // namespace

std::string field_name(FieldMode f) { return f == FieldMode::Rational ? "rational" : "gaussian"; }

FieldMode parse_field(const std::string& s) {
  if (s == "rational") return FieldMode::Rational;
  if (s == "gaussian") return FieldMode::Gaussian;
  throw InputError("unknown field \"" + s + "\" (rational|gaussian)");
}

std::string schedule_name(ScheduleKind k) { return k == ScheduleKind::Doubling ? "doubling" : "single"; }

ScheduleKind parse_schedule(const std::string& s) {
  if (s == "doubling") return ScheduleKind::Doubling;
  if (s == "single") return ScheduleKind::Single;
  throw InputError("unknown schedule \"" + s + "\" (doubling|single)");
}

Json scalar_to_json(const Scalar& s, FieldMode f) {
  if (f == FieldMode::Rational) {
    if (!s.is_real()) throw InputError("non-real value in rational mode");
    return format_rational(s.re());
  }
  return Json{{"re", format_rational(s.re())}, {"im", format_rational(s.im())}};
}

Scalar scalar_from_json(const Json& j, FieldMode f) {
  if (j.is_object()) {
    Scalar s(rational_value(field(j, "re")), j.contains("im") ? rational_value(j.at("im")) : mpq_class(0));
    if (f == FieldMode::Rational && !s.is_real()) throw InputError("non-real value in rational mode");
    return s;
  }
  return Scalar(rational_value(j));
}

namespace {

void put_coefficient(Json& term, const Scalar& c, FieldMode f) {
  if (f == FieldMode::Rational) {
    term["coef"] = scalar_to_json(c, f);
  } else {
    term["re"] = format_rational(c.re());
    term["im"] = format_rational(c.im());
  }
}

Scalar get_coefficient(const Json& term, FieldMode f) {
  if (term.contains("coef")) return scalar_from_json(term.at("coef"), f);
  if (term.contains("re")) return scalar_from_json(Json{{"re", term.at("re")}, {"im", term.value("im", Json("0"))}}, f);
  throw InputError("polynomial term without a coefficient");
}

}  // namespace

Json polynomial_to_json(const Polynomial& p, FieldMode f) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json exps = Json::array();
    for (std::size_t i = 0; i < p.nvars(); ++i) exps.push_back(mono[i]);
    Json term{{"exp", exps}};
    put_coefficient(term, c, f);
    out.push_back(std::move(term));
  }
  return out;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars, FieldMode f) {
  return guarded("polynomial", [&] {
    if (!j.is_array()) throw InputError("a polynomial is a list of terms");
    Polynomial p(nvars);
    for (const auto& term : j) {
      const Json& exps = field(term, "exp");
      if (!exps.is_array() || exps.size() != nvars)
        throw InputError("exponent vector must have " + std::to_string(nvars) + " entries");
      Monomial m;
      for (std::size_t i = 0; i < nvars; ++i) {
        const int e = int_value(exps[i], "exponent");
        if (e < 0) throw InputError("negative exponent");
        m.set(i, e);
      }
      const Scalar c = get_coefficient(term, f);
      if (!(p.coefficient(m).is_zero())) throw InputError("repeated monomial in polynomial");
      p.add_term(m, c);
    }
    return p;
  });
}

Json polymap_to_json(const PolyMap& m, FieldMode f) {
  Json comps = Json::array();
  for (const auto& c : m.components()) comps.push_back(polynomial_to_json(c, f));
  return Json{{"role", m.role() == MapRole::CoordinateChange ? "coordinate-change" : "vector-field"},
              {"n", m.nvars()},
              {"components", comps}};
}

PolyMap polymap_from_json(const Json& j, FieldMode f) {
  return guarded("map", [&] {
    const std::string role = field(j, "role").get<std::string>();
    MapRole r;
    if (role == "coordinate-change")
      r = MapRole::CoordinateChange;
    else if (role == "vector-field")
      r = MapRole::VectorField;
    else
      throw InputError("unknown map role \"" + role + "\"");
    const std::size_t n = size_value(field(j, "n"), "n");
    std::vector<Polynomial> comps;
    for (const auto& c : field(j, "components")) comps.push_back(polynomial_from_json(c, n, f));
    return PolyMap(std::move(comps), r);
  });
}

Json levi_data_to_json(const LeviAlgebraData& d, FieldMode f) {
  Json consts = Json::array();
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = i + 1; j < d.n; ++j)
      for (std::size_t k = 0; k < d.n; ++k)
        if (!d.full(i, j, k).is_zero()) consts.push_back(Json{i, j, k, scalar_to_json(d.full(i, j, k), f)});
  return Json{{"n", d.n}, {"m", d.m}, {"constants", consts}};
}

LeviAlgebraData levi_data_from_json(const Json& j, FieldMode f) {
  return guarded("algebra", [&] {
    const std::size_t n = size_value(field(j, "n"), "n");
    const std::size_t m = size_value(field(j, "m"), "m");
    if (n > kMaxVariables) throw InputError("too many variables (limit 16)");
    if (m > n) throw InputError("Levi dimension exceeds the algebra dimension");
    StructureConstants c(n);
    std::vector<bool> seen(n * n * n, false);
    for (const auto& t : field(j, "constants")) {
      if (!t.is_array() || t.size() != 4) throw InputError("structure constants are [i, j, k, value] entries");
      const std::size_t a = index_value(t[0], n, "i"), b = index_value(t[1], n, "j"), k = index_value(t[2], n, "k");
      if (a == b) throw InputError("structure constant with i == j");
      if (seen[(a * n + b) * n + k] || seen[(b * n + a) * n + k]) throw InputError("repeated structure constant");
      seen[(a * n + b) * n + k] = true;
      c.set_bracket(a, b, k, scalar_from_json(t[3], f));
    }
    return LeviAlgebraData(m, std::move(c));
  });
}

Json table_to_json(const PoissonTable& t, FieldMode f) {
  Json brackets = Json::array();
  for (std::size_t i = 0; i < t.n(); ++i)
    for (std::size_t j = i + 1; j < t.n(); ++j)
      if (!t.entry(i, j).is_zero())
        brackets.push_back(Json{{"i", i}, {"j", j}, {"poly", polynomial_to_json(t.entry(i, j), f)}});
  return Json{{"n", t.n()},
              {"D", t.max_degree()},
              {"m", t.levi_dim() ? Json(*t.levi_dim()) : Json(nullptr)},
              {"brackets", brackets}};
}

PoissonTable table_from_json(const Json& j, FieldMode f) {
  return guarded("table", [&] {
    const std::size_t n = size_value(field(j, "n"), "n");
    if (n > kMaxVariables) throw InputError("too many variables (limit 16)");
    const int d = int_value(field(j, "D"), "D");
    if (d < 1) throw InputError("truncation degree must be at least 1");
    std::optional<std::size_t> m;
    if (j.contains("m") && !j.at("m").is_null()) m = size_value(j.at("m"), "m");
    PoissonTable t(n, d, m);
    std::vector<bool> seen(n * n, false);
    for (const auto& e : field(j, "brackets")) {
      const std::size_t a = index_value(field(e, "i"), n, "i"), b = index_value(field(e, "j"), n, "j");
      if (a >= b) throw InputError("only brackets with i < j are stored");
      if (seen[a * n + b]) throw InputError("repeated bracket entry");
      seen[a * n + b] = true;
      const Polynomial p = polynomial_from_json(field(e, "poly"), n, f);
      if (p.degree() > d) throw InputError("bracket entry exceeds the truncation degree");
      t.set(a, b, p);
    }
    return t;
  });
}

Json algebroid_to_json(const AlgebroidData& a, FieldMode f) {
  Json bracket = Json::array(), anchor = Json::array();
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = i + 1; j < a.rank(); ++j)
      for (std::size_t k = 0; k < a.rank(); ++k) {
        const Polynomial p = a.bracket(i, j, k);
        if (!p.is_zero()) bracket.push_back(Json{{"i", i}, {"j", j}, {"k", k}, {"poly", polynomial_to_json(p, f)}});
      }
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.base_dim(); ++j)
      if (!a.anchor(i, j).is_zero())
        anchor.push_back(Json{{"i", i}, {"j", j}, {"poly", polynomial_to_json(a.anchor(i, j), f)}});
  return Json{{"N", a.rank()}, {"n", a.base_dim()}, {"D", a.max_degree()}, {"bracket", bracket}, {"anchor", anchor}};
}

AlgebroidData algebroid_from_json(const Json& j, FieldMode f) {
  return guarded("algebroid", [&] {
    const std::size_t rank = size_value(field(j, "N"), "N");
    const std::size_t n = size_value(field(j, "n"), "n");
    const int d = int_value(field(j, "D"), "D");
    AlgebroidData a(rank, n, d);
    for (const auto& e : field(j, "bracket")) {
      const std::size_t i = index_value(field(e, "i"), rank, "i"), k = index_value(field(e, "k"), rank, "k");
      const std::size_t jj = index_value(field(e, "j"), rank, "j");
      if (i >= jj) throw InputError("only brackets with i < j are stored");
      const Polynomial p = polynomial_from_json(field(e, "poly"), n, f);
      if (p.degree() > d - 1) throw InputError("bracket coefficient exceeds degree D-1");
      if (!a.bracket(i, jj, k).is_zero()) throw InputError("repeated bracket entry");
      a.set_bracket(i, jj, k, p);
    }
    for (const auto& e : field(j, "anchor")) {
      const std::size_t i = index_value(field(e, "i"), rank, "i"), jj = index_value(field(e, "j"), n, "j");
      const Polynomial p = polynomial_from_json(field(e, "poly"), n, f);
      if (p.degree() > d) throw InputError("anchor coefficient exceeds degree D");
      if (!a.anchor(i, jj).is_zero()) throw InputError("repeated anchor entry");
      a.set_anchor(i, jj, p);
    }
    return a;
  });
}

Json problem_to_json(const ProblemFile& p) {
  const FieldMode f = p.run.field;
  Json run{{"steps", p.run.steps},
           {"degree", p.run.degree},
           {"schedule", schedule_name(p.run.schedule)},
           {"field", field_name(f)}};
  if (p.run.rho || p.run.epsilon) {
    Json diag = Json::object();
    if (p.run.rho) diag["rho"] = *p.run.rho;
    if (p.run.epsilon) diag["epsilon"] = *p.run.epsilon;
    run["diagnostics"] = diag;
  }
  Json structure = p.mode == ProblemMode::Poisson ? table_to_json(std::get<PoissonTable>(p.structure), f)
                                                  : algebroid_to_json(std::get<AlgebroidData>(p.structure), f);
  return Json{{"mode", p.mode == ProblemMode::Poisson ? "poisson" : "algebroid"},
              {"algebra", levi_data_to_json(p.algebra, f)},
              {"structure", structure},
              {"run", run}};
}

ProblemFile problem_from_json(const Json& j) {
  return guarded("problem", [&] {
    ProblemFile p;
    const std::string mode = field(j, "mode").get<std::string>();
    if (mode == "poisson")
      p.mode = ProblemMode::Poisson;
    else if (mode == "algebroid")
      p.mode = ProblemMode::Algebroid;
    else
      throw InputError("unknown mode \"" + mode + "\" (poisson|algebroid)");
    if (j.contains("run")) {
      const Json& r = j.at("run");
      if (r.contains("steps")) p.run.steps = int_value(r.at("steps"), "steps");
      if (r.contains("degree")) p.run.degree = int_value(r.at("degree"), "degree");
      if (r.contains("schedule")) p.run.schedule = parse_schedule(r.at("schedule").get<std::string>());
      if (r.contains("field")) p.run.field = parse_field(r.at("field").get<std::string>());
      if (r.contains("diagnostics")) {
        const Json& d = r.at("diagnostics");
        if (d.contains("rho")) p.run.rho = d.at("rho").get<double>();
        if (d.contains("epsilon")) p.run.epsilon = d.at("epsilon").get<double>();
      }
      if (p.run.steps < 0) throw InputError("steps must be nonnegative");
      if (p.run.degree < 0) throw InputError("degree must be nonnegative");
    }
    const FieldMode f = p.run.field;
    p.algebra = levi_data_from_json(field(j, "algebra"), f);
    if (p.mode == ProblemMode::Poisson) {
      PoissonTable t = table_from_json(field(j, "structure"), f);
      if (t.n() != p.algebra.n) throw InputError("table dimension differs from the algebra dimension");
      if (t.levi_dim() && *t.levi_dim() != p.algebra.m) throw InputError("table Levi dimension differs from the algebra");
      p.structure = std::move(t);
    } else {
      AlgebroidData a = algebroid_from_json(field(j, "structure"), f);
      if (a.rank() != p.algebra.n) throw InputError("algebroid rank differs from the fiber algebra dimension");
      p.structure = std::move(a);
    }
    return p;
  });
}

Json step_log_to_json(const StepLog& s, FieldMode f) {
  return Json{{"step", s.step},
              {"lo", s.lo},
              {"hi", s.hi},
              {"function_dim", s.function_dim},
              {"field_dim", s.field_dim},
              {"function_invariants", s.function_invariants},
              {"cocycle_norm", s.cocycle_norm},
              {"field_cocycle_norm", s.field_cocycle_norm},
              {"seconds", s.seconds},
              {"w", polymap_to_json(s.w, f)},
              {"v", polymap_to_json(s.v, f)},
              {"psi", polymap_to_json(s.psi, f)},
              {"table", table_to_json(s.table, f)}};
}

StepLog step_log_from_json(const Json& j, FieldMode f) {
  return guarded("step log", [&] {
    StepLog s;
    s.step = int_value(field(j, "step"), "step");
    s.lo = int_value(field(j, "lo"), "lo");
    s.hi = int_value(field(j, "hi"), "hi");
    s.function_dim = size_value(field(j, "function_dim"), "function_dim");
    s.field_dim = size_value(field(j, "field_dim"), "field_dim");
    s.function_invariants = size_value(field(j, "function_invariants"), "function_invariants");
    s.cocycle_norm = field(j, "cocycle_norm").get<double>();
    s.field_cocycle_norm = field(j, "field_cocycle_norm").get<double>();
    s.seconds = field(j, "seconds").get<double>();
    s.w = polymap_from_json(field(j, "w"), f);
    s.v = polymap_from_json(field(j, "v"), f);
    s.psi = polymap_from_json(field(j, "psi"), f);
    s.table = table_from_json(field(j, "table"), f);
    return s;
  });
}

Json verification_to_json(const LeviVerification& v) {
  Json out{{"ok", v.ok()},
           {"normal_form", v.normal_form},
           {"tails", v.tails},
           {"windows", v.windows},
           {"jacobi", v.jacobi},
           {"linear_part", v.linear_part},
           {"pushforward", v.pushforward},
           {"inverse", v.inverse},
           {"fiberwise_linear", v.fiberwise_linear},
           {"verified_degree", v.verified_degree},
           {"failures", v.failures}};
  out["idempotent"] = v.idempotent ? Json(*v.idempotent) : Json(nullptr);
  return out;
}

Json convergence_to_json(const ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"step", row.step},
                        {"lo", row.lo},
                        {"hi", row.hi},
                        {"psi_majorant", row.psi_majorant ? Json(*row.psi_majorant) : Json(nullptr)},
                        {"psi_radius", row.psi_radius},
                        {"psi_l2", row.psi_l2},
                        {"pi_majorant", row.pi_majorant},
                        {"pi_radius", row.pi_radius},
                        {"pi_l2", row.pi_l2},
                        {"function_dim", row.function_dim},
                        {"field_dim", row.field_dim},
                        {"seconds", row.seconds}});
  }
  return Json{{"rho", r.rho},
              {"epsilon", r.epsilon},
              {"pi_nonincreasing", r.pi_nonincreasing},
              {"decay_consistent", r.decay_consistent},
              {"decay_constant", r.decay_constant},
              {"rows", rows}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in \"" + path + "\": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << j.dump(1) << '\n';
}

}  // namespace levinf
