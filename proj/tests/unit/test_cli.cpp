#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "catalog.hpp"
#include "levinf/cli.hpp"
#include "levinf/io.hpp"

using namespace levinf;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

std::string data_dir() { return LEVINF_DATA_DIR; }

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "levinf_cli_test";
  fs::create_directories(p);
  return p;
}

std::string write_problem(const std::string& name, const Json& j) {
  const fs::path p = scratch() / name;
  write_json_file(p.string(), j);
  return p.string();
}

Json small_sl2_problem(const PoissonTable& t, int steps) {
  ProblemFile p;
  p.algebra = sl2_data();
  p.structure = t;
  p.run.steps = steps;
  return problem_to_json(p);
}

}  // namespace

TEST_CASE("check") {
  std::ostringstream out, err;
  CliOptions o;
  CHECK(cmd_check(data_dir() + "/sl2.json", o, out, err) == 0);
  CHECK(cmd_check(data_dir() + "/sl2_action_algebroid.json", o, out, err) == 0);

  PoissonTable bad = PoissonTable::linear(sl2(), 4, 3);
  bad.set(0, 1, bad.entry(0, 1) + Polynomial::variable(3, 1) * Polynomial::variable(3, 1));
  std::ostringstream o2;
  CHECK(cmd_check(write_problem("jacobi.json", small_sl2_problem(bad, 2)), o, o2, err) == 1);
  CHECK(o2.str().find("jacobiator nonzero on (0, 1, 2)") != std::string::npos);

  Json j = small_sl2_problem(PoissonTable::linear(sl2(), 4, 3), 2);
  j["structure"]["brackets"][0]["poly"][0]["coef"] = "1/0";
  CHECK(cmd_check(write_problem("zero_den.json", j), o, out, err) == 2);
  CHECK(cmd_check((scratch() / "missing.json").string(), o, out, err) == 2);

  AlgebroidData a = sl2_action_algebroid(4);
  a.set_anchor(0, 1, a.anchor(0, 1) + Polynomial::constant(2, Scalar(1)));
  ProblemFile p;
  p.mode = ProblemMode::Algebroid;
  p.algebra = sl2_data();
  p.structure = a;
  std::ostringstream o3;
  CHECK(cmd_check(write_problem("anchor.json", problem_to_json(p)), o, o3, err) == 1);
  CHECK(o3.str().find("origin") != std::string::npos);
}

TEST_CASE("normalize and diagnostics") {
  Rng rng(2);
  const PoissonTable pi = pushforward(PoissonTable::linear(sl2(), 4, 3), random_near_identity(rng, 3, 2, 3, 2), 4);
  const std::string problem = write_problem("pert.json", small_sl2_problem(pi, 2));
  CliOptions o;
  o.output = (scratch() / "result.json").string();
  std::ostringstream out, err;
  REQUIRE(cmd_normalize(problem, o, out, err) == 0);
  const Json result = read_json_file(o.output);
  CHECK(result["status"] == "ok");
  CHECK(result["verification"]["ok"] == true);
  CHECK(table_from_json(result["normal_form"], FieldMode::Rational) == PoissonTable::linear(sl2(), 4, 3));
  CHECK(result["log"].size() == 2);

  CliOptions d;
  d.rho = 0.5;
  std::ostringstream report;
  CHECK(cmd_diagnostics(o.output, d, report, err) == 0);
  CHECK(report.str().find("(2,4]") != std::string::npos);
  d.rho = -1.0;
  CHECK(cmd_diagnostics(o.output, d, report, err) == 2);
  d.rho = 0.5;
  CHECK(cmd_diagnostics((scratch() / "no_log.json").string(), d, report, err) == 2);

  CliOptions too_many;
  too_many.steps = 3;
  too_many.degree = 4;
  CHECK(cmd_normalize(problem, too_many, out, err) == 1);
  CHECK(err.str().find("schedule") != std::string::npos);
}

TEST_CASE("linear input gives zero psi norms") {
  const std::string problem = write_problem("lin.json", small_sl2_problem(PoissonTable::linear(sl2(), 4, 3), 2));
  CliOptions o;
  o.output = (scratch() / "lin_result.json").string();
  std::ostringstream out, err;
  REQUIRE(cmd_normalize(problem, o, out, err) == 0);
  CliOptions d;
  d.format = OutputFormat::Json;
  d.output = (scratch() / "lin_diag.json").string();
  CHECK(cmd_diagnostics(o.output, d, out, err) == 0);
  const Json rep = read_json_file(d.output);
  for (std::size_t k = 1; k < rep["rows"].size(); ++k) CHECK(rep["rows"][k]["psi_majorant"].get<double>() == 0.0);
}

TEST_CASE("algebroid mode and perturb") {
  CliOptions p;
  p.seed = 5;
  p.output = (scratch() / "alg_pert.json").string();
  std::ostringstream out, err;
  REQUIRE(cmd_perturb(data_dir() + "/sl2_action_algebroid.json", p, out, err) == 0);
  CliOptions n;
  n.output = (scratch() / "alg_result.json").string();
  REQUIRE(cmd_normalize(p.output, n, out, err) == 0);
  const Json result = read_json_file(n.output);
  CHECK(result["verification"]["levi_relations"] == true);
  CHECK(result["verification"]["bundle_map"] == true);
  CHECK(algebroid_from_json(result["algebroid"], FieldMode::Rational) == sl2_action_algebroid(8));
  CHECK(result["run"]["seed"] == 0);
}
