#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "levinf/algebroid.hpp"

namespace levinf {

using Json = nlohmann::ordered_json;

enum class FieldMode { Rational, Gaussian };

std::string field_name(FieldMode f);
FieldMode parse_field(const std::string& s);
std::string schedule_name(ScheduleKind k);
ScheduleKind parse_schedule(const std::string& s);

/// "p/q" string, or {"re", "im"} in Gaussian mode. Parsing accepts both and
/// rejects non-real values in rational mode.
Json scalar_to_json(const Scalar& s, FieldMode f);
Scalar scalar_from_json(const Json& j, FieldMode f);

/// [{"exp": [...], "coef": "p/q"}, ...] in graded-lex order.
Json polynomial_to_json(const Polynomial& p, FieldMode f);
Polynomial polynomial_from_json(const Json& j, std::size_t nvars, FieldMode f);

Json polymap_to_json(const PolyMap& m, FieldMode f);
PolyMap polymap_from_json(const Json& j, FieldMode f);

/// {"n", "m", "constants": [[i, j, k, c], ...]} with i < j.
Json levi_data_to_json(const LeviAlgebraData& d, FieldMode f);
LeviAlgebraData levi_data_from_json(const Json& j, FieldMode f);

/// {"n", "D", "m", "brackets": [{"i", "j", "poly"}]}; m is null when unset.
Json table_to_json(const PoissonTable& t, FieldMode f);
PoissonTable table_from_json(const Json& j, FieldMode f);

/// {"N", "n", "D", "bracket": [{"i", "j", "k", "poly"}], "anchor": [{"i", "j", "poly"}]}.
Json algebroid_to_json(const AlgebroidData& a, FieldMode f);
AlgebroidData algebroid_from_json(const Json& j, FieldMode f);

struct RunSettings {
  int steps = 0;
  int degree = 0;  // 0: end of the last window
  ScheduleKind schedule = ScheduleKind::Doubling;
  FieldMode field = FieldMode::Rational;
  std::optional<double> rho;
  std::optional<double> epsilon;
};

enum class ProblemMode { Poisson, Algebroid };

struct ProblemFile {
  ProblemMode mode = ProblemMode::Poisson;
  LeviAlgebraData algebra;
  std::variant<PoissonTable, AlgebroidData> structure;
  RunSettings run;
};

Json problem_to_json(const ProblemFile& p);
ProblemFile problem_from_json(const Json& j);

Json step_log_to_json(const StepLog& s, FieldMode f);
StepLog step_log_from_json(const Json& j, FieldMode f);
Json verification_to_json(const LeviVerification& v);
Json convergence_to_json(const ConvergenceReport& r);

/// Reads a JSON document; InputError when missing or malformed.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace levinf
