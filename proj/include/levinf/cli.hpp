#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace levinf {

enum class OutputFormat { Text, Json };

/// Command-line overrides; unset values fall back to the problem file.
struct CliOptions {
  std::optional<int> steps;
  std::optional<int> degree;
  std::optional<std::string> schedule;
  std::optional<std::string> field;
  std::uint64_t seed = 0;
  std::optional<double> rho;
  std::optional<double> epsilon;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::Text;
};

/// Exit codes: 0 success, 1 domain or validation failure, 2 input or parse failure.
int cmd_check(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err);
/// Writes the result file (normal form, Phi, Phi^-1, step log, verification).
int cmd_normalize(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err);
/// Norm tables of a result file written by normalize.
int cmd_diagnostics(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err);
/// Problem file pushed forward by a seeded random near-identity map
/// (a bundle map in algebroid mode).
int cmd_perturb(const std::string& path, const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace levinf
