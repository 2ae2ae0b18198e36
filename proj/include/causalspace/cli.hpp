#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "causalspace/dsl.hpp"
#include "causalspace/event.hpp"
#include "causalspace/rational.hpp"

namespace causalspace::cli {

/// Process exit codes. Stable across releases.
enum class ExitStatus : int {
  Ok = 0,
  QueryError = 1,
  ModelError = 2,
  UsageError = 3,
};

enum class OutputFormat { Text, Json };
enum class Rendering { Exact, Float, Both };

struct CliConfig {
  std::string subcommand;
  std::string model_path;
  std::vector<std::string> queries;
  std::string queries_file;
  OutputFormat format = OutputFormat::Text;
  Rendering rendering = Rendering::Both;
  int precision = 6;
  Limits limits;
};

/// "4/7 (~0.571429)", "1/2 (0.5)", "4/7" or "0.571429". The tilde marks a
/// float rendering that is not exactly equal to the rational.
std::string render_value(const Rational& value, Rendering rendering, int precision);

std::string render_result(const dsl::QueryResult& result, Rendering rendering, int precision);

/// Canonical JSON document: outcomes, events, cause rows and atoms per level.
std::string export_json(const dsl::Model& model);

ExitStatus cmd_check(const CliConfig& config, std::ostream& out, std::ostream& err);
ExitStatus cmd_query(const CliConfig& config, std::ostream& out, std::ostream& err);
ExitStatus cmd_repl(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err,
                    bool interactive = false);
ExitStatus cmd_export(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `causalspace <check|query|repl|export> <model.csp> ...`.
/// `CAUSALSPACE_MAX_OUTCOMES` in the environment overrides the universe cap.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive = false);

}  // namespace causalspace::cli
