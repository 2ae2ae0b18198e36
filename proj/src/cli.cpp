#include "causalspace/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace causalspace::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_float(double value, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
  return buffer;
}

bool renders_exactly(const std::string& text, const Rational& value) {
  if (text.find_first_of("eEn") != std::string::npos) return false;
  try {
    return Rational::parse(text) == value;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string describe_error(const std::exception& e) {
  if (const auto* engine = dynamic_cast<const Error*>(&e)) {
    return std::string(to_string(engine->code())) + ": " + engine->what();
  }
  return e.what();
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Loads and elaborates the model, reporting failures as `path:line:col: ...`.
std::optional<dsl::Model> load(const CliConfig& config, std::ostream& err) {
  const auto text = read_file(config.model_path);
  if (!text) {
    err << config.model_path << ": cannot read model file\n";
    return std::nullopt;
  }
  try {
    return dsl::load_model(*text, config.limits);
  } catch (const dsl::SourceError& e) {
    err << config.model_path << ":" << e.what() << '\n';
  } catch (const std::exception& e) {
    err << config.model_path << ": " << describe_error(e) << '\n';
  }
  return std::nullopt;
}

std::string atoms_per_level(const CausalSpace& space) {
  std::string out;
  for (std::size_t n = 0; n <= space.levels(); ++n) {
    out += (n > 0 ? "/" : "") + std::to_string(space.sequence().atoms(n).size());
  }
  return out;
}

ordered_json json_result(const std::string& query, const std::optional<dsl::QueryResult>& result,
                         const std::string& error) {
  ordered_json j;
  j["query"] = query;
  j["kind"] = nullptr;
  j["exact"] = nullptr;
  j["float"] = nullptr;
  j["error"] = nullptr;
  if (!result) {
    j["error"] = error;
    return j;
  }
  j["kind"] = std::string(dsl::to_string(result->kind));
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, TruthValue>) {
          j["exact"] = std::string(to_string(v));
        } else if constexpr (std::is_same_v<V, Rational>) {
          j["exact"] = v.str();
          j["float"] = v.to_double();
        } else {
          ordered_json exact = ordered_json::array();
          ordered_json approx = ordered_json::array();
          for (const auto& entry : v) {
            exact.push_back(entry.value.str());
            approx.push_back(entry.value.to_double());
          }
          j["exact"] = std::move(exact);
          j["float"] = std::move(approx);
        }
      },
      result->value);
  return j;
}

std::vector<std::string> read_query_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(begin, end - begin + 1));
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  return s.substr(begin, s.find_last_not_of(" \t\r") - begin + 1);
}

}  // namespace

std::string render_value(const Rational& value, Rendering rendering, int precision) {
  const std::string approx = format_float(value.to_double(), precision);
  switch (rendering) {
    case Rendering::Exact: return value.str();
    case Rendering::Float: return approx;
    case Rendering::Both: break;
  }
  return value.str() + " (" + (renders_exactly(approx, value) ? "" : "~") + approx + ")";
}

std::string render_result(const dsl::QueryResult& result, Rendering rendering, int precision) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, TruthValue>) {
          return std::string(to_string(v));
        } else if constexpr (std::is_same_v<V, Rational>) {
          return render_value(v, rendering, precision);
        } else {
          std::string out;
          for (std::size_t i = 0; i < v.size(); ++i) {
            out += (i > 0 ? ", " : "") + v[i].label + ": " + render_value(v[i].value, rendering, precision);
          }
          return out;
        }
      },
      result.value);
}

std::string export_json(const dsl::Model& model) {
  const dsl::ModelAST ast = dsl::export_ast(model);
  ordered_json doc;
  doc["outcomes"] = ast.outcomes;
  doc["events"] = ordered_json::array();
  for (const auto& e : ast.events) {
    ordered_json item;
    item["name"] = e.name;
    item["members"] = e.members;
    doc["events"].push_back(std::move(item));
  }
  doc["cause"] = ordered_json::array();
  for (const auto& c : ast.causes) {
    ordered_json item;
    item["level"] = *model.level_of(c.event);
    item["atom_literals"] = ordered_json::array();
    for (const auto& lit : c.condition) item["atom_literals"].push_back((lit.negated ? "~" : "") + lit.name);
    item["p"] = c.p.str();
    doc["cause"].push_back(std::move(item));
  }
  doc["atoms_per_level"] = ordered_json::array();
  for (std::size_t n = 0; n <= model.space.levels(); ++n) {
    doc["atoms_per_level"].push_back(model.space.sequence().atoms(n).size());
  }
  return doc.dump(2) + "\n";
}

ExitStatus cmd_check(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const auto model = load(config, err);
  if (!model) return ExitStatus::ModelError;
  out << "OK: " << model->space.universe_size() << " outcomes, " << model->space.levels()
      << " events, atoms per level " << atoms_per_level(model->space) << '\n';
  return ExitStatus::Ok;
}

ExitStatus cmd_query(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::string> queries = config.queries;
  if (!config.queries_file.empty()) {
    std::ifstream file(config.queries_file);
    if (!file) {
      err << config.queries_file << ": cannot read query file\n";
      return ExitStatus::UsageError;
    }
    for (auto& q : read_query_lines(file)) queries.push_back(std::move(q));
  }
  if (queries.empty()) {
    err << "no queries given\n";
    return ExitStatus::UsageError;
  }
  const auto model = load(config, err);
  if (!model) return ExitStatus::ModelError;

  bool failed = false;
  for (const auto& query : queries) {
    std::optional<dsl::QueryResult> result;
    std::string error;
    try {
      result = dsl::eval_query(*model, dsl::parse_query(query));
    } catch (const std::exception& e) {
      error = describe_error(e);
      failed = true;
    }
    if (config.format == OutputFormat::Json) {
      out << json_result(query, result, error).dump() << '\n';
    } else if (result) {
      out << query << " => " << render_result(*result, config.rendering, config.precision) << '\n';
    } else {
      out << query << " => error: " << error << '\n';
    }
  }
  return failed ? ExitStatus::QueryError : ExitStatus::Ok;
}

ExitStatus cmd_repl(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err,
                    bool interactive) {
  const auto model = load(config, err);
  if (!model) return ExitStatus::ModelError;
  std::string line;
  while (true) {
    if (interactive) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    const std::string input = trim(line);
    if (input.empty() || input.front() == '#') continue;
    if (input == ":quit") break;
    if (input == ":model") {
      out << dsl::render_model(dsl::export_ast(*model));
      continue;
    }
    try {
      const auto result = dsl::eval_query(*model, dsl::parse_query(input));
      out << render_result(result, config.rendering, config.precision) << '\n';
    } catch (const std::exception& e) {
      out << "error: " << describe_error(e) << '\n';
    }
  }
  return ExitStatus::Ok;
}

ExitStatus cmd_export(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const auto model = load(config, err);
  if (!model) return ExitStatus::ModelError;
  if (config.format == OutputFormat::Json) {
    out << export_json(*model);
  } else {
    out << dsl::render_model(dsl::export_ast(*model));
  }
  return ExitStatus::Ok;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive) {
  CliConfig config;
  if (const char* env = std::getenv("CAUSALSPACE_MAX_OUTCOMES")) {
    try {
      std::size_t consumed = 0;
      const long long value = std::stoll(env, &consumed);
      if (consumed != std::string(env).size() || value < 1) throw std::invalid_argument(env);
      config.limits.max_outcomes = static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      err << "CAUSALSPACE_MAX_OUTCOMES must be a positive integer\n";
      return static_cast<int>(ExitStatus::UsageError);
    }
  }

  CLI::App app{"Exact reasoning over finite causal spaces"};
  app.name("causalspace");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string rendering = "both";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--render", rendering, "Numeric rendering")->check(CLI::IsMember({"exact", "float", "both"}));
  app.add_option("--precision", config.precision, "Significant digits for floats")->check(CLI::Range(1, 17));
  app.add_option("--max-outcomes", config.limits.max_outcomes, "Universe size cap")->check(CLI::PositiveNumber);
  app.add_option("--max-events", config.limits.max_events, "Primitive event cap")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Validate a model");
  auto* query = app.add_subcommand("query", "Evaluate queries against a model");
  auto* repl = app.add_subcommand("repl", "Interactive query session");
  auto* export_cmd = app.add_subcommand("export", "Print the canonical model");
  for (auto* sub : {check, query, repl, export_cmd}) {
    sub->add_option("model", config.model_path, "Model file (.csp)")->required();
  }
  query->add_option("QUERY", config.queries, "Queries to evaluate");
  query->add_option("--queries", config.queries_file, "File with one query per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitStatus::UsageError);
  }

  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  config.rendering = rendering == "exact" ? Rendering::Exact
                     : rendering == "float" ? Rendering::Float
                                            : Rendering::Both;

  ExitStatus status = ExitStatus::UsageError;
  if (check->parsed()) {
    config.subcommand = "check";
    status = cmd_check(config, out, err);
  } else if (query->parsed()) {
    config.subcommand = "query";
    status = cmd_query(config, out, err);
  } else if (repl->parsed()) {
    config.subcommand = "repl";
    status = cmd_repl(config, in, out, err, interactive);
  } else if (export_cmd->parsed()) {
    config.subcommand = "export";
    status = cmd_export(config, out, err);
  }
  return static_cast<int>(status);
}

}  // namespace causalspace::cli
