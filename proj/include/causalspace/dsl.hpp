#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "causalspace/belief.hpp"
#include "causalspace/causal_space.hpp"
#include "causalspace/error.hpp"
#include "causalspace/event.hpp"
#include "causalspace/rational.hpp"

namespace causalspace::dsl {

/// 1-based line and column.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class SourceErrorKind { Lex, Parse, Resolve, Validate };

std::string_view to_string(SourceErrorKind kind);

/// Error tied to a position in model or query text. Validation failures raised
/// by the engine keep their ErrorCode in `engine_code()`.
class SourceError : public std::runtime_error {
 public:
  SourceError(SourceErrorKind kind, SourcePos pos, const std::string& message,
              std::optional<ErrorCode> engine_code = std::nullopt);

  SourceErrorKind kind() const noexcept { return kind_; }
  SourcePos pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }
  std::optional<ErrorCode> engine_code() const noexcept { return engine_code_; }

 private:
  SourceErrorKind kind_;
  SourcePos pos_;
  std::string message_;
  std::optional<ErrorCode> engine_code_;
};

// Model files.
//
//   outcomes <M>
//   event <NAME> = { <i>, ... }
//   cause P(<NAME> | <cond>) = <rational>
//
// `<cond>` is `*` or a conjunction of `NAME` / `~NAME` literals. `#` starts a
// comment. Event declaration order fixes the primitive order.

struct EventDecl {
  std::string name;
  std::vector<std::size_t> members;  // sorted, unique
  SourcePos pos;

  friend bool operator==(const EventDecl& a, const EventDecl& b) {
    return a.name == b.name && a.members == b.members;
  }
};

struct NamedLiteral {
  std::string name;
  bool negated = false;
  SourcePos pos;

  friend bool operator==(const NamedLiteral& a, const NamedLiteral& b) {
    return a.name == b.name && a.negated == b.negated;
  }
};

struct CauseDecl {
  std::string event;
  std::vector<NamedLiteral> condition;  // empty for `*`
  Rational p;
  SourcePos pos;

  friend bool operator==(const CauseDecl& a, const CauseDecl& b) {
    return a.event == b.event && a.condition == b.condition && a.p == b.p;
  }
};

/// Equality ignores source positions.
struct ModelAST {
  std::size_t outcomes = 0;
  SourcePos outcomes_pos;
  std::vector<EventDecl> events;
  std::vector<CauseDecl> causes;

  friend bool operator==(const ModelAST& a, const ModelAST& b) {
    return a.outcomes == b.outcomes && a.events == b.events && a.causes == b.causes;
  }
};

ModelAST parse_model(std::string_view text);
std::string render_model(const ModelAST& ast);

/// An elaborated model: the causal space plus the names of E_1..E_N.
struct Model {
  CausalSpace space;
  std::vector<std::string> names;

  std::optional<std::size_t> level_of(std::string_view name) const;
};

/// Throws SourceError (Validate) for every causal-space build failure, plus
/// StaleCondition and AmbiguousCondition for conditions that do not address a
/// single atom of the preceding level.
Model elaborate(const ModelAST& ast, const Limits& limits = {});
Model load_model(std::string_view text, const Limits& limits = {});

/// Canonical AST for a model: conditions list one literal per earlier event.
ModelAST export_ast(const Model& model);

/// Literals (positive or negated levels) whose intersection is block `index`
/// of A_level, in level order.
std::vector<Literal> atom_literals(const PrimitiveSequence& seq, std::size_t level, std::size_t index);

// Queries.
//
//   truth <expr> | <expr>
//   belief <expr> [| <expr>]
//   belief <expr> | do(<lit>[, <lit>]*) [, <expr>]
//   bayes <expr>(, <expr>)* given <expr>(; <expr>)*
//
// Expressions combine names and `{i,...}` sets with `~`, `&` and, inside
// parentheses only, `|` for union. Precedence: ~ > & > |.

struct Expr {
  enum class Kind { Name, Set, Not, And, Or };

  Kind kind = Kind::Name;
  std::string name;
  std::vector<std::size_t> members;
  std::vector<Expr> operands;
  SourcePos pos;
};

struct TruthQuery {
  Expr target;
  Expr condition;
};

struct BeliefQuery {
  Expr target;
  std::optional<Expr> condition;
};

struct DoQuery {
  std::vector<NamedLiteral> interventions;
  Expr target;
  std::optional<Expr> given;
};

struct BayesQuery {
  std::vector<Expr> hypotheses;
  Expr data;
};

struct SeqBayesQuery {
  std::vector<Expr> hypotheses;
  std::vector<Expr> data;
};

using QueryAST = std::variant<TruthQuery, BeliefQuery, DoQuery, BayesQuery, SeqBayesQuery>;

QueryAST parse_query(std::string_view text);

std::string render_expr(const Expr& expr);

/// Set denoted by an expression.
Event evaluate(const Model& model, const Expr& expr);

enum class QueryKind { Truth, Belief, Do, Bayes, SequentialBayes };

std::string_view to_string(QueryKind kind);

struct LabeledValue {
  std::string label;
  Rational value;
};

struct QueryResult {
  QueryKind kind;
  std::variant<TruthValue, Rational, std::vector<LabeledValue>> value;
};

/// Engine failures propagate as causalspace::Error; unknown names and bad
/// outcome indices as SourceError.
QueryResult eval_query(const Model& model, const QueryAST& query);

}  // namespace causalspace::dsl
