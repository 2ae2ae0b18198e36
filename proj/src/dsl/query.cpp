#include <algorithm>

#include "causalspace/dsl.hpp"
#include "lexer.hpp"

namespace causalspace::dsl {

using detail::parse_error;
using detail::Tok;
using detail::TokenStream;

namespace {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : ts_(detail::lex(text)) {}

  QueryAST parse() {
    QueryAST query = command();
    ts_.expect_end();
    return query;
  }

 private:
  QueryAST command() {
    if (ts_.at_word("truth")) {
      ts_.next();
      Expr target = conjunction();
      ts_.expect(Tok::Bar, "'|' followed by a condition");
      return TruthQuery{std::move(target), conjunction()};
    }
    if (ts_.at_word("belief")) {
      ts_.next();
      Expr target = conjunction();
      if (!ts_.accept(Tok::Bar)) return BeliefQuery{std::move(target), std::nullopt};
      if (ts_.at_word("do") && ts_.peek(1).kind == Tok::LParen) return intervention(std::move(target));
      return BeliefQuery{std::move(target), conjunction()};
    }
    if (ts_.at_word("bayes")) {
      ts_.next();
      std::vector<Expr> hypotheses{conjunction()};
      while (ts_.accept(Tok::Comma)) hypotheses.push_back(conjunction());
      ts_.expect_word("given");
      std::vector<Expr> data{conjunction()};
      while (ts_.accept(Tok::Semicolon)) data.push_back(conjunction());
      if (data.size() == 1) return BayesQuery{std::move(hypotheses), std::move(data.front())};
      return SeqBayesQuery{std::move(hypotheses), std::move(data)};
    }
    parse_error(ts_.peek(), "expected 'truth', 'belief' or 'bayes', found " + detail::describe(ts_.peek()));
  }

  DoQuery intervention(Expr target) {
    ts_.next();
    ts_.expect(Tok::LParen, "'('");
    DoQuery query{{}, std::move(target), std::nullopt};
    do {
      const SourcePos pos = ts_.peek().pos;
      const bool negated = ts_.accept(Tok::Tilde);
      const auto& name = ts_.expect(Tok::Ident, "an event name");
      query.interventions.push_back({name.text, negated, pos});
    } while (ts_.accept(Tok::Comma));
    ts_.expect(Tok::RParen, "')' or ','");
    if (ts_.accept(Tok::Comma)) query.given = conjunction();
    return query;
  }

  Expr disjunction() {
    Expr lhs = conjunction();
    if (!ts_.at(Tok::Bar)) return lhs;
    Expr node{Expr::Kind::Or, {}, {}, {}, lhs.pos};
    node.operands.push_back(std::move(lhs));
    while (ts_.accept(Tok::Bar)) node.operands.push_back(conjunction());
    return node;
  }

  Expr conjunction() {
    Expr lhs = unary();
    if (!ts_.at(Tok::Amp)) return lhs;
    Expr node{Expr::Kind::And, {}, {}, {}, lhs.pos};
    node.operands.push_back(std::move(lhs));
    while (ts_.accept(Tok::Amp)) node.operands.push_back(unary());
    return node;
  }

  Expr unary() {
    if (ts_.at(Tok::Tilde)) {
      const SourcePos pos = ts_.next().pos;
      Expr node{Expr::Kind::Not, {}, {}, {}, pos};
      node.operands.push_back(unary());
      return node;
    }
    return primary();
  }

  Expr primary() {
    const auto& token = ts_.peek();
    if (token.kind == Tok::Ident) {
      if (detail::is_reserved(token.text)) parse_error(token, "'" + token.text + "' is a reserved word");
      ts_.next();
      return Expr{Expr::Kind::Name, token.text, {}, {}, token.pos};
    }
    if (token.kind == Tok::LBrace) {
      const SourcePos pos = ts_.next().pos;
      Expr node{Expr::Kind::Set, {}, {}, {}, pos};
      if (!ts_.at(Tok::RBrace)) {
        do {
          const auto& index = ts_.expect(Tok::Number, "an outcome index");
          node.members.push_back(detail::parse_index(index));
          node.operands.push_back(Expr{Expr::Kind::Set, {}, {}, {}, index.pos});
        } while (ts_.accept(Tok::Comma));
      }
      ts_.expect(Tok::RBrace, "'}' or ','");
      return node;
    }
    if (token.kind == Tok::LParen) {
      ts_.next();
      Expr inner = disjunction();
      ts_.expect(Tok::RParen, "')'");
      return inner;
    }
    parse_error(token, "expected an event expression, found " + detail::describe(token));
  }

  TokenStream ts_;
};

std::string render(const Expr& expr, bool nested) {
  switch (expr.kind) {
    case Expr::Kind::Name: return expr.name;
    case Expr::Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < expr.members.size(); ++i) {
        out += (i > 0 ? "," : "") + std::to_string(expr.members[i]);
      }
      return out + "}";
    }
    case Expr::Kind::Not: return "~" + render(expr.operands.front(), true);
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      const std::string op = expr.kind == Expr::Kind::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < expr.operands.size(); ++i) {
        out += (i > 0 ? op : "") + render(expr.operands[i], true);
      }
      return nested || expr.kind == Expr::Kind::Or ? "(" + out + ")" : out;
    }
  }
  return {};
}

Literal resolve_literal(const Model& model, const NamedLiteral& lit) {
  const auto level = model.level_of(lit.name);
  if (!level) throw SourceError(SourceErrorKind::Resolve, lit.pos, "unknown name " + lit.name);
  return Literal{*level, !lit.negated};
}

std::vector<Event> evaluate_all(const Model& model, const std::vector<Expr>& exprs) {
  std::vector<Event> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) out.push_back(evaluate(model, e));
  return out;
}

std::vector<LabeledValue> label(const std::vector<Expr>& hypotheses, const PosteriorVector& values) {
  std::vector<LabeledValue> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({render_expr(hypotheses[i]), values[i]});
  return out;
}

}  // namespace

QueryAST parse_query(std::string_view text) { return QueryParser(text).parse(); }

std::string render_expr(const Expr& expr) { return render(expr, false); }

Event evaluate(const Model& model, const Expr& expr) {
  const std::size_t universe = model.space.universe_size();
  switch (expr.kind) {
    case Expr::Kind::Name: {
      const auto level = model.level_of(expr.name);
      if (!level) throw SourceError(SourceErrorKind::Resolve, expr.pos, "unknown name " + expr.name);
      return model.space.sequence().event(*level);
    }
    case Expr::Kind::Set:
      for (std::size_t i = 0; i < expr.members.size(); ++i) {
        if (expr.members[i] >= universe) {
          throw SourceError(SourceErrorKind::Validate, expr.operands[i].pos,
                            "outcome " + std::to_string(expr.members[i]) + " outside 0.." +
                                std::to_string(universe - 1));
        }
      }
      return Event::of(universe, expr.members);
    case Expr::Kind::Not: return evaluate(model, expr.operands.front()).complement();
    case Expr::Kind::And: {
      Event out = Event::all(universe);
      for (const auto& operand : expr.operands) out = out & evaluate(model, operand);
      return out;
    }
    case Expr::Kind::Or: {
      Event out = Event::none(universe);
      for (const auto& operand : expr.operands) out = out | evaluate(model, operand);
      return out;
    }
  }
  return Event::none(universe);
}

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::Truth: return "truth";
    case QueryKind::Belief: return "belief";
    case QueryKind::Do: return "do";
    case QueryKind::Bayes: return "bayes";
    case QueryKind::SequentialBayes: return "sequential_bayes";
  }
  return "unknown";
}

QueryResult eval_query(const Model& model, const QueryAST& query) {
  const CausalSpace& space = model.space;
  const Event omega = Event::all(space.universe_size());
  return std::visit(
      [&](const auto& q) -> QueryResult {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, TruthQuery>) {
          return {QueryKind::Truth, truth(evaluate(model, q.target), evaluate(model, q.condition))};
        } else if constexpr (std::is_same_v<Q, BeliefQuery>) {
          const Event condition = q.condition ? evaluate(model, *q.condition) : omega;
          return {QueryKind::Belief, belief(space, evaluate(model, q.target), condition)};
        } else if constexpr (std::is_same_v<Q, DoQuery>) {
          std::vector<Literal> literals;
          for (const auto& lit : q.interventions) literals.push_back(resolve_literal(model, lit));
          std::optional<Event> given;
          if (q.given) given = evaluate(model, *q.given);
          return {QueryKind::Do, belief_do(space, literals, evaluate(model, q.target), given)};
        } else if constexpr (std::is_same_v<Q, BayesQuery>) {
          const HypothesisSet hyps(space, evaluate_all(model, q.hypotheses));
          return {QueryKind::Bayes, label(q.hypotheses, bayes_posterior(space, hyps, evaluate(model, q.data)))};
        } else {
          const HypothesisSet hyps(space, evaluate_all(model, q.hypotheses));
          const auto data = evaluate_all(model, q.data);
          return {QueryKind::SequentialBayes, label(q.hypotheses, sequential_posterior(space, hyps, data))};
        }
      },
      query);
}

}  // namespace causalspace::dsl
