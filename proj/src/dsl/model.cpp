#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "causalspace/dsl.hpp"
#include "lexer.hpp"

namespace causalspace::dsl {

using detail::parse_error;
using detail::Tok;
using detail::TokenStream;

namespace {

SourceError validate_error(SourcePos pos, const Error& e) {
  return SourceError(SourceErrorKind::Validate, pos, std::string(to_string(e.code())) + ": " + e.what(),
                     e.code());
}

Rational parse_rational(TokenStream& ts) {
  const SourcePos pos = ts.peek().pos;
  std::string text;
  if (ts.accept(Tok::Minus)) text += '-';
  text += ts.expect(Tok::Number, "a rational such as 1/3 or 0.25").text;
  if (ts.accept(Tok::Slash)) text += "/" + ts.expect(Tok::Number, "a denominator").text;
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw SourceError(SourceErrorKind::Parse, pos, e.what());
  }
}

class ModelParser {
 public:
  ModelAST parse(std::string_view text) {
    std::size_t line = 1;
    std::size_t begin = 0;
    while (begin <= text.size()) {
      std::size_t end = text.find('\n', begin);
      if (end == std::string_view::npos) end = text.size();
      parse_line(text.substr(begin, end - begin), line);
      begin = end + 1;
      ++line;
    }
    if (!have_outcomes_) {
      throw SourceError(SourceErrorKind::Parse, {1, 1}, "missing outcomes declaration");
    }
    return std::move(ast_);
  }

 private:
  void parse_line(std::string_view line, std::size_t number) {
    TokenStream ts(detail::lex(line, {number, 1}));
    if (ts.at(Tok::End)) return;
    if (ts.at_word("outcomes")) {
      parse_outcomes(ts);
    } else if (ts.at_word("event")) {
      parse_event(ts);
    } else if (ts.at_word("cause")) {
      parse_cause(ts);
    } else {
      parse_error(ts.peek(), "expected 'outcomes', 'event' or 'cause', found " + detail::describe(ts.peek()));
    }
    ts.expect_end();
  }

  void parse_outcomes(TokenStream& ts) {
    const auto& keyword = ts.next();
    if (have_outcomes_) parse_error(keyword, "duplicate outcomes declaration");
    const auto& count = ts.expect(Tok::Number, "the number of outcomes");
    ast_.outcomes = detail::parse_index(count);
    ast_.outcomes_pos = keyword.pos;
    if (ast_.outcomes == 0) {
      throw SourceError(SourceErrorKind::Validate, count.pos, "a model needs at least one outcome");
    }
    have_outcomes_ = true;
  }

  void parse_event(TokenStream& ts) {
    const auto& keyword = ts.next();
    if (!have_outcomes_) parse_error(keyword, "outcomes must be declared before events");
    const auto& name = ts.expect(Tok::Ident, "an event name");
    if (detail::is_reserved(name.text)) parse_error(name, "'" + name.text + "' is a reserved word");
    if (names_.contains(name.text)) {
      throw SourceError(SourceErrorKind::Resolve, name.pos, "duplicate event name " + name.text);
    }
    ts.expect(Tok::Equals, "'='");
    ts.expect(Tok::LBrace, "'{'");
    EventDecl decl{name.text, {}, keyword.pos};
    if (!ts.at(Tok::RBrace)) {
      do {
        const auto& index = ts.expect(Tok::Number, "an outcome index");
        const std::size_t value = detail::parse_index(index);
        if (value >= ast_.outcomes) {
          throw SourceError(SourceErrorKind::Validate, index.pos,
                            "outcome " + index.text + " outside 0.." + std::to_string(ast_.outcomes - 1));
        }
        decl.members.push_back(value);
      } while (ts.accept(Tok::Comma));
    }
    ts.expect(Tok::RBrace, "'}' or ','");
    std::sort(decl.members.begin(), decl.members.end());
    decl.members.erase(std::unique(decl.members.begin(), decl.members.end()), decl.members.end());
    names_.insert(decl.name);
    ast_.events.push_back(std::move(decl));
  }

  const detail::Token& known_name(TokenStream& ts) {
    const auto& name = ts.expect(Tok::Ident, "an event name");
    if (!names_.contains(name.text)) {
      throw SourceError(SourceErrorKind::Resolve, name.pos, "unknown name " + name.text);
    }
    return name;
  }

  void parse_cause(TokenStream& ts) {
    const auto& keyword = ts.next();
    ts.expect_word("P");
    ts.expect(Tok::LParen, "'('");
    CauseDecl decl;
    decl.pos = keyword.pos;
    decl.event = known_name(ts).text;
    ts.expect(Tok::Bar, "'|'");
    if (!ts.accept(Tok::Star)) {
      do {
        const SourcePos pos = ts.peek().pos;
        const bool negated = ts.accept(Tok::Tilde);
        decl.condition.push_back({known_name(ts).text, negated, pos});
      } while (ts.accept(Tok::Amp));
    }
    ts.expect(Tok::RParen, "')'");
    ts.expect(Tok::Equals, "'='");
    decl.p = parse_rational(ts);
    ast_.causes.push_back(std::move(decl));
  }

  ModelAST ast_;
  bool have_outcomes_ = false;
  std::set<std::string, std::less<>> names_;
};

std::string render_literals(const std::vector<NamedLiteral>& condition) {
  if (condition.empty()) return "*";
  std::string out;
  for (std::size_t i = 0; i < condition.size(); ++i) {
    if (i > 0) out += " & ";
    if (condition[i].negated) out += '~';
    out += condition[i].name;
  }
  return out;
}

}  // namespace

ModelAST parse_model(std::string_view text) { return ModelParser().parse(text); }

std::string render_model(const ModelAST& ast) {
  std::ostringstream out;
  out << "outcomes " << ast.outcomes << '\n';
  for (const auto& e : ast.events) {
    out << "event " << e.name << " = {";
    for (std::size_t i = 0; i < e.members.size(); ++i) out << (i > 0 ? "," : "") << e.members[i];
    out << "}\n";
  }
  for (const auto& c : ast.causes) {
    out << "cause P(" << c.event << " | " << render_literals(c.condition) << ") = " << c.p.str() << '\n';
  }
  return out.str();
}

std::optional<std::size_t> Model::level_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin()) + 1;
}

std::vector<Literal> atom_literals(const PrimitiveSequence& seq, std::size_t level, std::size_t index) {
  std::vector<Literal> out(level);
  for (std::size_t j = level; j >= 1; --j) {
    out[j - 1] = Literal{j, seq.on_positive_side(j, index)};
    index = seq.parent(j, index);
  }
  return out;
}

Model elaborate(const ModelAST& ast, const Limits& limits) {
  std::optional<Universe> universe;
  try {
    universe.emplace(ast.outcomes, limits);
  } catch (const Error& e) {
    throw validate_error(ast.outcomes_pos, e);
  }

  std::vector<Event> events;
  std::vector<std::string> names;
  for (const auto& decl : ast.events) {
    events.push_back(universe->event(decl.members));
    names.push_back(decl.name);
  }
  std::optional<PrimitiveSequence> seq;
  try {
    seq.emplace(validate_primitive_sequence(*universe, events, limits));
  } catch (const Error& e) {
    SourcePos pos = ast.outcomes_pos;
    if (e.code() == ErrorCode::TooManyEvents) {
      pos = ast.events[limits.max_events].pos;
    } else if (e.level() && *e.level() >= 1 && *e.level() <= ast.events.size()) {
      pos = ast.events[*e.level() - 1].pos;
    }
    throw validate_error(pos, e);
  }

  auto level_of = [&](const NamedLiteral& ref) {
    const auto it = std::find(names.begin(), names.end(), ref.name);
    if (it == names.end()) throw SourceError(SourceErrorKind::Resolve, ref.pos, "unknown name " + ref.name);
    return static_cast<std::size_t>(it - names.begin()) + 1;
  };
  auto describe_atom = [&](std::size_t level, std::size_t index) {
    std::vector<NamedLiteral> lits;
    for (const auto& l : atom_literals(*seq, level, index)) lits.push_back({names[l.level - 1], !l.positive, {}});
    return render_literals(lits);
  };

  std::vector<CauseEntry> entries;
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& decl : ast.causes) {
    const std::size_t level = level_of({decl.event, false, decl.pos});
    Event condition = universe->all();
    for (const auto& lit : decl.condition) {
      const std::size_t lit_level = level_of(lit);
      if (lit_level >= level) {
        throw SourceError(SourceErrorKind::Validate, lit.pos,
                          "StaleCondition: " + lit.name + " does not precede " + decl.event);
      }
      const Event& e = seq->event(lit_level);
      condition = condition & (lit.negated ? e.complement() : e);
    }
    const Partition& atoms = seq->atoms(level - 1);
    std::vector<std::size_t> matches;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].is_subset_of(condition)) matches.push_back(i);
    }
    if (matches.empty()) {
      throw SourceError(SourceErrorKind::Validate, decl.pos,
                        "EmptyCondition: condition " + render_literals(decl.condition) + " is impossible",
                        ErrorCode::EmptyCondition);
    }
    if (matches.size() > 1) {
      throw SourceError(SourceErrorKind::Validate, decl.pos,
                        "AmbiguousCondition: condition " + render_literals(decl.condition) + " covers " +
                            std::to_string(matches.size()) + " atoms preceding " + decl.event);
    }
    entries.push_back({level, atoms[matches.front()], decl.p});
    keys.emplace_back(level, matches.front());
  }

  try {
    return Model{build_causal_space(*seq, entries), std::move(names)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MissingEntry) {
      const std::size_t level = *e.level();
      throw SourceError(SourceErrorKind::Validate, ast.events[level - 1].pos,
                        "MissingEntry: no cause given for P(" + names[level - 1] + " | " +
                            describe_atom(level - 1, *e.index()) + ")",
                        e.code());
    }
    SourcePos pos = ast.outcomes_pos;
    if (e.level() && e.index()) {
      const auto key = std::make_pair(*e.level(), *e.index());
      const auto first = std::find(keys.begin(), keys.end(), key);
      auto hit = first;
      if (e.code() == ErrorCode::DuplicateEntry && first != keys.end()) hit = std::find(first + 1, keys.end(), key);
      if (hit != keys.end()) pos = ast.causes[static_cast<std::size_t>(hit - keys.begin())].pos;
    }
    throw validate_error(pos, e);
  }
}

Model load_model(std::string_view text, const Limits& limits) { return elaborate(parse_model(text), limits); }

ModelAST export_ast(const Model& model) {
  const auto& seq = model.space.sequence();
  ModelAST ast;
  ast.outcomes = seq.universe_size();
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    ast.events.push_back({model.names[n - 1], seq.event(n).members(), {}});
  }
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    for (std::size_t i = 0; i < seq.atoms(n - 1).size(); ++i) {
      const auto& entry = model.space.table().entry(n, i);
      if (!entry) continue;
      CauseDecl decl{model.names[n - 1], {}, *entry, {}};
      for (const auto& l : atom_literals(seq, n - 1, i)) {
        decl.condition.push_back({model.names[l.level - 1], !l.positive, {}});
      }
      ast.causes.push_back(std::move(decl));
    }
  }
  return ast;
}

}  // namespace causalspace::dsl
