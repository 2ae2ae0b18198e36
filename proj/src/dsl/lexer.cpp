#include "lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace causalspace::dsl {

std::string_view to_string(SourceErrorKind kind) {
  switch (kind) {
    case SourceErrorKind::Lex: return "lex";
    case SourceErrorKind::Parse: return "parse";
    case SourceErrorKind::Resolve: return "resolve";
    case SourceErrorKind::Validate: return "validate";
  }
  return "unknown";
}

SourceError::SourceError(SourceErrorKind kind, SourcePos pos, const std::string& message,
                         std::optional<ErrorCode> engine_code)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         std::string(to_string(kind)) + " error: " + message),
      kind_(kind),
      pos_(pos),
      message_(message),
      engine_code_(engine_code) {}

}  // namespace causalspace::dsl

namespace causalspace::dsl::detail {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> lex(std::string_view text, SourcePos start) {
  std::vector<Token> tokens;
  SourcePos pos = start;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    pos.column += n;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++i;
      ++pos.line;
      pos.column = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const SourcePos here = pos;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), here});
      advance(j - i);
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && is_digit(text[j])) ++j;
      }
      tokens.push_back({Tok::Number, std::string(text.substr(i, j - i)), here});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '~': kind = Tok::Tilde; break;
      case '=': kind = Tok::Equals; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '-': kind = Tok::Minus; break;
      default: {
        const auto byte = static_cast<unsigned char>(c);
        std::string shown = std::isprint(byte) ? std::string("'") + c + "'" : "byte " + std::to_string(byte);
        throw SourceError(SourceErrorKind::Lex, here, "unexpected character " + shown);
      }
    }
    tokens.push_back({kind, std::string(1, c), here});
    advance(1);
  }
  tokens.push_back({Tok::End, "", pos});
  return tokens;
}

std::string describe(const Token& token) {
  if (token.kind == Tok::End) return "end of input";
  return "'" + token.text + "'";
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (index_ + 1 < tokens_.size()) ++index_;
  return t;
}

bool TokenStream::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Tok kind, std::string_view what) {
  if (!at(kind)) parse_error(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
  return next();
}

void TokenStream::expect_word(std::string_view word) {
  if (!at_word(word)) parse_error(peek(), "expected '" + std::string(word) + "', found " + describe(peek()));
  next();
}

void TokenStream::expect_end() {
  if (!at(Tok::End)) parse_error(peek(), "unexpected " + describe(peek()));
}

void parse_error(const Token& at, const std::string& message) {
  throw SourceError(SourceErrorKind::Parse, at.pos, message);
}

std::size_t parse_index(const Token& token) {
  std::size_t value = 0;
  const auto* first = token.text.data();
  const auto* last = first + token.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw SourceError(SourceErrorKind::Validate, token.pos, "number " + token.text + " is too large");
  }
  if (ec != std::errc() || ptr != last) parse_error(token, "expected a non-negative integer, found " + describe(token));
  return value;
}

bool is_reserved(std::string_view word) {
  static constexpr std::array<std::string_view, 8> kReserved = {"outcomes", "event", "cause", "truth",
                                                                "belief",   "bayes", "given", "do"};
  for (auto w : kReserved) {
    if (w == word) return true;
  }
  return false;
}

}  // namespace causalspace::dsl::detail
