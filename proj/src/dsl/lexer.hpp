#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "causalspace/dsl.hpp"

namespace causalspace::dsl::detail {

enum class Tok {
  Ident,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semicolon,
  Amp,
  Bar,
  Tilde,
  Equals,
  Star,
  Slash,
  Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

/// Tokenizes `text`, whose first character sits at `start`. `#` comments run
/// to the end of the line. The result always ends with a Tok::End token.
std::vector<Token> lex(std::string_view text, SourcePos start = {});

std::string describe(const Token& token);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }
  bool accept(Tok kind);
  const Token& expect(Tok kind, std::string_view what);
  void expect_word(std::string_view word);
  void expect_end();

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

[[noreturn]] void parse_error(const Token& at, const std::string& message);

std::size_t parse_index(const Token& token);

bool is_reserved(std::string_view word);

}  // namespace causalspace::dsl::detail
