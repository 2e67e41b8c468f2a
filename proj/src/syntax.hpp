#pragma once

// Shared lexer and expression/condition parser for program text, automaton
// files and predicate strings.

#include "coop/error.hpp"
#include "coop/predicate.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace coop::syntax {

enum class tok { ident, number, punct, string, end };

struct token
{
  tok type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Splits `source` into tokens. `//` comments are skipped; `#` starts a
/// comment when `hash_comments` is set. Positions are offset by
/// (line_base, column_base) for error reporting of embedded snippets.
std::vector<token> tokenize(std::string_view source, bool hash_comments = false,
                            std::size_t line_base = 1, std::size_t column_base = 1);

class parser
{
 public:
  explicit parser(std::vector<token> tokens, bool allow_chi = false, bool single_eq = false)
      : toks_(std::move(tokens)), allow_chi_(allow_chi), single_eq_(single_eq)
  {
  }

  const token & peek(std::size_t ahead = 0) const;
  bool at_end() const { return peek().type == tok::end; }
  bool is(std::string_view text, std::size_t ahead = 0) const;
  bool accept(std::string_view text);
  const token & expect(std::string_view text);
  std::string expect_ident();
  const token & advance();

  expr parse_expr();
  predicate parse_condition();

  [[noreturn]] void fail(const std::string & message) const;
  [[noreturn]] void fail_at(const token & t, const std::string & message) const;

  std::size_t mark() const { return pos_; }
  void reset(std::size_t mark) { pos_ = mark; }

 private:
  expr parse_term();
  expr parse_unary();
  expr parse_atom();
  predicate parse_or();
  predicate parse_and();
  predicate parse_not();
  predicate parse_comparison();
  bool at_relation() const;

  std::vector<token> toks_;
  std::size_t pos_ = 0;
  bool allow_chi_;
  bool single_eq_;
};

bool is_keyword(std::string_view word);

}  // namespace coop::syntax
