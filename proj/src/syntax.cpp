#include "syntax.hpp"

#include <cctype>

namespace coop::syntax {

namespace {

constexpr std::string_view two_char_puncts[] = {"==", "!=", "<=", ">=", "&&", "||", "->"};
constexpr std::string_view one_char_puncts = "=<>!+-*(){};:,|&";

}  // namespace

bool is_keyword(std::string_view word)
{
  return word == "int" || word == "if" || word == "else" || word == "while" || word == "input"
         || word == "true" || word == "false" || word == "chi";
}

std::vector<token> tokenize(std::string_view source, bool hash_comments, std::size_t line_base,
                            std::size_t column_base)
{
  std::vector<token> out;
  std::size_t line = line_base;
  std::size_t column = column_base;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < source.size()) {
    char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    if ((c == '/' && i + 1 < source.size() && source[i + 1] == '/') || (hash_comments && c == '#')) {
      while (i < source.size() && source[i] != '\n') bump(1);
      continue;
    }
    std::size_t start_line = line;
    std::size_t start_col = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < source.size()
             && (std::isalnum(static_cast<unsigned char>(source[j])) || source[j] == '_'))
        ++j;
      out.push_back({tok::ident, std::string(source.substr(i, j - i)), start_line, start_col});
      bump(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
      out.push_back({tok::number, std::string(source.substr(i, j - i)), start_line, start_col});
      bump(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < source.size() && source[j] != '"' && source[j] != '\n') ++j;
      if (j >= source.size() || source[j] != '"')
        throw syntax_error(start_line, start_col, "unterminated string");
      out.push_back({tok::string, std::string(source.substr(i + 1, j - i - 1)), start_line,
                     start_col});
      bump(j + 1 - i);
      continue;
    }
    bool matched = false;
    for (std::string_view p : two_char_puncts) {
      if (source.substr(i, 2) == p) {
        out.push_back({tok::punct, std::string(p), start_line, start_col});
        bump(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (one_char_puncts.find(c) != std::string_view::npos) {
      out.push_back({tok::punct, std::string(1, c), start_line, start_col});
      bump(1);
      continue;
    }
    throw syntax_error(start_line, start_col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({tok::end, "", line, column});
  return out;
}

const token & parser::peek(std::size_t ahead) const
{
  std::size_t k = pos_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

bool parser::is(std::string_view text, std::size_t ahead) const
{
  const token & t = peek(ahead);
  return (t.type == tok::punct || t.type == tok::ident) && t.text == text;
}

bool parser::accept(std::string_view text)
{
  if (!is(text)) return false;
  ++pos_;
  return true;
}

const token & parser::advance()
{
  const token & t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

const token & parser::expect(std::string_view text)
{
  if (!is(text)) fail("expected '" + std::string(text) + "'");
  return advance();
}

std::string parser::expect_ident()
{
  const token & t = peek();
  if (t.type != tok::ident || is_keyword(t.text)) fail("expected identifier");
  return advance().text;
}

void parser::fail(const std::string & message) const { fail_at(peek(), message); }

void parser::fail_at(const token & t, const std::string & message) const
{
  std::string found = t.type == tok::end ? "end of input" : "'" + t.text + "'";
  throw syntax_error(t.line, t.column, message + " (found " + found + ")");
}

expr parser::parse_expr()
{
  expr lhs = parse_term();
  while (is("+") || is("-")) {
    // `x++` is a statement form, never an operand.
    if (is("+") && is("+", 1)) break;
    auto op = advance().text == "+" ? expr::kind::add : expr::kind::sub;
    lhs = expr::binary(op, lhs, parse_term());
  }
  return lhs;
}

expr parser::parse_term()
{
  expr lhs = parse_unary();
  while (accept("*")) lhs = expr::binary(expr::kind::mul, lhs, parse_unary());
  return lhs;
}

expr parser::parse_unary()
{
  if (is("-")) {
    advance();
    if (peek().type == tok::number) return expr::literal(-value_t(advance().text));
    return expr::negate(parse_unary());
  }
  return parse_atom();
}

expr parser::parse_atom()
{
  const token & t = peek();
  if (t.type == tok::number) return expr::literal(value_t(advance().text));
  if (t.type == tok::ident && t.text == "chi") {
    if (!allow_chi_) fail("template variable chi is not allowed here");
    advance();
    return expr::chi();
  }
  if (t.type == tok::ident && !is_keyword(t.text)) return expr::variable(advance().text);
  if (accept("(")) {
    expr inner = parse_expr();
    expect(")");
    return inner;
  }
  fail("expected expression");
}

predicate parser::parse_condition() { return parse_or(); }

predicate parser::parse_or()
{
  predicate lhs = parse_and();
  while (accept("||")) lhs = predicate::disjunction(lhs, parse_and());
  return lhs;
}

predicate parser::parse_and()
{
  predicate lhs = parse_not();
  while (accept("&&")) lhs = predicate::conjunction(lhs, parse_not());
  return lhs;
}

predicate parser::parse_not()
{
  if (accept("!")) return predicate::negation(parse_not());
  if (accept("true")) return predicate::truth();
  if (accept("false")) return predicate::falsity();
  if (is("(")) {
    // Either a parenthesized condition or a comparison whose left operand
    // starts with a parenthesis; try the comparison first.
    std::size_t saved = mark();
    try {
      return parse_comparison();
    } catch (const syntax_error &) {
      reset(saved);
    }
    expect("(");
    predicate inner = parse_condition();
    expect(")");
    return inner;
  }
  return parse_comparison();
}

bool parser::at_relation() const
{
  return is("==") || is("!=") || is("<") || is("<=") || is(">") || is(">=")
         || (single_eq_ && is("="));
}

predicate parser::parse_comparison()
{
  expr lhs = parse_expr();
  if (!at_relation()) fail("expected comparison operator");
  std::string op = advance().text;
  relation rel = op == "==" || op == "="   ? relation::eq
                 : op == "!="              ? relation::ne
                 : op == "<"               ? relation::lt
                 : op == "<="              ? relation::le
                 : op == ">"               ? relation::gt
                                           : relation::ge;
  expr rhs = parse_expr();
  return predicate::compare(lhs, rel, rhs);
}

}  // namespace coop::syntax
