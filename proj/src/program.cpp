#include "coop/program.hpp"

#include "coop/error.hpp"
#include "syntax.hpp"

#include <algorithm>
#include <sstream>

namespace coop {

std::optional<std::string> operation::written() const
{
  if (is_assignment()) return as_assignment().target;
  if (is_input()) return as_input().target;
  return std::nullopt;
}

std::set<std::string> operation::read() const
{
  std::set<std::string> out;
  if (is_assignment()) as_assignment().value.collect_variables(out);
  if (is_assume()) as_assume().condition.collect_variables(out);
  return out;
}

std::string operation::canonical() const
{
  if (is_assignment()) return as_assignment().target + "=" + as_assignment().value.to_string();
  if (is_input()) return as_input().target + "=input()";
  return as_assume().condition.to_string();
}

std::string cfa_edge::to_string() const
{
  return "(" + std::to_string(source) + ", " + op.canonical() + ", " + std::to_string(target) + ")";
}

namespace {

// Parses the body of a simple statement (no trailing ';'): declaration,
// assignment, input call or increment. Returns nullopt when the tokens do
// not start a simple statement.
std::optional<operation> parse_simple(syntax::parser & p)
{
  std::size_t saved = p.mark();
  bool declared = p.accept("int");
  const syntax::token & t = p.peek();
  if (t.type != syntax::tok::ident || syntax::is_keyword(t.text)) {
    if (declared) p.fail("expected identifier after 'int'");
    p.reset(saved);
    return std::nullopt;
  }
  if (p.is("=", 1)) {
    std::string target = p.advance().text;
    p.advance();
    if (p.is("input") && p.is("(", 1)) {
      p.advance();
      p.expect("(");
      p.expect(")");
      return operation(input_call{target});
    }
    return operation(assignment{target, p.parse_expr()});
  }
  if (!declared && ((p.is("+", 1) && p.is("+", 2)) || (p.is("-", 1) && p.is("-", 2)))) {
    std::string target = p.advance().text;
    bool inc = p.advance().text == "+";
    p.advance();
    expr one = expr::literal(1);
    expr var = expr::variable(target);
    return operation(assignment{target, expr::binary(inc ? expr::kind::add : expr::kind::sub, var, one)});
  }
  if (declared) p.fail("expected '=' in declaration");
  p.reset(saved);
  return std::nullopt;
}

}  // namespace

operation parse_operation(std::string_view text)
{
  syntax::parser p(syntax::tokenize(text));
  std::optional<operation> op = parse_simple(p);
  if (!op) op = operation(assumption{p.parse_condition()});
  p.accept(";");
  if (!p.at_end()) p.fail("trailing input after operation");
  return *op;
}

control_flow_automaton::control_flow_automaton(std::set<location> locations, location initial,
                                               std::vector<cfa_edge> edges)
    : locations_(std::move(locations)), initial_(initial), edges_(std::move(edges))
{
  if (!locations_.count(initial_))
    throw invalid_artifact("initial location " + std::to_string(initial_) + " is not a location");
  std::set<cfa_edge> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const cfa_edge & e = edges_[i];
    if (!locations_.count(e.source) || !locations_.count(e.target))
      throw invalid_artifact("edge " + e.to_string() + " has an endpoint outside the locations");
    if (!seen.insert(e).second) throw invalid_artifact("duplicate edge " + e.to_string());
    outgoing_[e.source].push_back(i);
    for (const std::string & v : e.op.read()) variables_.insert(v);
    if (auto w = e.op.written()) variables_.insert(*w);
  }
}

const std::vector<std::size_t> & control_flow_automaton::outgoing(location l) const
{
  static const std::vector<std::size_t> none;
  auto it = outgoing_.find(l);
  return it == outgoing_.end() ? none : it->second;
}

std::size_t control_flow_automaton::input_edge_count() const
{
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const cfa_edge & e) { return e.op.is_input(); }));
}

std::string control_flow_automaton::to_listing() const
{
  std::ostringstream out;
  out << "cfa\ninitial " << initial_ << "\nlocations";
  for (location l : locations_) out << ' ' << l;
  out << '\n';
  for (const cfa_edge & e : edges_)
    out << "edge " << e.source << ' ' << e.target << " \"" << e.op.canonical() << "\"\n";
  return out.str();
}

void check_definitions(const control_flow_automaton & cfa)
{
  // nullopt = not yet reached (top of the lattice).
  std::map<location, std::optional<std::set<std::string>>> defined;
  defined[cfa.initial()] = std::set<std::string>{};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const cfa_edge & e : cfa.edges()) {
      const auto & in = defined[e.source];
      if (!in) continue;
      std::set<std::string> out = *in;
      if (auto w = e.op.written()) out.insert(*w);
      auto & target = defined[e.target];
      if (!target) {
        target = out;
        changed = true;
        continue;
      }
      std::set<std::string> meet;
      std::set_intersection(target->begin(), target->end(), out.begin(), out.end(),
                            std::inserter(meet, meet.end()));
      if (meet != *target) {
        target = std::move(meet);
        changed = true;
      }
    }
  }
  for (const cfa_edge & e : cfa.edges()) {
    const auto & in = defined[e.source];
    if (!in) continue;
    for (const std::string & v : e.op.read())
      if (!in->count(v)) throw use_before_def(v, e.source);
  }
}

namespace {

struct statement
{
  enum class kind { simple, branch, loop } type;
  std::optional<long> label;
  syntax::token start;
  std::optional<operation> op;
  std::optional<predicate> cond;
  std::vector<statement> body;
  std::vector<statement> orelse;
  location loc = -1;
};

class program_parser
{
 public:
  explicit program_parser(std::string_view source) : p_(syntax::tokenize(source)) {}

  control_flow_automaton run()
  {
    std::vector<statement> top = parse_block_items(/*top_level=*/true);
    std::set<long> labels;
    collect_labels(top, labels);
    if (exit_label_ && !labels.insert(*exit_label_).second)
      throw syntax_error(exit_token_.line, exit_token_.column,
                         "duplicate location label " + std::to_string(*exit_label_));
    next_auto_ = labels.empty() ? 0 : static_cast<location>(*labels.rbegin()) + 1;
    number(top);
    location exit = exit_label_ ? static_cast<location>(*exit_label_) : next_auto_++;
    locations_.insert(exit);
    emit_block(top, exit);
    location initial = top.empty() ? exit : top.front().loc;
    control_flow_automaton cfa(locations_, initial, edges_);
    check_definitions(cfa);
    return cfa;
  }

 private:
  std::vector<statement> parse_block_items(bool top_level)
  {
    std::vector<statement> items;
    while (true) {
      if (top_level && p_.at_end()) return items;
      if (!top_level && p_.is("}")) return items;
      std::optional<long> label;
      syntax::token label_tok = p_.peek();
      if (p_.peek().type == syntax::tok::number && p_.is(":", 1)) {
        label = std::stol(p_.advance().text);
        p_.advance();
        if (top_level && p_.at_end()) {
          exit_label_ = label;
          exit_token_ = label_tok;
          return items;
        }
      }
      statement s = parse_statement();
      s.label = label;
      if (label) s.start = label_tok;
      items.push_back(std::move(s));
    }
  }

  std::vector<statement> parse_braced()
  {
    p_.expect("{");
    std::vector<statement> items = parse_block_items(false);
    p_.expect("}");
    return items;
  }

  statement parse_statement()
  {
    statement s{statement::kind::simple, std::nullopt, p_.peek(), {}, {}, {}, {}};
    if (p_.accept("if")) {
      s.type = statement::kind::branch;
      p_.expect("(");
      s.cond = p_.parse_condition();
      p_.expect(")");
      s.body = parse_braced();
      if (p_.accept("else")) {
        if (p_.is("if"))
          s.orelse.push_back(parse_statement());
        else
          s.orelse = parse_braced();
      }
      return s;
    }
    if (p_.accept("while")) {
      s.type = statement::kind::loop;
      p_.expect("(");
      s.cond = p_.parse_condition();
      p_.expect(")");
      s.body = parse_braced();
      return s;
    }
    s.op = parse_simple(p_);
    if (!s.op) p_.fail("expected statement");
    p_.expect(";");
    return s;
  }

  void collect_labels(const std::vector<statement> & items, std::set<long> & labels)
  {
    for (const statement & s : items) {
      if (s.label) {
        if (*s.label < 0) throw syntax_error(s.start.line, s.start.column, "negative label");
        if (!labels.insert(*s.label).second)
          throw syntax_error(s.start.line, s.start.column,
                             "duplicate location label " + std::to_string(*s.label));
      }
      collect_labels(s.body, labels);
      collect_labels(s.orelse, labels);
    }
  }

  void number(std::vector<statement> & items)
  {
    for (statement & s : items) {
      s.loc = s.label ? static_cast<location>(*s.label) : next_auto_++;
      locations_.insert(s.loc);
      number(s.body);
      number(s.orelse);
    }
  }

  static location entry(const std::vector<statement> & items, location fallback)
  {
    return items.empty() ? fallback : items.front().loc;
  }

  void emit_block(const std::vector<statement> & items, location cont)
  {
    for (std::size_t i = 0; i < items.size(); ++i)
      emit(items[i], i + 1 < items.size() ? items[i + 1].loc : cont);
  }

  void emit(const statement & s, location next)
  {
    switch (s.type) {
      case statement::kind::simple: edges_.push_back({s.loc, *s.op, next}); break;
      case statement::kind::branch:
        edges_.push_back({s.loc, assumption{*s.cond}, entry(s.body, next)});
        edges_.push_back({s.loc, assumption{predicate::negation(*s.cond)}, entry(s.orelse, next)});
        emit_block(s.body, next);
        emit_block(s.orelse, next);
        break;
      case statement::kind::loop:
        edges_.push_back({s.loc, assumption{*s.cond}, entry(s.body, s.loc)});
        edges_.push_back({s.loc, assumption{predicate::negation(*s.cond)}, next});
        emit_block(s.body, s.loc);
        break;
    }
  }

  syntax::parser p_;
  std::optional<long> exit_label_;
  syntax::token exit_token_{};
  location next_auto_ = 0;
  std::set<location> locations_;
  std::vector<cfa_edge> edges_;
};

}  // namespace

control_flow_automaton parse_program(std::string_view source)
{
  return program_parser(source).run();
}

control_flow_automaton parse_cfa_listing(std::string_view source)
{
  syntax::parser p(syntax::tokenize(source, /*hash_comments=*/true));
  p.expect("cfa");
  p.expect("initial");
  auto number = [&p]() -> location {
    if (p.peek().type != syntax::tok::number) p.fail("expected location number");
    return static_cast<location>(std::stol(p.advance().text));
  };
  location initial = number();
  std::set<location> locations;
  p.expect("locations");
  while (p.peek().type == syntax::tok::number) locations.insert(number());
  std::vector<cfa_edge> edges;
  while (p.accept("edge")) {
    location src = number();
    location dst = number();
    const syntax::token & text = p.peek();
    if (text.type != syntax::tok::string) p.fail("expected quoted operation");
    p.advance();
    edges.push_back({src, parse_operation(text.text), dst});
  }
  if (!p.at_end()) p.fail("expected 'edge'");
  control_flow_automaton cfa(std::move(locations), initial, std::move(edges));
  check_definitions(cfa);
  return cfa;
}

control_flow_automaton parse_program_text(std::string_view source)
{
  std::vector<syntax::token> toks = syntax::tokenize(source, /*hash_comments=*/true);
  if (!toks.empty() && toks.front().type == syntax::tok::ident && toks.front().text == "cfa")
    return parse_cfa_listing(source);
  return parse_program(source);
}

}  // namespace coop
