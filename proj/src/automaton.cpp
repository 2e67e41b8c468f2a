#include "coop/automaton.hpp"

#include "coop/error.hpp"
#include "syntax.hpp"

#include <algorithm>
#include <sstream>

namespace coop {

namespace {

constexpr std::pair<automaton_kind, std::string_view> kind_names[] = {
    {automaton_kind::property, "property"},
    {automaton_kind::test_goal, "test-goal"},
    {automaton_kind::violation_witness, "violation-witness"},
    {automaton_kind::correctness_witness, "correctness-witness"},
    {automaton_kind::condition, "condition"},
    {automaton_kind::test_case, "test-case"},
};

constexpr std::string_view input_template_text = "chi = input()";

std::string strip_spaces(std::string_view s)
{
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

std::string_view kind_name(automaton_kind k)
{
  for (auto [kind, name] : kind_names)
    if (kind == k) return name;
  return "?";
}

automaton_kind parse_kind(std::string_view name)
{
  for (auto [kind, text] : kind_names)
    if (text == name) return kind;
  throw unknown_kind(std::string(name));
}

bool edge_pattern::matches(const cfa_edge & edge) const
{
  if (source && *source != edge.source) return false;
  if (target && *target != edge.target) return false;
  switch (op_kind) {
    case op_match::any: return true;
    case op_match::input_template: return edge.op.is_input();
    case op_match::exact: return edge.op.canonical() == op_text;
  }
  return false;
}

std::string edge_pattern::to_string() const
{
  std::string out = "(" + (source ? std::to_string(*source) : "*") + ", ";
  switch (op_kind) {
    case op_match::any: out += "*"; break;
    case op_match::input_template: out += "\"" + std::string(input_template_text) + "\""; break;
    case op_match::exact: out += "\"" + op_text + "\""; break;
  }
  return out + ", " + (target ? std::to_string(*target) : "*") + ")";
}

artifact_automaton::artifact_automaton(std::string name, automaton_kind kind,
                                       std::vector<automaton_state> states, std::size_t initial,
                                       std::vector<transition> transitions)
    : name_(std::move(name)),
      kind_(kind),
      states_(std::move(states)),
      initial_(initial),
      transitions_(std::move(transitions)),
      outgoing_(states_.size()),
      otherwise_(states_.size())
{
  if (states_.empty()) throw invalid_artifact("automaton '" + name_ + "' has no states");
  if (initial_ >= states_.size()) throw invalid_artifact("initial state out of range");
  std::set<std::string> ids;
  for (const automaton_state & s : states_)
    if (!ids.insert(s.id).second) throw invalid_artifact("duplicate state '" + s.id + "'");
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const transition & t = transitions_[i];
    if (t.from >= states_.size() || t.to >= states_.size())
      throw invalid_artifact("transition endpoint out of range");
    outgoing_[t.from].push_back(i);
    if (t.is_otherwise()) {
      if (otherwise_[t.from]) throw duplicate_otherwise(states_[t.from].id);
      otherwise_[t.from] = i;
    }
  }
}

bool artifact_automaton::has_finals() const
{
  return std::any_of(states_.begin(), states_.end(), [](const automaton_state & s) { return s.final; });
}

std::optional<std::size_t> artifact_automaton::find_state(std::string_view id) const
{
  for (std::size_t q = 0; q < states_.size(); ++q)
    if (states_[q].id == id) return q;
  return std::nullopt;
}

artifact_automaton artifact_automaton::with_kind(automaton_kind k) const
{
  artifact_automaton copy = *this;
  copy.kind_ = k;
  return copy;
}

std::string serialize_automaton(const artifact_automaton & aut)
{
  std::ostringstream out;
  out << "automaton " << aut.name() << " kind=" << kind_name(aut.kind()) << '\n';
  for (std::size_t q = 0; q < aut.states().size(); ++q) {
    const automaton_state & s = aut.state(q);
    out << "state " << s.id;
    if (q == aut.initial()) out << " init";
    if (s.final) out << " final";
    if (!s.invariant.is_true()) out << " inv: " << s.invariant.to_string();
    out << '\n';
  }
  for (const transition & t : aut.transitions()) {
    out << "trans " << aut.state(t.from).id << " -> " << aut.state(t.to).id;
    if (t.is_otherwise()) {
      out << " otherwise\n";
      continue;
    }
    out << " on " << t.pattern->to_string();
    if (!t.assume.is_true()) out << " assume " << t.assume.to_string();
    out << '\n';
  }
  return out.str();
}

namespace {

struct pending_transition
{
  std::string from;
  std::string to;
  std::optional<edge_pattern> pattern;
  predicate assume;
  syntax::token where;
};

std::optional<location> parse_pattern_location(syntax::parser & p)
{
  if (p.accept("*")) return std::nullopt;
  if (p.peek().type != syntax::tok::number) p.fail("expected location or '*'");
  return static_cast<location>(std::stol(p.advance().text));
}

}  // namespace

artifact_automaton parse_automaton(std::string_view source)
{
  std::string name;
  std::optional<automaton_kind> kind;
  std::vector<automaton_state> states;
  std::optional<std::size_t> initial;
  std::vector<pending_transition> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = source.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    syntax::parser p(syntax::tokenize(line, /*hash_comments=*/true, line_no), /*allow_chi=*/true,
                     /*single_eq=*/true);
    if (p.at_end()) continue;
    syntax::token head = p.peek();
    std::string word = p.advance().text;
    if (!kind) {
      if (word != "automaton") p.fail_at(head, "expected 'automaton' header");
      name = p.advance().text;
      if (name.empty()) p.fail("expected automaton name");
      p.expect("kind");
      p.expect("=");
      std::string kind_text;
      while (!p.at_end()) kind_text += p.advance().text;
      kind = parse_kind(kind_text);
      continue;
    }
    if (word == "state") {
      automaton_state s;
      s.id = p.advance().text;
      if (s.id.empty()) p.fail("expected state id");
      while (!p.at_end()) {
        if (p.accept("init")) {
          if (initial) p.fail("second initial state");
          initial = states.size();
        } else if (p.accept("final")) {
          s.final = true;
        } else if (p.accept("inv")) {
          p.expect(":");
          s.invariant = p.parse_condition();
          if (!p.at_end()) p.fail("trailing input after invariant");
        } else {
          p.fail("expected 'init', 'final' or 'inv:'");
        }
      }
      states.push_back(std::move(s));
    } else if (word == "trans") {
      pending_transition t{p.advance().text, {}, std::nullopt, predicate::truth(), head};
      p.expect("->");
      t.to = p.advance().text;
      if (p.accept("otherwise")) {
        if (!p.at_end()) p.fail("trailing input after 'otherwise'");
      } else {
        p.expect("on");
        p.expect("(");
        edge_pattern pat;
        pat.source = parse_pattern_location(p);
        p.expect(",");
        if (!p.accept("*")) {
          const syntax::token & op_tok = p.peek();
          if (op_tok.type != syntax::tok::string) p.fail("expected quoted operation or '*'");
          p.advance();
          if (strip_spaces(op_tok.text) == strip_spaces(input_template_text)) {
            pat.op_kind = edge_pattern::op_match::input_template;
          } else {
            pat.op_kind = edge_pattern::op_match::exact;
            try {
              pat.op_text = parse_operation(op_tok.text).canonical();
            } catch (const syntax_error & e) {
              throw syntax_error(op_tok.line, op_tok.column, std::string("in operation: ") + e.what());
            }
          }
        }
        p.expect(",");
        pat.target = parse_pattern_location(p);
        p.expect(")");
        t.pattern = pat;
        if (p.accept("assume")) t.assume = p.parse_condition();
        if (!p.at_end()) p.fail("trailing input after transition");
      }
      pending.push_back(std::move(t));
    } else {
      p.fail_at(head, "expected 'state' or 'trans'");
    }
  }
  if (!kind) throw syntax_error(1, 1, "missing 'automaton' header");
  if (!initial) throw syntax_error(line_no, 1, "no initial state");

  artifact_automaton shell(name, *kind, states, *initial, {});
  std::vector<transition> transitions;
  for (const pending_transition & t : pending) {
    auto from = shell.find_state(t.from);
    auto to = shell.find_state(t.to);
    if (!from || !to)
      throw syntax_error(t.where.line, t.where.column,
                         "transition refers to unknown state '" + (from ? t.to : t.from) + "'");
    transitions.push_back({*from, *to, t.pattern, t.assume});
  }
  return artifact_automaton(name, *kind, std::move(states), *initial, std::move(transitions));
}

}  // namespace coop
