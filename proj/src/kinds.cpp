#include "coop/kinds.hpp"

#include "coop/error.hpp"

#include <algorithm>
#include <sstream>

namespace coop {

std::string non_blocking_status::to_string() const
{
  switch (status) {
    case outcome::proved: return "proved";
    case outcome::bounded_proved: return "bounded-proved";
    case outcome::not_applicable: return "not-applicable";
    case outcome::refuted: break;
  }
  std::string out = "refuted at " + state;
  if (edge) out += " on edge " + edge->to_string();
  if (counter_state) out += " with " + counter_state->to_string();
  return out;
}

std::string kind_report::to_string() const
{
  std::ostringstream out;
  out << "kind " << kind_name(kind) << ": " << (ok() ? "ok" : "invalid") << '\n';
  for (const kind_violation & v : violations)
    out << "  violation [" << v.constraint << "] at " << v.where << ": " << v.message << '\n';
  out << "  non-blocking: " << non_blocking.to_string() << '\n';
  if (kind == automaton_kind::violation_witness)
    out << "  single path: " << (single_path ? "yes" : "no") << '\n';
  return out.str();
}

namespace {

std::string describe(const artifact_automaton & aut, const transition & t)
{
  std::string out = aut.state(t.from).id + " -> " + aut.state(t.to).id;
  return t.is_otherwise() ? out + " otherwise" : out + " on " + t.pattern->to_string();
}

void check_trivial_invariants(const artifact_automaton & aut, kind_report & report)
{
  for (const automaton_state & s : aut.states())
    if (!s.invariant.is_true())
      report.violations.push_back({"trivial-invariants", s.id,
                                   "state invariant must be true, found " + s.invariant.to_string()});
}

void check_no_finals(const artifact_automaton & aut, kind_report & report)
{
  for (const automaton_state & s : aut.states())
    if (s.final) report.violations.push_back({"no-final-states", s.id, "final states are not allowed"});
}

void check_chi_usage(const artifact_automaton & aut, kind_report & report)
{
  if (aut.kind() == automaton_kind::test_case) return;
  for (const automaton_state & s : aut.states())
    if (s.invariant.mentions_chi())
      report.violations.push_back({"chi-template", s.id, "chi may only occur in test-case automata"});
  for (const transition & t : aut.transitions())
    if (t.assume.mentions_chi())
      report.violations.push_back(
          {"chi-template", describe(aut, t), "chi may only occur in test-case automata"});
}

using outcome = non_blocking_status::outcome;

outcome weaker(outcome a, outcome b)
{
  auto rank = [](outcome o) { return o == outcome::refuted ? 0 : o == outcome::bounded_proved ? 1 : 2; };
  return rank(a) <= rank(b) ? a : b;
}

non_blocking_status check_non_blocking(const artifact_automaton & aut,
                                       const control_flow_automaton & program,
                                       const interval & domain)
{
  non_blocking_status result;
  result.status = outcome::proved;
  for (std::size_t q = 0; q < aut.states().size(); ++q) {
    if (aut.is_final(q)) continue;
    for (const cfa_edge & g : program.edges()) {
      std::vector<predicate> guards;
      for (std::size_t idx : aut.outgoing(q)) {
        const transition & t = aut.transitions()[idx];
        if (!t.is_otherwise() && t.pattern->matches(g)) guards.push_back(t.assume);
      }
      bool has_otherwise = aut.otherwise_of(q).has_value();
      predicate explicit_guards = predicate::any_of(guards);
      outcome here;
      tautology_result verdict{tautology_result::status::tautology, std::nullopt, true};
      if (has_otherwise && guards.empty()) {
        // The otherwise guard is !false.
        here = outcome::proved;
      } else {
        verdict = is_tautology_bounded(explicit_guards, explicit_guards.variables(), domain);
        if (verdict.outcome != tautology_result::status::tautology && has_otherwise) {
          predicate with_otherwise =
              predicate::disjunction(explicit_guards, predicate::negation(explicit_guards));
          verdict = is_tautology_bounded(with_otherwise, with_otherwise.variables(), domain,
                                         /*syntactic_shortcut=*/false);
        }
        if (verdict.outcome == tautology_result::status::tautology)
          here = verdict.syntactic ? outcome::proved : outcome::bounded_proved;
        else
          here = outcome::refuted;
      }
      if (here == outcome::refuted) {
        result.status = outcome::refuted;
        result.state = aut.state(q).id;
        result.edge = g;
        result.counter_state = verdict.counter_state;
        return result;
      }
      result.status = weaker(result.status, here);
    }
  }
  return result;
}

bool is_single_path(const artifact_automaton & aut)
{
  std::set<std::size_t> seen;
  std::size_t q = aut.initial();
  while (true) {
    if (!seen.insert(q).second) return false;
    const auto & out = aut.outgoing(q);
    if (out.empty()) return aut.is_final(q) && seen.size() == aut.states().size();
    if (out.size() != 1 || aut.transitions()[out[0]].is_otherwise()) return false;
    q = aut.transitions()[out[0]].to;
  }
}

bool is_chi_equals_literal(const predicate & p)
{
  return p.op() == predicate::kind::compare && p.rel() == relation::eq
         && p.left_expr().op() == expr::kind::chi && p.right_expr().op() == expr::kind::literal;
}

void check_test_case_shape(const artifact_automaton & aut, kind_report & report)
{
  std::set<std::size_t> seen;
  std::size_t q = aut.initial();
  while (true) {
    const std::string & id = aut.state(q).id;
    if (!seen.insert(q).second) {
      report.violations.push_back({"test-case-shape", id, "input chain revisits a state"});
      return;
    }
    auto ow = aut.otherwise_of(q);
    if (!ow || aut.transitions()[*ow].to != q)
      report.violations.push_back({"test-case-shape", id, "state needs an otherwise self-loop"});
    std::vector<std::size_t> explicit_out;
    for (std::size_t idx : aut.outgoing(q))
      if (!aut.transitions()[idx].is_otherwise()) explicit_out.push_back(idx);
    if (explicit_out.empty()) break;
    if (explicit_out.size() > 1) {
      report.violations.push_back({"test-case-shape", id, "state has more than one input transition"});
      return;
    }
    const transition & t = aut.transitions()[explicit_out[0]];
    if (!(*t.pattern == edge_pattern::input_template()))
      report.violations.push_back(
          {"test-case-shape", describe(aut, t), "transition pattern must be (*, chi = input(), *)"});
    if (!is_chi_equals_literal(t.assume))
      report.violations.push_back(
          {"test-case-shape", describe(aut, t), "assumption must have the form chi == <integer>"});
    q = t.to;
  }
  if (seen.size() != aut.states().size())
    report.violations.push_back({"test-case-shape", aut.name(), "states outside the input chain"});
}

}  // namespace

kind_report validate_kind(const artifact_automaton & aut, const control_flow_automaton & program,
                          const interval & domain)
{
  kind_report report;
  report.kind = aut.kind();
  check_chi_usage(aut, report);
  switch (aut.kind()) {
    case automaton_kind::property:
      check_trivial_invariants(aut, report);
      report.non_blocking = check_non_blocking(aut, program, domain);
      break;
    case automaton_kind::test_goal: check_trivial_invariants(aut, report); break;
    case automaton_kind::violation_witness:
      check_trivial_invariants(aut, report);
      report.single_path = is_single_path(aut);
      break;
    case automaton_kind::correctness_witness:
      for (const transition & t : aut.transitions())
        if (!t.assume.is_true())
          report.violations.push_back({"trivial-assumptions", describe(aut, t),
                                       "transition assumption must be true, found "
                                           + t.assume.to_string()});
      check_no_finals(aut, report);
      break;
    case automaton_kind::condition:
      check_trivial_invariants(aut, report);
      for (const transition & t : aut.transitions())
        if (aut.is_final(t.from))
          report.violations.push_back(
              {"no-transitions-from-finals", describe(aut, t), "final states must not have successors"});
      break;
    case automaton_kind::test_case:
      check_trivial_invariants(aut, report);
      check_no_finals(aut, report);
      check_test_case_shape(aut, report);
      break;
  }
  return report;
}

void require_kind(const artifact_automaton & aut, automaton_kind expected,
                  const control_flow_automaton & program, const interval & domain)
{
  if (aut.kind() != expected)
    throw invalid_artifact("automaton '" + aut.name() + "' has kind " + std::string(kind_name(aut.kind()))
                           + ", expected " + std::string(kind_name(expected)));
  kind_report report = validate_kind(aut, program, domain);
  if (!report.ok()) throw invalid_artifact("automaton '" + aut.name() + "' is not a valid "
                                           + std::string(kind_name(expected)) + ":\n"
                                           + report.to_string());
}

artifact_automaton build_test_case_automaton(const test_case & test)
{
  std::vector<automaton_state> states;
  std::vector<transition> transitions;
  for (std::size_t i = 0; i <= test.size(); ++i) {
    states.push_back({"q" + std::to_string(i), predicate::truth(), false});
    transitions.push_back({i, i, std::nullopt, predicate::truth()});
    if (i < test.size())
      transitions.push_back({i, i + 1, edge_pattern::input_template(),
                             predicate::compare(expr::chi(), relation::eq, expr::literal(test[i]))});
  }
  return artifact_automaton("test_case", automaton_kind::test_case, std::move(states), 0,
                            std::move(transitions));
}

}  // namespace coop
