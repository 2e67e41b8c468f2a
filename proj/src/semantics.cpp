#include "coop/semantics.hpp"

#include "coop/error.hpp"

#include <sstream>

namespace coop {

std::optional<data_state> strongest_post(const data_state & state, const operation & op,
                                         const std::optional<value_t> & input_choice)
{
  if (op.is_input()) {
    if (!input_choice) throw error("input operation needs an input choice");
    return state.with(op.as_input().target, *input_choice);
  }
  if (input_choice) throw error("input choice given for a non-input operation");
  if (op.is_assignment()) {
    const assignment & a = op.as_assignment();
    return state.with(a.target, a.value.eval(state));
  }
  if (op.as_assume().condition.eval(state)) return state;
  return std::nullopt;
}

concrete_path concrete_path::prefix(std::size_t n) const
{
  concrete_path out = *this;
  out.steps_.resize(n + 1);
  return out;
}

std::vector<value_t> concrete_path::inputs() const
{
  std::vector<value_t> out;
  for (const path_step & s : steps_)
    if (s.incoming && s.incoming->op.is_input()) out.push_back(*s.state.find(s.incoming->op.as_input().target));
  return out;
}

bool concrete_path::replays_on(const control_flow_automaton & cfa) const
{
  if (steps_.front().loc != cfa.initial() || !steps_.front().state.empty() || steps_.front().incoming)
    return false;
  for (std::size_t i = 1; i < steps_.size(); ++i) {
    const path_step & prev = steps_[i - 1];
    const path_step & cur = steps_[i];
    if (!cur.incoming || cur.incoming->source != prev.loc || cur.incoming->target != cur.loc)
      return false;
    bool known = false;
    for (const cfa_edge & e : cfa.edges()) known = known || e == *cur.incoming;
    if (!known) return false;
    std::optional<value_t> choice;
    if (cur.incoming->op.is_input()) {
      const value_t * v = cur.state.find(cur.incoming->op.as_input().target);
      if (!v) return false;
      choice = *v;
    }
    std::optional<data_state> next = strongest_post(prev.state, cur.incoming->op, choice);
    if (!next || *next != cur.state) return false;
  }
  return true;
}

std::string concrete_path::to_string() const
{
  std::ostringstream out;
  out << "(" << steps_.front().state.to_string() << ", " << steps_.front().loc << ")";
  for (std::size_t i = 1; i < steps_.size(); ++i)
    out << " -" << steps_[i].incoming->op.canonical() << "-> (" << steps_[i].state.to_string()
        << ", " << steps_[i].loc << ")";
  return out.str();
}

std::vector<std::pair<std::size_t, data_state>> successors(const control_flow_automaton & cfa,
                                                           const path_step & at,
                                                           std::span<const value_t> input_choices)
{
  std::vector<std::pair<std::size_t, data_state>> out;
  for (std::size_t idx : cfa.outgoing(at.loc)) {
    const operation & op = cfa.edges()[idx].op;
    if (op.is_input()) {
      for (const value_t & v : input_choices) out.emplace_back(idx, *strongest_post(at.state, op, v));
    } else if (auto next = strongest_post(at.state, op)) {
      out.emplace_back(idx, std::move(*next));
    }
  }
  return out;
}

std::vector<value_t> domain_values(const interval & domain)
{
  std::vector<value_t> out;
  for (value_t v = domain.lo; v <= domain.hi; ++v) out.push_back(v);
  return out;
}

namespace {

void extend(const control_flow_automaton & cfa, std::span<const value_t> choices,
            std::size_t max_steps, concrete_path & path, path_enumeration & out)
{
  auto next = successors(cfa, path.back(), choices);
  if (next.empty()) {
    out.paths.push_back(path);
    return;
  }
  if (path.length() >= max_steps) {
    out.truncated = true;
    out.paths.push_back(path);
    return;
  }
  for (auto & [idx, state] : next) {
    path.push(cfa.edges()[idx], std::move(state));
    extend(cfa, choices, max_steps, path, out);
    path.pop();
  }
}

}  // namespace

path_enumeration enumerate_paths(const control_flow_automaton & cfa, const interval & domain,
                                 std::size_t max_steps)
{
  path_enumeration out;
  concrete_path path(cfa.initial());
  std::vector<value_t> choices = domain_values(domain);
  extend(cfa, choices, max_steps, path, out);
  return out;
}

}  // namespace coop
