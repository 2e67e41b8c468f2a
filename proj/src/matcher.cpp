#include "coop/matcher.hpp"

#include <map>

namespace coop {

bool explicit_enabled(const transition & t, const cfa_edge & edge, const data_state & state_after)
{
  if (!t.pattern || !t.pattern->matches(edge)) return false;
  std::optional<std::string_view> chi;
  if (t.pattern->op_kind == edge_pattern::op_match::input_template)
    chi = std::string_view(edge.op.as_input().target);
  return t.assume.eval(state_after, chi);
}

bool otherwise_expansion(const artifact_automaton & aut, std::size_t q, const cfa_edge & edge,
                         const data_state & state_after)
{
  if (aut.kind() == automaton_kind::test_case && edge.op.is_input()) return false;
  for (std::size_t idx : aut.outgoing(q)) {
    const transition & t = aut.transitions()[idx];
    if (!t.is_otherwise() && explicit_enabled(t, edge, state_after)) return false;
  }
  return true;
}

std::vector<std::size_t> fired_transitions(const artifact_automaton & aut, std::size_t q,
                                           const cfa_edge & edge, const data_state & state_after)
{
  std::vector<std::size_t> out;
  bool any_explicit = false;
  for (std::size_t idx : aut.outgoing(q)) {
    const transition & t = aut.transitions()[idx];
    if (t.is_otherwise()) continue;
    if (explicit_enabled(t, edge, state_after)) {
      out.push_back(idx);
      any_explicit = true;
    }
  }
  if (auto ow = aut.otherwise_of(q); ow && !any_explicit) {
    if (!(aut.kind() == automaton_kind::test_case && edge.op.is_input())) out.push_back(*ow);
  }
  return out;
}

std::string goal_label(const artifact_automaton & aut, const goal_id & goal)
{
  if (!goal) return aut.state(aut.initial()).id;
  const transition & t = aut.transitions()[*goal];
  std::size_t incoming = 0;
  for (const transition & other : aut.transitions()) incoming += other.to == t.to ? 1 : 0;
  if (incoming == 1 && t.to != aut.initial()) return aut.state(t.to).id;
  return aut.state(t.to).id + "#" + std::to_string(*goal);
}

run_frontier::run_frontier(const artifact_automaton & aut, const data_state & initial_state)
    : aut_(&aut)
{
  std::size_t q0 = aut.initial();
  if (aut.state(q0).invariant.eval(initial_state)) {
    states_.insert(q0);
    if (aut.is_final(q0)) {
      accepted_ = true;
      goals_.insert(std::nullopt);
    }
  }
}

void run_frontier::advance(const cfa_edge & edge, const data_state & state_after)
{
  std::set<std::size_t> next;
  for (std::size_t q : states_) {
    for (std::size_t idx : fired_transitions(*aut_, q, edge, state_after)) {
      const transition & t = aut_->transitions()[idx];
      if (!aut_->state(t.to).invariant.eval(state_after)) continue;
      next.insert(t.to);
      if (aut_->is_final(t.to)) {
        accepted_ = true;
        goals_.insert(idx);
      }
    }
  }
  states_ = std::move(next);
}

match_verdict match_path(const artifact_automaton & aut, const concrete_path & path)
{
  match_verdict out;
  // layers[i]: state -> (predecessor state, transition) for runs of length i.
  std::vector<std::map<std::size_t, std::optional<std::pair<std::size_t, std::size_t>>>> layers;
  layers.emplace_back();
  std::size_t q0 = aut.initial();
  if (aut.state(q0).invariant.eval(path[0].state)) layers[0][q0] = std::nullopt;
  if (layers[0].empty()) return out;

  std::optional<std::pair<std::size_t, std::size_t>> final_hit;  // (layer, state)
  auto note_final = [&](std::size_t layer) {
    if (final_hit) return;
    for (const auto & [q, pred] : layers[layer])
      if (aut.is_final(q)) {
        final_hit = {layer, q};
        return;
      }
  };
  note_final(0);

  for (std::size_t i = 1; i <= path.length(); ++i) {
    const path_step & step = path[i];
    std::map<std::size_t, std::optional<std::pair<std::size_t, std::size_t>>> next;
    for (const auto & [q, pred] : layers[i - 1]) {
      for (std::size_t idx : fired_transitions(aut, q, *step.incoming, step.state)) {
        const transition & t = aut.transitions()[idx];
        if (!aut.state(t.to).invariant.eval(step.state)) continue;
        next.try_emplace(t.to, std::make_pair(q, idx));
      }
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
    note_final(i);
  }

  out.matched = true;
  out.matched_prefix = layers.size() - 1;
  out.covered = out.matched_prefix == path.length();
  out.accepted = final_hit.has_value();

  std::size_t layer = out.matched_prefix;
  std::size_t q = layers[layer].begin()->first;
  if (final_hit) std::tie(layer, q) = *final_hit;
  std::vector<run_step> run;
  while (true) {
    const auto & pred = layers[layer].at(q);
    if (!pred) {
      run.push_back({q, std::nullopt});
      break;
    }
    run.push_back({q, pred->second});
    q = pred->first;
    --layer;
  }
  out.witnessing_run.assign(run.rbegin(), run.rend());
  return out;
}

}  // namespace coop
