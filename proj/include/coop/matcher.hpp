#pragma once

#include "coop/automaton.hpp"
#include "coop/semantics.hpp"

namespace coop {

/// True iff the explicit transition `t` matches `edge` and its assumption
/// holds in the post-state. chi binds to the target of a matched input edge.
bool explicit_enabled(const transition & t, const cfa_edge & edge, const data_state & state_after);

/// True iff the otherwise transition of `q` may fire: no explicit transition
/// of `q` is enabled. In test-case automata input edges never take it.
bool otherwise_expansion(const artifact_automaton & aut, std::size_t q, const cfa_edge & edge,
                         const data_state & state_after);

/// Transitions of `q` that fire on (edge, state_after), otherwise included.
/// Target invariants are not checked here.
std::vector<std::size_t> fired_transitions(const artifact_automaton & aut, std::size_t q,
                                           const cfa_edge & edge, const data_state & state_after);

/// Identifies a test goal: the transition that entered a final state, or
/// nullopt when the initial state itself is final.
using goal_id = std::optional<std::size_t>;

std::string goal_label(const artifact_automaton & aut, const goal_id & goal);

/// Set of automaton states reachable by some run on the path prefix read so
/// far, plus latched acceptance. Runs that stop early still count for
/// acceptance, so `accepted()` never drops once set.
class run_frontier
{
 public:
  run_frontier(const artifact_automaton & aut, const data_state & initial_state);

  /// Follows one program edge; `state_after` is the post-state c_i.
  void advance(const cfa_edge & edge, const data_state & state_after);

  /// Some run covers the whole prefix.
  bool alive() const { return !states_.empty(); }
  bool accepted() const { return accepted_; }
  const std::set<std::size_t> & states() const { return states_; }
  /// Goals reached by some run so far.
  const std::set<goal_id> & goals() const { return goals_; }
  const artifact_automaton & automaton() const { return *aut_; }

 private:
  const artifact_automaton * aut_;
  std::set<std::size_t> states_;
  bool accepted_ = false;
  std::set<goal_id> goals_;
};

struct run_step
{
  std::size_t state;
  /// Transition taken into `state`; empty for q0.
  std::optional<std::size_t> via;
};

struct match_verdict
{
  /// Longest k for which some run exists; meaningless when !matched.
  std::size_t matched_prefix = 0;
  bool matched = false;
  bool accepted = false;
  bool covered = false;
  /// Ends in a final state when accepted, else spans the whole path when
  /// covered, else the longest run.
  std::vector<run_step> witnessing_run;
};

/// Matching of a concrete path by an artifact automaton: the run set is
/// tracked as a frontier of states per prefix with back-pointers for the
/// witnessing run.
match_verdict match_path(const artifact_automaton & aut, const concrete_path & path);

}  // namespace coop
