#pragma once

#include "coop/automaton.hpp"

namespace coop {

struct kind_violation
{
  /// Short id of the broken constraint, e.g. "trivial-invariants".
  std::string constraint;
  /// State id or transition description the finding is about.
  std::string where;
  std::string message;
};

struct non_blocking_status
{
  enum class outcome { proved, bounded_proved, refuted, not_applicable };
  outcome status = outcome::not_applicable;
  /// Set when refuted.
  std::string state;
  std::optional<cfa_edge> edge;
  std::optional<data_state> counter_state;

  std::string to_string() const;
};

struct kind_report
{
  automaton_kind kind;
  std::vector<kind_violation> violations;
  non_blocking_status non_blocking;
  /// Violation witnesses only: the automaton is a single chain ending in a
  /// final state (a counterexample).
  bool single_path = false;

  bool ok() const
  {
    return violations.empty() && non_blocking.status != non_blocking_status::outcome::refuted;
  }
  std::string to_string() const;
};

/// Checks the structural constraints of the automaton's declared kind.
/// `program` resolves edge patterns for the property non-blocking check;
/// `domain` bounds the tautology check.
kind_report validate_kind(const artifact_automaton & aut, const control_flow_automaton & program,
                          const interval & domain);

/// Throws invalid_artifact unless `aut` has kind `expected` and validates.
void require_kind(const artifact_automaton & aut, automaton_kind expected,
                  const control_flow_automaton & program, const interval & domain);

using test_case = std::vector<value_t>;

/// Chain q0..qn consuming one input per step (chi = z_{i+1}), with an
/// otherwise self-loop on every state and no final states.
artifact_automaton build_test_case_automaton(const test_case & test);

}  // namespace coop
