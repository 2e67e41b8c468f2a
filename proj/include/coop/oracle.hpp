#pragma once

#include "coop/engine.hpp"

namespace coop {

enum class match_mode { accept, cover };

struct oracle_result
{
  /// Every path (prefixes included) satisfying all modes.
  std::set<concrete_path> paths;
  /// Maximal paths cut at max_steps.
  std::vector<concrete_path> truncated;
};

/// Independent reference for the product engine: plain recursive path
/// enumeration, and for every prefix a naive enumeration of all automaton
/// runs. Throws oracle_budget_exceeded beyond one million path steps.
oracle_result brute_force_oracle(const control_flow_automaton & p,
                                 const std::vector<std::pair<const artifact_automaton *, match_mode>> & automata,
                                 const analysis_config & cfg);

struct naive_match
{
  bool accepts = false;
  bool covers = false;
};

/// Naive run enumeration over one path, straight from the matching
/// definition.
naive_match naive_match_path(const artifact_automaton & aut, const concrete_path & path);

}  // namespace coop
