#pragma once

#include "coop/kinds.hpp"
#include "coop/matcher.hpp"

#include <functional>
#include <json.hpp>

namespace coop {

/// Bounds that make path sets finite: inputs range over `input_domain`,
/// paths have at most `max_steps` edges. Every verdict is relative to them.
struct analysis_config
{
  interval input_domain{-8, 8};
  std::size_t max_steps = 500;

  /// Throws invalid_artifact for an empty domain or zero steps.
  void validate() const;
};

enum class verdict { holds, violated, unknown };

std::string_view verdict_name(verdict v);

struct judgment
{
  verdict outcome = verdict::unknown;
  /// Violating path for universal judgments, witnessing path for
  /// existential ones.
  std::optional<concrete_path> evidence;
  /// No explored path was cut at max_steps.
  bool exhausted = false;
  analysis_config config;
  std::string reason;
};

enum class explore_action { descend, prune, stop };

struct exploration_stats
{
  bool truncated = false;
  bool stopped = false;
  std::size_t nodes = 0;
};

using product_visitor =
    std::function<explore_action(const concrete_path &, std::span<const run_frontier>)>;

/// Depth-first synchronous product of program semantics and the given
/// automata. `visit` sees every path prefix (node) with one frontier per
/// automaton, in deterministic order: edge order, then ascending inputs.
exploration_stats explore_product(const control_flow_automaton & program,
                                  std::span<const artifact_automaton * const> automata,
                                  std::span<const value_t> input_choices, std::size_t max_steps,
                                  const product_visitor & visit);

/// paths(p) and L(prop) are disjoint.
judgment check_fulfills(const control_flow_automaton & p, const artifact_automaton & prop,
                        const analysis_config & cfg);

/// paths(p) is a subset of paths(wit) and disjoint from L(prop).
judgment check_correctness_witness(const control_flow_automaton & p,
                                   const artifact_automaton & prop,
                                   const artifact_automaton & wit, const analysis_config & cfg);

/// Some path is accepted by both wit and prop. Prefixes on which the
/// witness has no run left are not explored further.
judgment check_violation_witness(const control_flow_automaton & p,
                                 const artifact_automaton & prop,
                                 const artifact_automaton & wit, const analysis_config & cfg);

/// No path is accepted by both cond and prop.
judgment check_condition_correct(const control_flow_automaton & p,
                                 const artifact_automaton & prop,
                                 const artifact_automaton & cond, const analysis_config & cfg);

struct coverage_judgment
{
  judgment result;
  std::set<goal_id> goals;
  std::vector<std::string> goal_labels;
};

/// Some path covered by the test's automaton is accepted by `goals`; also
/// collects every goal reached on such paths. Input choices are the domain
/// plus the test's own values.
coverage_judgment check_test_covers(const control_flow_automaton & p, const test_case & test,
                                    const artifact_automaton & goals, const analysis_config & cfg);

std::string to_text(const judgment & j);
nlohmann::json to_json(const judgment & j);
nlohmann::json to_json(const analysis_config & cfg);
nlohmann::json to_json(const concrete_path & path);
nlohmann::json value_to_json(const value_t & v);

}  // namespace coop
