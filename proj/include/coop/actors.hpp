#pragma once

#include "coop/engine.hpp"

namespace coop {

/// Verification result r from {true, false, unknown}.
enum class result { true_, false_, unknown };

std::string_view result_name(result r);

struct residual_location
{
  location original;
  /// Condition states still possible at this point.
  std::vector<std::size_t> condition_states;
  /// Reached after an operation whose condition guard is still to come.
  bool pending_guard = false;
  /// The empty path is already accepted by the condition.
  bool covered = false;
};

struct residual_program
{
  control_flow_automaton cfa;
  /// The program that was reduced.
  control_flow_automaton original;
  std::map<location, residual_location> origin;
  /// Per residual edge: index of the original edge it copies, or empty for
  /// an inserted guard.
  std::vector<std::optional<std::size_t>> edge_origin;

  /// Maps a residual path to the original path it executes. Inserted guards
  /// are dropped; paths ending at a pending or covered location map to
  /// nothing.
  std::optional<concrete_path> project(const concrete_path & residual_path) const;

  /// Rewrites an automaton written for the original program so that it
  /// reads residual paths as their projections: each edge pattern is
  /// replaced by the residual edges copying a matched edge, and every
  /// non-final state stays put on inserted guards. Test-case automata match
  /// input edges anywhere and are returned unchanged.
  artifact_automaton lift(const artifact_automaton & aut) const;
};

struct verdict_bundle
{
  result outcome = result::unknown;
  /// Violation witness when false, correctness witness when true.
  std::optional<artifact_automaton> witness;
  /// Output condition of a conditional verifier.
  std::optional<artifact_automaton> condition;
  /// Program the witness refers to when it is not the input program (the
  /// residual of a conditional verifier).
  std::optional<residual_program> witness_program;
  analysis_config config;
  judgment basis;
  std::string note;
};

/// Verifier: check_fulfills plus witness construction. A false result
/// carries a single-path violation witness, a true result a correctness
/// witness whose invariants summarize the explored states per location.
verdict_bundle verify(const control_flow_automaton & p, const artifact_automaton & prop,
                      const analysis_config & cfg);

/// Conditional verifier built as verify(reduce(p, cond), prop) with the
/// property lifted onto the residual. For programs
/// with one input edge outside any loop, also emits an output condition
/// accepting the inputs whose behavior is now verified.
verdict_bundle conditional_verify(const control_flow_automaton & p, const artifact_automaton & prop,
                                  const artifact_automaton & cond, const analysis_config & cfg);

/// Validator: re-checks a violation or correctness witness and returns the
/// confirmed result with a re-derived witness, or unknown when the witness
/// is not valid.
verdict_bundle validate_result(const control_flow_automaton & p, const artifact_automaton & prop,
                               const artifact_automaton & wit, const analysis_config & cfg);

/// Chain automaton that follows `path` edge by edge, pinning each input
/// value, and ends in its only final state.
artifact_automaton build_violation_witness(const concrete_path & path, std::string name = "violation");

/// Correctness witness with one state per location of `p`. Invariants are
/// pairwise equalities and value bounds that hold in every state seen at
/// the location; unseen locations get `true`.
artifact_automaton build_correctness_witness(const control_flow_automaton & p,
                                             const std::map<location, std::vector<data_state>> & seen,
                                             std::string name = "correctness");

/// Reducer: product of `p` with the determinized condition. Paths the
/// condition accepts are cut off; condition guards become assume edges.
/// The first copy of a location keeps its number, further copies and
/// pending locations are numbered after the largest original location.
residual_program reduce(const control_flow_automaton & p, const artifact_automaton & cond);

/// Reduces a residual again; provenance refers to the first original.
residual_program reduce(const residual_program & r, const artifact_automaton & cond);

/// Test-case extractor: the inputs of the first path accepted by both the
/// witness and the property. Throws no_violating_path.
test_case extract_test(const control_flow_automaton & p, const artifact_automaton & prop,
                       const artifact_automaton & wit, const analysis_config & cfg);

struct execution_report
{
  enum class termination { completed, blocked_no_input, blocked_assume, step_limit };

  concrete_path trace;
  termination status = termination::completed;
  std::size_t inputs_consumed = 0;
  /// Set when a property was given: the trace is accepted by it.
  std::optional<bool> violation_observed;
};

std::string_view termination_name(execution_report::termination t);

/// Test-case executor: runs `p` deterministically on the test inputs (first
/// enabled edge in edge order).
execution_report exec_test(const control_flow_automaton & p, const test_case & test,
                           const artifact_automaton * prop = nullptr, std::size_t max_steps = 500);

struct suite_entry
{
  test_case inputs;
  std::string generator;
  std::vector<std::string> covered_goals;
};

struct test_suite
{
  std::vector<suite_entry> tests;

  /// False when the inputs are already present.
  bool add(suite_entry entry);
};

/// Test generator: keeps, in exploration order, each path input sequence
/// that reaches a goal not reached before.
test_suite generate_tests(const control_flow_automaton & p, const artifact_automaton & goals,
                          const analysis_config & cfg);

/// Parses a `.test` file: one integer per line, `#` comments.
test_case parse_test_case(std::string_view text);
std::string serialize_test_case(const test_case & test);

}  // namespace coop
