#pragma once

#include "coop/program.hpp"

namespace coop {

enum class automaton_kind {
  property,
  test_goal,
  violation_witness,
  correctness_witness,
  condition,
  test_case
};

std::string_view kind_name(automaton_kind k);
/// Throws unknown_kind.
automaton_kind parse_kind(std::string_view name);

/// A set of program edges: each component is either fixed or a wildcard.
/// The operation component may also be the input template `chi = input()`,
/// which matches every input edge and binds chi to its target variable.
struct edge_pattern
{
  enum class op_match { any, exact, input_template };

  std::optional<location> source;
  op_match op_kind = op_match::any;
  /// Canonical operation text when op_kind is exact.
  std::string op_text;
  std::optional<location> target;

  static edge_pattern wildcard() { return {}; }
  static edge_pattern exact(location src, const operation & op, location dst)
  {
    return {src, op_match::exact, op.canonical(), dst};
  }
  static edge_pattern input_template() { return {std::nullopt, op_match::input_template, {}, std::nullopt}; }

  bool matches(const cfa_edge & edge) const;
  std::string to_string() const;

  friend bool operator==(const edge_pattern &, const edge_pattern &) = default;
};

struct transition
{
  std::size_t from;
  std::size_t to;
  /// Empty for the `otherwise` transition.
  std::optional<edge_pattern> pattern;
  predicate assume = predicate::truth();

  bool is_otherwise() const { return !pattern.has_value(); }
  friend bool operator==(const transition &, const transition &) = default;
};

struct automaton_state
{
  std::string id;
  predicate invariant = predicate::truth();
  bool final = false;

  friend bool operator==(const automaton_state &, const automaton_state &) = default;
};

/// Artifact automaton (Q, Sigma, delta, q0, Inv, F) tagged with its kind.
/// Construction checks only the structural invariants shared by all kinds;
/// kind-specific constraints live in validate_kind.
class artifact_automaton
{
 public:
  /// Throws invalid_artifact for dangling indices and duplicate_otherwise
  /// when a state has two otherwise transitions.
  artifact_automaton(std::string name, automaton_kind kind, std::vector<automaton_state> states,
                     std::size_t initial, std::vector<transition> transitions);

  const std::string & name() const { return name_; }
  automaton_kind kind() const { return kind_; }
  const std::vector<automaton_state> & states() const { return states_; }
  const automaton_state & state(std::size_t q) const { return states_[q]; }
  std::size_t initial() const { return initial_; }
  const std::vector<transition> & transitions() const { return transitions_; }

  /// Transition indices leaving q, in declaration order.
  const std::vector<std::size_t> & outgoing(std::size_t q) const { return outgoing_[q]; }
  std::optional<std::size_t> otherwise_of(std::size_t q) const { return otherwise_[q]; }
  bool is_final(std::size_t q) const { return states_[q].final; }
  bool has_finals() const;
  std::optional<std::size_t> find_state(std::string_view id) const;

  artifact_automaton with_kind(automaton_kind k) const;

  friend bool operator==(const artifact_automaton & a, const artifact_automaton & b)
  {
    return a.name_ == b.name_ && a.kind_ == b.kind_ && a.states_ == b.states_
           && a.initial_ == b.initial_ && a.transitions_ == b.transitions_;
  }

 private:
  std::string name_;
  automaton_kind kind_;
  std::vector<automaton_state> states_;
  std::size_t initial_;
  std::vector<transition> transitions_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::optional<std::size_t>> otherwise_;
};

/// Reads the `.aut` text format. Throws syntax_error, unknown_kind,
/// duplicate_otherwise.
artifact_automaton parse_automaton(std::string_view source);
std::string serialize_automaton(const artifact_automaton & aut);

}  // namespace coop
