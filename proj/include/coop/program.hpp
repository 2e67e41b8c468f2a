#pragma once

#include "coop/predicate.hpp"

#include <map>
#include <variant>

namespace coop {

using location = int;

struct assignment
{
  std::string target;
  expr value;
};

struct assumption
{
  predicate condition;
};

struct input_call
{
  std::string target;
};

/// One CFA edge label: an assignment, an assume, or a call to `input()`.
class operation
{
 public:
  operation(assignment a) : op_(std::move(a)) {}
  operation(assumption a) : op_(std::move(a)) {}
  operation(input_call a) : op_(std::move(a)) {}

  bool is_assignment() const { return std::holds_alternative<assignment>(op_); }
  bool is_assume() const { return std::holds_alternative<assumption>(op_); }
  bool is_input() const { return std::holds_alternative<input_call>(op_); }

  const assignment & as_assignment() const { return std::get<assignment>(op_); }
  const assumption & as_assume() const { return std::get<assumption>(op_); }
  const input_call & as_input() const { return std::get<input_call>(op_); }

  /// Variable written by the operation, if any.
  std::optional<std::string> written() const;
  std::set<std::string> read() const;

  /// Whitespace-free normal form used for edge-pattern matching:
  /// `a=a+1`, `!(a<x)`, `x=input()`.
  std::string canonical() const;

  friend bool operator==(const operation & a, const operation & b)
  {
    return a.canonical() == b.canonical();
  }

 private:
  std::variant<assignment, assumption, input_call> op_;
};

/// Parses a single operation as written in automaton edge patterns or CFA
/// listings: `int a=0`, `a++`, `x = input()`, `!(a<x)`.
operation parse_operation(std::string_view text);

struct cfa_edge
{
  location source;
  operation op;
  location target;

  std::string to_string() const;
  friend bool operator==(const cfa_edge &, const cfa_edge &) = default;
  friend bool operator<(const cfa_edge & a, const cfa_edge & b)
  {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.op.canonical() < b.op.canonical();
  }
};

/// A program as control-flow automaton (locations, initial location, edges).
/// Immutable after construction.
class control_flow_automaton
{
 public:
  /// Throws invalid_artifact when the initial location or an edge endpoint
  /// is not a location, or an edge is duplicated.
  control_flow_automaton(std::set<location> locations, location initial,
                         std::vector<cfa_edge> edges);

  const std::set<location> & locations() const { return locations_; }
  location initial() const { return initial_; }
  const std::vector<cfa_edge> & edges() const { return edges_; }
  const std::set<std::string> & variables() const { return variables_; }

  /// Indices into edges(), in edge order.
  const std::vector<std::size_t> & outgoing(location l) const;
  bool is_sink(location l) const { return outgoing(l).empty(); }
  std::size_t input_edge_count() const;

  /// Line-oriented listing that parse_cfa_listing reads back.
  std::string to_listing() const;

  friend bool operator==(const control_flow_automaton & a, const control_flow_automaton & b)
  {
    return a.locations_ == b.locations_ && a.initial_ == b.initial_ && a.edges_ == b.edges_;
  }

 private:
  std::set<location> locations_;
  location initial_;
  std::vector<cfa_edge> edges_;
  std::set<std::string> variables_;
  std::map<location, std::vector<std::size_t>> outgoing_;
};

/// Forward must-analysis: every read is preceded by a write on every
/// syntactic path. Throws use_before_def with the first offending read.
void check_definitions(const control_flow_automaton & cfa);

/// Parses `.imp` source text. Statements may carry explicit `N:` location
/// labels; unlabeled program points are numbered in source order after the
/// largest label. A trailing label names the exit location.
control_flow_automaton parse_program(std::string_view source);

/// Parses the listing produced by control_flow_automaton::to_listing.
control_flow_automaton parse_cfa_listing(std::string_view source);

/// Dispatches on content: listings start with the word `cfa`.
control_flow_automaton parse_program_text(std::string_view source);

}  // namespace coop
