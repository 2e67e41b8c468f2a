#pragma once

#include "coop/program.hpp"

#include <span>

namespace coop {

/// Successor of `state` under `op`; nullopt when an assume blocks.
/// `input_choice` must be given exactly for input operations.
/// Throws undefined_variable when the operation reads an unbound variable.
std::optional<data_state> strongest_post(const data_state & state, const operation & op,
                                         const std::optional<value_t> & input_choice = std::nullopt);

struct path_step
{
  data_state state;
  location loc;
  /// Empty for the first step only.
  std::optional<cfa_edge> incoming;

  friend bool operator==(const path_step &, const path_step &) = default;
  friend bool operator<(const path_step & a, const path_step & b)
  {
    if (a.loc != b.loc) return a.loc < b.loc;
    if (a.incoming != b.incoming) return a.incoming < b.incoming;
    return a.state < b.state;
  }
};

/// (c0, l0) -g1-> ... -gn-> (cn, ln), starting from the empty state.
class concrete_path
{
 public:
  explicit concrete_path(location initial) { steps_.push_back({data_state{}, initial, std::nullopt}); }

  /// Number of edges n.
  std::size_t length() const { return steps_.size() - 1; }
  const std::vector<path_step> & steps() const { return steps_; }
  const path_step & operator[](std::size_t i) const { return steps_[i]; }
  const path_step & back() const { return steps_.back(); }

  void push(const cfa_edge & edge, data_state next)
  {
    steps_.push_back({std::move(next), edge.target, edge});
  }
  void pop() { steps_.pop_back(); }

  concrete_path prefix(std::size_t n) const;

  /// Values consumed by input edges, in order.
  std::vector<value_t> inputs() const;

  /// Re-checks the step relation against `cfa` by replaying strongest_post.
  bool replays_on(const control_flow_automaton & cfa) const;

  std::string to_string() const;

  friend bool operator==(const concrete_path &, const concrete_path &) = default;
  friend bool operator<(const concrete_path & a, const concrete_path & b)
  {
    return a.steps_ < b.steps_;
  }

 private:
  std::vector<path_step> steps_;
};

struct path_enumeration
{
  std::vector<concrete_path> paths;
  bool truncated = false;
};

/// All maximal concrete paths with inputs drawn from `domain` and at most
/// `max_steps` edges, in exploration order (edge order, lowest input value
/// first). A path cut at `max_steps` while an edge is still enabled is
/// included and sets `truncated`.
path_enumeration enumerate_paths(const control_flow_automaton & cfa, const interval & domain,
                                 std::size_t max_steps);

/// Enabled successors (edge index, post-state) of a configuration in
/// exploration order: edge order, then input values as given.
std::vector<std::pair<std::size_t, data_state>> successors(const control_flow_automaton & cfa,
                                                           const path_step & at,
                                                           std::span<const value_t> input_choices);

/// The values of `domain` in ascending order.
std::vector<value_t> domain_values(const interval & domain);

}  // namespace coop
