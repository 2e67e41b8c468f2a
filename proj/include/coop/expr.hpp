#pragma once

#include "coop/state.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace coop {

/// Immutable integer expression over variables, literals and the template
/// variable chi. Nodes are shared, so copies are cheap.
class expr
{
 public:
  enum class kind { literal, variable, chi, negate, add, sub, mul };

  static expr literal(value_t value);
  static expr variable(std::string name);
  static expr chi();
  static expr negate(expr operand);
  static expr binary(kind op, expr lhs, expr rhs);

  kind op() const;
  const value_t & value() const;
  const std::string & name() const;
  const expr & lhs() const;
  const expr & rhs() const;

  /// Evaluates under `state`; chi resolves to the variable named by `chi_target`.
  value_t eval(const data_state & state,
               std::optional<std::string_view> chi_target = std::nullopt) const;

  void collect_variables(std::set<std::string> & out) const;
  bool mentions_chi() const;

  /// Whitespace-free text with minimal parentheses; parsing it yields the
  /// same tree.
  std::string to_string() const;

  friend bool operator==(const expr & a, const expr & b) { return a.to_string() == b.to_string(); }

 private:
  struct node;
  explicit expr(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  int precedence() const;

  std::shared_ptr<const node> node_;
};

}  // namespace coop
