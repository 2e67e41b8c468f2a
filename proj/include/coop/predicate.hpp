#pragma once

#include "coop/expr.hpp"

#include <variant>
#include <vector>

namespace coop {

enum class relation { eq, ne, lt, le, gt, ge };

std::string_view relation_text(relation r);

/// A state condition: boolean combination of integer comparisons. Used for
/// program branch conditions, automaton assumptions and state invariants.
class predicate
{
 public:
  enum class kind { truth, falsity, compare, negation, conjunction, disjunction };

  static predicate truth();
  static predicate falsity();
  static predicate compare(expr lhs, relation rel, expr rhs);
  static predicate negation(predicate operand);
  static predicate conjunction(predicate lhs, predicate rhs);
  static predicate disjunction(predicate lhs, predicate rhs);

  /// Left-nested disjunction; the empty disjunction is `false`.
  static predicate any_of(const std::vector<predicate> & items);
  /// Left-nested conjunction; the empty conjunction is `true`.
  static predicate all_of(const std::vector<predicate> & items);

  kind op() const;
  relation rel() const;
  const expr & left_expr() const;
  const expr & right_expr() const;
  const predicate & lhs() const;
  const predicate & rhs() const;

  bool is_true() const { return op() == kind::truth; }

  /// Throws undefined_variable for unbound reads and unbound_template when
  /// chi occurs without a binding.
  bool eval(const data_state & state,
            std::optional<std::string_view> chi_target = std::nullopt) const;

  void collect_variables(std::set<std::string> & out) const;
  std::set<std::string> variables() const;
  bool mentions_chi() const;

  std::string to_string() const;

  friend bool operator==(const predicate & a, const predicate & b)
  {
    return a.to_string() == b.to_string();
  }

 private:
  struct node;
  explicit predicate(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  int precedence() const;

  std::shared_ptr<const node> node_;
};

/// Closed integer interval [lo, hi].
struct interval
{
  value_t lo;
  value_t hi;

  bool empty() const { return lo > hi; }
  value_t width() const { return empty() ? value_t(0) : value_t(hi - lo + 1); }
};

struct tautology_result
{
  enum class status { tautology, falsifiable, inconclusive };
  status outcome;
  /// Set for `falsifiable`.
  std::optional<data_state> counter_state;
  /// True when the syntactic complement rule decided the result.
  bool syntactic = false;
};

/// Decides validity of `pred` over all assignments of `variables` drawn from
/// `domain`. Unless `syntactic_shortcut` is off, a disjunction containing
/// `true` or a complementary pair `g`, `!g` is accepted without enumeration.
tautology_result is_tautology_bounded(const predicate & pred,
                                      const std::set<std::string> & variables,
                                      const interval & domain, bool syntactic_shortcut = true);

/// Parses the condition grammar, extended with `chi` and with `=` accepted
/// as equality.
predicate parse_predicate(std::string_view text);

}  // namespace coop
