#include "coop/predicate.hpp"

#include "coop/error.hpp"
#include "syntax.hpp"

#include <algorithm>
#include <cassert>

namespace coop {

std::string_view relation_text(relation r)
{
  switch (r) {
    case relation::eq: return "==";
    case relation::ne: return "!=";
    case relation::lt: return "<";
    case relation::le: return "<=";
    case relation::gt: return ">";
    case relation::ge: return ">=";
  }
  return "?";
}

struct predicate::node
{
  kind op;
  relation rel = relation::eq;
  std::optional<expr> left;
  std::optional<expr> right;
  std::optional<predicate> lhs;
  std::optional<predicate> rhs;
};

predicate predicate::truth()
{
  return predicate(std::make_shared<const node>(node{kind::truth, relation::eq, {}, {}, {}, {}}));
}

predicate predicate::falsity()
{
  return predicate(std::make_shared<const node>(node{kind::falsity, relation::eq, {}, {}, {}, {}}));
}

predicate predicate::compare(expr lhs, relation rel, expr rhs)
{
  return predicate(
      std::make_shared<const node>(node{kind::compare, rel, std::move(lhs), std::move(rhs), {}, {}}));
}

predicate predicate::negation(predicate operand)
{
  return predicate(std::make_shared<const node>(
      node{kind::negation, relation::eq, {}, {}, std::move(operand), {}}));
}

predicate predicate::conjunction(predicate lhs, predicate rhs)
{
  return predicate(std::make_shared<const node>(
      node{kind::conjunction, relation::eq, {}, {}, std::move(lhs), std::move(rhs)}));
}

predicate predicate::disjunction(predicate lhs, predicate rhs)
{
  return predicate(std::make_shared<const node>(
      node{kind::disjunction, relation::eq, {}, {}, std::move(lhs), std::move(rhs)}));
}

predicate predicate::any_of(const std::vector<predicate> & items)
{
  if (items.empty()) return falsity();
  predicate out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = disjunction(out, items[i]);
  return out;
}

predicate predicate::all_of(const std::vector<predicate> & items)
{
  if (items.empty()) return truth();
  predicate out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = conjunction(out, items[i]);
  return out;
}

predicate::kind predicate::op() const { return node_->op; }
relation predicate::rel() const { return node_->rel; }
const expr & predicate::left_expr() const { return *node_->left; }
const expr & predicate::right_expr() const { return *node_->right; }
const predicate & predicate::lhs() const { return *node_->lhs; }
const predicate & predicate::rhs() const { return *node_->rhs; }

bool predicate::eval(const data_state & state, std::optional<std::string_view> chi_target) const
{
  switch (op()) {
    case kind::truth: return true;
    case kind::falsity: return false;
    case kind::negation: return !lhs().eval(state, chi_target);
    case kind::conjunction: {
      // Both sides are evaluated so that unbound reads are never masked.
      bool l = lhs().eval(state, chi_target);
      bool r = rhs().eval(state, chi_target);
      return l && r;
    }
    case kind::disjunction: {
      bool l = lhs().eval(state, chi_target);
      bool r = rhs().eval(state, chi_target);
      return l || r;
    }
    case kind::compare: break;
  }
  value_t l = left_expr().eval(state, chi_target);
  value_t r = right_expr().eval(state, chi_target);
  switch (rel()) {
    case relation::eq: return l == r;
    case relation::ne: return l != r;
    case relation::lt: return l < r;
    case relation::le: return l <= r;
    case relation::gt: return l > r;
    case relation::ge: return l >= r;
  }
  return false;
}

void predicate::collect_variables(std::set<std::string> & out) const
{
  switch (op()) {
    case kind::compare:
      left_expr().collect_variables(out);
      right_expr().collect_variables(out);
      break;
    case kind::negation: lhs().collect_variables(out); break;
    case kind::conjunction:
    case kind::disjunction:
      lhs().collect_variables(out);
      rhs().collect_variables(out);
      break;
    default: break;
  }
}

std::set<std::string> predicate::variables() const
{
  std::set<std::string> out;
  collect_variables(out);
  return out;
}

bool predicate::mentions_chi() const
{
  switch (op()) {
    case kind::compare: return left_expr().mentions_chi() || right_expr().mentions_chi();
    case kind::negation: return lhs().mentions_chi();
    case kind::conjunction:
    case kind::disjunction: return lhs().mentions_chi() || rhs().mentions_chi();
    default: return false;
  }
}

int predicate::precedence() const
{
  switch (op()) {
    case kind::disjunction: return 1;
    case kind::conjunction: return 2;
    default: return 3;
  }
}

std::string predicate::to_string() const
{
  switch (op()) {
    case kind::truth: return "true";
    case kind::falsity: return "false";
    case kind::compare:
      return left_expr().to_string() + std::string(relation_text(rel())) + right_expr().to_string();
    case kind::negation: return "!(" + lhs().to_string() + ")";
    default: break;
  }
  const char * sym = op() == kind::conjunction ? "&&" : "||";
  std::string l = lhs().to_string();
  std::string r = rhs().to_string();
  if (lhs().precedence() < precedence()) l = "(" + l + ")";
  if (rhs().precedence() <= precedence()) r = "(" + r + ")";
  return l + sym + r;
}

predicate parse_predicate(std::string_view text)
{
  syntax::parser p(syntax::tokenize(text), /*allow_chi=*/true, /*single_eq=*/true);
  predicate out = p.parse_condition();
  if (!p.at_end()) p.fail("trailing input after condition");
  return out;
}

namespace {

void flatten_disjunction(const predicate & p, std::vector<predicate> & out)
{
  if (p.op() == predicate::kind::disjunction) {
    flatten_disjunction(p.lhs(), out);
    flatten_disjunction(p.rhs(), out);
  } else {
    out.push_back(p);
  }
}

bool syntactic_tautology(const predicate & pred)
{
  std::vector<predicate> parts;
  flatten_disjunction(pred, parts);
  std::set<std::string> texts;
  for (const predicate & d : parts) {
    if (d.is_true()) return true;
    texts.insert(d.to_string());
  }
  for (const predicate & d : parts) {
    if (d.op() == predicate::kind::negation && texts.count(d.lhs().to_string())) return true;
  }
  return false;
}

// Values ordered by distance from zero so that counter-states are small.
std::vector<value_t> ordered_domain(const interval & domain)
{
  std::vector<value_t> values;
  for (value_t v = domain.lo; v <= domain.hi; ++v) values.push_back(v);
  std::stable_sort(values.begin(), values.end(), [](const value_t & a, const value_t & b) {
    value_t aa = abs(a), bb = abs(b);
    return aa != bb ? aa < bb : a < b;
  });
  return values;
}

constexpr std::size_t max_assignments = 1'000'000;

}  // namespace

tautology_result is_tautology_bounded(const predicate & pred,
                                      const std::set<std::string> & variables,
                                      const interval & domain, bool syntactic_shortcut)
{
  using status = tautology_result::status;
  if (pred.mentions_chi()) return {status::inconclusive, std::nullopt};
  if (syntactic_shortcut && syntactic_tautology(pred)) return {status::tautology, std::nullopt, true};

  std::set<std::string> mentioned = pred.variables();
  if (variables.empty() && !mentioned.empty()) return {status::inconclusive, std::nullopt};
  if (domain.empty() && !variables.empty()) return {status::inconclusive, std::nullopt};

  std::vector<value_t> values = ordered_domain(domain);
  std::vector<std::string> names(variables.begin(), variables.end());
  double total = 1;
  for (std::size_t i = 0; i < names.size(); ++i) total *= static_cast<double>(values.size());
  if (total > static_cast<double>(max_assignments)) return {status::inconclusive, std::nullopt};

  std::vector<std::size_t> odometer(names.size(), 0);
  while (true) {
    data_state state;
    for (std::size_t i = 0; i < names.size(); ++i) state = state.with(names[i], values[odometer[i]]);
    try {
      if (!pred.eval(state)) return {status::falsifiable, state};
    } catch (const undefined_variable &) {
      return {status::inconclusive, std::nullopt};
    }
    std::size_t k = 0;
    while (k < odometer.size() && ++odometer[k] == values.size()) odometer[k++] = 0;
    if (k == odometer.size()) break;
  }
  return {status::tautology, std::nullopt};
}

}  // namespace coop
