#include "coop/expr.hpp"

#include "coop/error.hpp"

#include <cassert>

namespace coop {

struct expr::node
{
  kind op;
  value_t value;
  std::string name;
  std::optional<expr> lhs;
  std::optional<expr> rhs;
};

expr expr::literal(value_t value)
{
  return expr(std::make_shared<const node>(node{kind::literal, std::move(value), {}, {}, {}}));
}

expr expr::variable(std::string name)
{
  return expr(std::make_shared<const node>(node{kind::variable, 0, std::move(name), {}, {}}));
}

expr expr::chi()
{
  return expr(std::make_shared<const node>(node{kind::chi, 0, {}, {}, {}}));
}

expr expr::negate(expr operand)
{
  return expr(std::make_shared<const node>(node{kind::negate, 0, {}, std::move(operand), {}}));
}

expr expr::binary(kind op, expr lhs, expr rhs)
{
  assert(op == kind::add || op == kind::sub || op == kind::mul);
  return expr(std::make_shared<const node>(node{op, 0, {}, std::move(lhs), std::move(rhs)}));
}

expr::kind expr::op() const { return node_->op; }
const value_t & expr::value() const { return node_->value; }
const std::string & expr::name() const { return node_->name; }
const expr & expr::lhs() const { return *node_->lhs; }
const expr & expr::rhs() const { return *node_->rhs; }

value_t expr::eval(const data_state & state, std::optional<std::string_view> chi_target) const
{
  switch (op()) {
    case kind::literal: return value();
    case kind::variable: {
      const value_t * v = state.find(name());
      if (!v) throw undefined_variable(name());
      return *v;
    }
    case kind::chi: {
      if (!chi_target) throw unbound_template();
      const std::string target(*chi_target);
      const value_t * v = state.find(target);
      if (!v) throw undefined_variable(target);
      return *v;
    }
    case kind::negate: return -lhs().eval(state, chi_target);
    case kind::add: return lhs().eval(state, chi_target) + rhs().eval(state, chi_target);
    case kind::sub: return lhs().eval(state, chi_target) - rhs().eval(state, chi_target);
    case kind::mul: return lhs().eval(state, chi_target) * rhs().eval(state, chi_target);
  }
  return 0;
}

void expr::collect_variables(std::set<std::string> & out) const
{
  switch (op()) {
    case kind::variable: out.insert(name()); break;
    case kind::negate: lhs().collect_variables(out); break;
    case kind::add:
    case kind::sub:
    case kind::mul:
      lhs().collect_variables(out);
      rhs().collect_variables(out);
      break;
    default: break;
  }
}

bool expr::mentions_chi() const
{
  switch (op()) {
    case kind::chi: return true;
    case kind::negate: return lhs().mentions_chi();
    case kind::add:
    case kind::sub:
    case kind::mul: return lhs().mentions_chi() || rhs().mentions_chi();
    default: return false;
  }
}

int expr::precedence() const
{
  switch (op()) {
    case kind::add:
    case kind::sub: return 1;
    case kind::mul: return 2;
    case kind::negate: return 3;
    default: return 4;
  }
}

std::string expr::to_string() const
{
  switch (op()) {
    case kind::literal: return value().str();
    case kind::variable: return name();
    case kind::chi: return "chi";
    case kind::negate: {
      // `-4` would re-parse as a literal, so non-negative literals keep parens.
      const expr & x = lhs();
      bool parens = x.precedence() < 3 || (x.op() == kind::literal && x.value() >= 0);
      return parens ? "-(" + x.to_string() + ")" : "-" + x.to_string();
    }
    default: break;
  }
  const char * sym = op() == kind::add ? "+" : op() == kind::sub ? "-" : "*";
  std::string l = lhs().to_string();
  std::string r = rhs().to_string();
  if (lhs().precedence() < precedence()) l = "(" + l + ")";
  if (rhs().precedence() <= precedence()) r = "(" + r + ")";
  return l + sym + r;
}

}  // namespace coop
