#include "coop/oracle.hpp"

#include "coop/error.hpp"

namespace coop {

namespace {

constexpr std::size_t step_budget = 1'000'000;

bool step_enabled(const artifact_automaton & aut, const transition & t, const cfa_edge & edge,
                  const data_state & after, std::size_t q)
{
  if (t.is_otherwise()) return otherwise_expansion(aut, q, edge, after);
  if (!t.pattern->matches(edge)) return false;
  if (t.pattern->op_kind == edge_pattern::op_match::input_template)
    return t.assume.eval(after, edge.op.as_input().target);
  return t.assume.eval(after);
}

void runs(const artifact_automaton & aut, const concrete_path & path, std::size_t i, std::size_t q,
          naive_match & out)
{
  if (!aut.state(q).invariant.eval(path[i].state)) return;
  if (aut.is_final(q)) out.accepts = true;
  if (i == path.length()) {
    out.covers = true;
    return;
  }
  const path_step & next = path[i + 1];
  for (const transition & t : aut.transitions()) {
    if (t.from != q) continue;
    if (step_enabled(aut, t, *next.incoming, next.state, q)) runs(aut, path, i + 1, t.to, out);
    if (out.accepts && out.covers) return;
  }
}

struct enumerator
{
  const control_flow_automaton & p;
  const analysis_config & cfg;
  std::vector<concrete_path> maximal;
  std::vector<concrete_path> truncated;
  std::size_t steps = 0;

  void go(concrete_path & path)
  {
    bool any = false;
    for (const cfa_edge & e : p.edges()) {
      if (e.source != path.back().loc) continue;
      std::vector<std::optional<data_state>> posts;
      if (e.op.is_input()) {
        for (value_t v = cfg.input_domain.lo; v <= cfg.input_domain.hi; ++v)
          posts.push_back(strongest_post(path.back().state, e.op, v));
      } else {
        posts.push_back(strongest_post(path.back().state, e.op));
      }
      for (auto & post : posts) {
        if (!post) continue;
        any = true;
        if (path.length() == cfg.max_steps) break;
        if (++steps > step_budget) throw oracle_budget_exceeded();
        path.push(e, std::move(*post));
        go(path);
        path.pop();
      }
    }
    if (!any) {
      maximal.push_back(path);
    } else if (path.length() == cfg.max_steps) {
      maximal.push_back(path);
      truncated.push_back(path);
    }
  }
};

}  // namespace

naive_match naive_match_path(const artifact_automaton & aut, const concrete_path & path)
{
  naive_match out;
  runs(aut, path, 0, aut.initial(), out);
  return out;
}

oracle_result brute_force_oracle(const control_flow_automaton & p,
                                 const std::vector<std::pair<const artifact_automaton *, match_mode>> & automata,
                                 const analysis_config & cfg)
{
  cfg.validate();
  enumerator en{p, cfg, {}, {}, 0};
  concrete_path root(p.initial());
  en.go(root);

  oracle_result out;
  out.truncated = en.truncated;
  std::set<concrete_path> prefixes;
  for (const concrete_path & m : en.maximal)
    for (std::size_t n = 0; n <= m.length(); ++n) prefixes.insert(m.prefix(n));
  for (const concrete_path & path : prefixes) {
    bool all = true;
    for (const auto & [aut, mode] : automata) {
      naive_match r = naive_match_path(*aut, path);
      if ((mode == match_mode::accept && !r.accepts) || (mode == match_mode::cover && !r.covers)) {
        all = false;
        break;
      }
    }
    if (all) out.paths.insert(path);
  }
  return out;
}

}  // namespace coop
