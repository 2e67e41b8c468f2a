#include "coop/engine.hpp"

#include "coop/error.hpp"

#include <algorithm>
#include <sstream>

namespace coop {

void analysis_config::validate() const
{
  if (input_domain.empty()) throw invalid_artifact("input domain is empty");
  if (max_steps < 1) throw invalid_artifact("max_steps must be at least 1");
}

std::string_view verdict_name(verdict v)
{
  switch (v) {
    case verdict::holds: return "holds";
    case verdict::violated: return "violated";
    case verdict::unknown: return "unknown";
  }
  return "?";
}

namespace {

struct explorer
{
  const control_flow_automaton & program;
  std::span<const value_t> choices;
  std::size_t max_steps;
  const product_visitor & visit;
  exploration_stats stats;

  bool dfs(concrete_path & path, std::vector<run_frontier> & frontiers)
  {
    ++stats.nodes;
    switch (visit(path, frontiers)) {
      case explore_action::stop: stats.stopped = true; return false;
      case explore_action::prune: return true;
      case explore_action::descend: break;
    }
    auto next = successors(program, path.back(), choices);
    if (next.empty()) return true;
    if (path.length() >= max_steps) {
      stats.truncated = true;
      return true;
    }
    for (auto & [idx, state] : next) {
      const cfa_edge & edge = program.edges()[idx];
      std::vector<run_frontier> advanced = frontiers;
      for (run_frontier & f : advanced) f.advance(edge, state);
      path.push(edge, std::move(state));
      bool go_on = dfs(path, advanced);
      path.pop();
      if (!go_on) return false;
    }
    return true;
  }
};

judgment finish_universal(const exploration_stats & stats, judgment j, const char * holds_reason)
{
  j.exhausted = !stats.truncated;
  if (j.evidence) {
    j.outcome = verdict::violated;
  } else if (stats.truncated) {
    j.outcome = verdict::unknown;
    j.reason = "exploration truncated at max_steps";
  } else {
    j.outcome = verdict::holds;
    j.reason = holds_reason;
  }
  return j;
}

judgment finish_existential(const exploration_stats & stats, judgment j, const char * none_reason)
{
  j.exhausted = !stats.truncated;
  if (j.evidence) {
    j.outcome = verdict::holds;
  } else if (stats.truncated) {
    j.outcome = verdict::unknown;
    j.reason = "no path found before truncation at max_steps";
  } else {
    j.outcome = verdict::violated;
    j.reason = none_reason;
  }
  return j;
}

}  // namespace

exploration_stats explore_product(const control_flow_automaton & program,
                                  std::span<const artifact_automaton * const> automata,
                                  std::span<const value_t> input_choices, std::size_t max_steps,
                                  const product_visitor & visit)
{
  explorer ex{program, input_choices, max_steps, visit, {}};
  concrete_path path(program.initial());
  std::vector<run_frontier> frontiers;
  for (const artifact_automaton * a : automata) frontiers.emplace_back(*a, path[0].state);
  ex.dfs(path, frontiers);
  return ex.stats;
}

judgment check_fulfills(const control_flow_automaton & p, const artifact_automaton & prop,
                        const analysis_config & cfg)
{
  cfg.validate();
  require_kind(prop, automaton_kind::property, p, cfg.input_domain);
  judgment j;
  j.config = cfg;
  const artifact_automaton * automata[] = {&prop};
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  auto stats = explore_product(p, automata, choices, cfg.max_steps,
                               [&](const concrete_path & path, std::span<const run_frontier> f) {
                                 if (!f[0].accepted()) return explore_action::descend;
                                 j.evidence = path;
                                 j.reason = "path accepted by the property automaton";
                                 return explore_action::stop;
                               });
  return finish_universal(stats, std::move(j), "no explored path reaches a property violation");
}

judgment check_correctness_witness(const control_flow_automaton & p,
                                   const artifact_automaton & prop,
                                   const artifact_automaton & wit, const analysis_config & cfg)
{
  cfg.validate();
  require_kind(prop, automaton_kind::property, p, cfg.input_domain);
  require_kind(wit, automaton_kind::correctness_witness, p, cfg.input_domain);
  judgment j;
  j.config = cfg;
  const artifact_automaton * automata[] = {&prop, &wit};
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  auto stats = explore_product(p, automata, choices, cfg.max_steps,
                               [&](const concrete_path & path, std::span<const run_frontier> f) {
                                 if (!f[1].alive()) {
                                   j.evidence = path;
                                   j.reason = "path not covered by the correctness witness";
                                   return explore_action::stop;
                                 }
                                 if (f[0].accepted()) {
                                   j.evidence = path;
                                   j.reason = "path accepted by the property automaton";
                                   return explore_action::stop;
                                 }
                                 return explore_action::descend;
                               });
  return finish_universal(stats, std::move(j),
                          "witness covers every explored path and no path violates the property");
}

judgment check_violation_witness(const control_flow_automaton & p,
                                 const artifact_automaton & prop,
                                 const artifact_automaton & wit, const analysis_config & cfg)
{
  cfg.validate();
  require_kind(prop, automaton_kind::property, p, cfg.input_domain);
  require_kind(wit, automaton_kind::violation_witness, p, cfg.input_domain);
  judgment j;
  j.config = cfg;
  const artifact_automaton * automata[] = {&prop, &wit};
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  auto stats = explore_product(p, automata, choices, cfg.max_steps,
                               [&](const concrete_path & path, std::span<const run_frontier> f) {
                                 if (f[0].accepted() && f[1].accepted()) {
                                   j.evidence = path;
                                   j.reason = "path accepted by witness and property";
                                   return explore_action::stop;
                                 }
                                 if (!f[1].alive() && !f[1].accepted()) return explore_action::prune;
                                 return explore_action::descend;
                               });
  return finish_existential(stats, std::move(j),
                            "no path is accepted by both the witness and the property");
}

judgment check_condition_correct(const control_flow_automaton & p,
                                 const artifact_automaton & prop,
                                 const artifact_automaton & cond, const analysis_config & cfg)
{
  cfg.validate();
  require_kind(prop, automaton_kind::property, p, cfg.input_domain);
  require_kind(cond, automaton_kind::condition, p, cfg.input_domain);
  judgment j;
  j.config = cfg;
  const artifact_automaton * automata[] = {&prop, &cond};
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  auto stats = explore_product(p, automata, choices, cfg.max_steps,
                               [&](const concrete_path & path, std::span<const run_frontier> f) {
                                 if (f[0].accepted() && f[1].accepted()) {
                                   j.evidence = path;
                                   j.reason = "path accepted by the condition violates the property";
                                   return explore_action::stop;
                                 }
                                 return explore_action::descend;
                               });
  return finish_universal(stats, std::move(j),
                          "every explored path accepted by the condition fulfills the property");
}

coverage_judgment check_test_covers(const control_flow_automaton & p, const test_case & test,
                                    const artifact_automaton & goals, const analysis_config & cfg)
{
  cfg.validate();
  require_kind(goals, automaton_kind::test_goal, p, cfg.input_domain);
  artifact_automaton tc = build_test_case_automaton(test);
  coverage_judgment out;
  judgment & j = out.result;
  j.config = cfg;
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  for (const value_t & v : test)
    if (std::find(choices.begin(), choices.end(), v) == choices.end()) choices.push_back(v);
  std::sort(choices.begin(), choices.end());

  const artifact_automaton * automata[] = {&tc, &goals};
  auto stats = explore_product(p, automata, choices, cfg.max_steps,
                               [&](const concrete_path & path, std::span<const run_frontier> f) {
                                 if (!f[0].alive()) return explore_action::prune;
                                 if (f[1].accepted()) {
                                   if (!j.evidence) j.evidence = path;
                                   out.goals.insert(f[1].goals().begin(), f[1].goals().end());
                                 }
                                 return explore_action::descend;
                               });
  for (const goal_id & g : out.goals) out.goal_labels.push_back(goal_label(goals, g));
  j = finish_existential(stats, std::move(j), "no path of the test reaches a goal");
  if (j.outcome == verdict::holds) j.reason = "test reaches " + std::to_string(out.goals.size()) + " goal(s)";
  return out;
}

nlohmann::json value_to_json(const value_t & v)
{
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

nlohmann::json to_json(const analysis_config & cfg)
{
  return {{"input_min", value_to_json(cfg.input_domain.lo)},
          {"input_max", value_to_json(cfg.input_domain.hi)},
          {"max_steps", cfg.max_steps}};
}

nlohmann::json to_json(const concrete_path & path)
{
  nlohmann::json steps = nlohmann::json::array();
  for (const path_step & s : path.steps()) {
    nlohmann::json state = nlohmann::json::object();
    for (const auto & [name, value] : s.state.bindings()) state[name] = value_to_json(value);
    steps.push_back({{"location", s.loc},
                     {"op", s.incoming ? nlohmann::json(s.incoming->op.canonical()) : nlohmann::json()},
                     {"state", state}});
  }
  return steps;
}

nlohmann::json to_json(const judgment & j)
{
  nlohmann::json out = {{"verdict", verdict_name(j.outcome)},
                        {"exhausted", j.exhausted},
                        {"config", to_json(j.config)},
                        {"reason", j.reason}};
  out["evidence"] = j.evidence ? to_json(*j.evidence) : nlohmann::json();
  return out;
}

std::string to_text(const judgment & j)
{
  std::ostringstream out;
  out << "verdict: " << verdict_name(j.outcome) << '\n'
      << "exhausted: " << (j.exhausted ? "yes" : "no") << '\n'
      << "config: inputs [" << j.config.input_domain.lo << ", " << j.config.input_domain.hi
      << "], max-steps " << j.config.max_steps << '\n';
  if (!j.reason.empty()) out << "reason: " << j.reason << '\n';
  if (j.evidence) {
    out << "evidence:\n";
    for (const path_step & s : j.evidence->steps())
      out << "  " << s.loc << "  " << (s.incoming ? s.incoming->op.canonical() : std::string("-"))
          << "  " << s.state.to_string() << '\n';
  }
  return out.str();
}

}  // namespace coop
