#include "coop/actors.hpp"

#include "coop/error.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace coop {

std::string_view result_name(result r)
{
  switch (r) {
    case result::true_: return "true";
    case result::false_: return "false";
    case result::unknown: return "unknown";
  }
  return "?";
}

std::string_view termination_name(execution_report::termination t)
{
  switch (t) {
    case execution_report::termination::completed: return "completed";
    case execution_report::termination::blocked_no_input: return "blocked-no-input";
    case execution_report::termination::blocked_assume: return "blocked-assume";
    case execution_report::termination::step_limit: return "step-limit";
  }
  return "?";
}

artifact_automaton build_violation_witness(const concrete_path & path, std::string name)
{
  std::vector<automaton_state> states;
  std::vector<transition> transitions;
  std::size_t n = path.length();
  for (std::size_t i = 0; i <= n; ++i)
    states.push_back({i == n ? std::string("qe") : "q" + std::to_string(i), predicate::truth(), i == n});
  for (std::size_t i = 1; i <= n; ++i) {
    const cfa_edge & e = *path[i].incoming;
    predicate assume = predicate::truth();
    if (e.op.is_input()) {
      const std::string & x = e.op.as_input().target;
      assume = predicate::compare(expr::variable(x), relation::eq, expr::literal(*path[i].state.find(x)));
    }
    transitions.push_back({i - 1, i, edge_pattern::exact(e.source, e.op, e.target), assume});
  }
  return artifact_automaton(std::move(name), automaton_kind::violation_witness, std::move(states), 0,
                            std::move(transitions));
}

namespace {

predicate summarize(const std::vector<data_state> & seen)
{
  if (seen.empty()) return predicate::truth();
  std::vector<std::string> common;
  for (const auto & [name, value] : seen.front().bindings()) {
    bool everywhere = std::all_of(seen.begin(), seen.end(),
                                  [&](const data_state & s) { return s.bound(name); });
    if (everywhere) common.push_back(name);
  }
  std::vector<predicate> facts;
  for (std::size_t i = 0; i < common.size(); ++i)
    for (std::size_t k = i + 1; k < common.size(); ++k) {
      bool equal = std::all_of(seen.begin(), seen.end(), [&](const data_state & s) {
        return *s.find(common[i]) == *s.find(common[k]);
      });
      if (equal)
        facts.push_back(predicate::compare(expr::variable(common[i]), relation::eq,
                                           expr::variable(common[k])));
    }
  for (const std::string & v : common) {
    value_t lo = *seen.front().find(v);
    value_t hi = lo;
    for (const data_state & s : seen) {
      lo = std::min(lo, *s.find(v));
      hi = std::max(hi, *s.find(v));
    }
    if (lo == hi) {
      facts.push_back(predicate::compare(expr::variable(v), relation::eq, expr::literal(lo)));
    } else {
      facts.push_back(predicate::compare(expr::variable(v), relation::ge, expr::literal(lo)));
      facts.push_back(predicate::compare(expr::variable(v), relation::le, expr::literal(hi)));
    }
  }
  return predicate::all_of(facts);
}

std::map<location, std::vector<data_state>> observe(const control_flow_automaton & p,
                                                    const analysis_config & cfg)
{
  std::map<location, std::vector<data_state>> seen;
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  explore_product(p, {}, choices, cfg.max_steps,
                  [&](const concrete_path & path, std::span<const run_frontier>) {
                    seen[path.back().loc].push_back(path.back().state);
                    return explore_action::descend;
                  });
  return seen;
}

}  // namespace

artifact_automaton build_correctness_witness(const control_flow_automaton & p,
                                             const std::map<location, std::vector<data_state>> & seen,
                                             std::string name)
{
  std::vector<automaton_state> states;
  std::map<location, std::size_t> index;
  for (location l : p.locations()) {
    index[l] = states.size();
    auto it = seen.find(l);
    states.push_back({"q" + std::to_string(l),
                      it == seen.end() ? predicate::truth() : summarize(it->second), false});
  }
  std::vector<transition> transitions;
  for (const cfa_edge & e : p.edges())
    transitions.push_back({index.at(e.source), index.at(e.target),
                           edge_pattern::exact(e.source, e.op, e.target), predicate::truth()});
  return artifact_automaton(std::move(name), automaton_kind::correctness_witness, std::move(states),
                            index.at(p.initial()), std::move(transitions));
}

verdict_bundle verify(const control_flow_automaton & p, const artifact_automaton & prop,
                      const analysis_config & cfg)
{
  verdict_bundle out;
  out.config = cfg;
  out.basis = check_fulfills(p, prop, cfg);
  switch (out.basis.outcome) {
    case verdict::violated: {
      artifact_automaton wit = build_violation_witness(*out.basis.evidence);
      if (check_violation_witness(p, prop, wit, cfg).outcome != verdict::holds)
        throw error("internal: emitted violation witness does not validate");
      out.outcome = result::false_;
      out.witness = std::move(wit);
      out.note = "property violated";
      break;
    }
    case verdict::holds: {
      artifact_automaton wit = build_correctness_witness(p, observe(p, cfg));
      if (check_correctness_witness(p, prop, wit, cfg).outcome != verdict::holds)
        throw error("internal: emitted correctness witness does not validate");
      out.outcome = result::true_;
      out.witness = std::move(wit);
      out.note = "property holds within the configured bounds";
      break;
    }
    case verdict::unknown:
      out.outcome = result::unknown;
      out.note = out.basis.reason;
      break;
  }
  return out;
}

namespace {

bool on_cycle(const control_flow_automaton & p, const cfa_edge & edge)
{
  std::set<location> seen{edge.target};
  std::deque<location> work{edge.target};
  while (!work.empty()) {
    location l = work.front();
    work.pop_front();
    if (l == edge.source) return true;
    for (std::size_t idx : p.outgoing(l))
      if (seen.insert(p.edges()[idx].target).second) work.push_back(p.edges()[idx].target);
  }
  return false;
}

predicate ranges_of(const std::string & var, const std::vector<value_t> & sorted)
{
  std::vector<predicate> parts;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t k = i;
    while (k + 1 < sorted.size() && sorted[k + 1] == sorted[k] + 1) ++k;
    expr x = expr::variable(var);
    if (i == k)
      parts.push_back(predicate::compare(x, relation::eq, expr::literal(sorted[i])));
    else
      parts.push_back(predicate::conjunction(predicate::compare(x, relation::ge, expr::literal(sorted[i])),
                                             predicate::compare(x, relation::le, expr::literal(sorted[k]))));
    i = k + 1;
  }
  return predicate::any_of(parts);
}

}  // namespace

verdict_bundle conditional_verify(const control_flow_automaton & p, const artifact_automaton & prop,
                                  const artifact_automaton & cond, const analysis_config & cfg)
{
  cfg.validate();
  require_kind(prop, automaton_kind::property, p, cfg.input_domain);
  require_kind(cond, automaton_kind::condition, p, cfg.input_domain);
  residual_program residual = reduce(p, cond);
  artifact_automaton lifted = residual.lift(prop);
  verdict_bundle out = verify(residual.cfa, lifted, cfg);
  out.witness_program = residual;

  // Output condition, only for a single input edge outside every loop.
  if (p.input_edge_count() != 1) return out;
  const cfa_edge & input = *std::find_if(p.edges().begin(), p.edges().end(),
                                         [](const cfa_edge & e) { return e.op.is_input(); });
  if (on_cycle(p, input)) return out;

  std::vector<value_t> verified;
  for (const value_t & v : domain_values(cfg.input_domain)) {
    analysis_config one{{v, v}, cfg.max_steps};
    if (check_fulfills(residual.cfa, lifted, one).outcome == verdict::holds) verified.push_back(v);
  }
  std::vector<automaton_state> states = {{"q0", predicate::truth(), false}, {"q1", predicate::truth(), true}};
  std::vector<transition> transitions = {
      {0, 1, edge_pattern::exact(input.source, input.op, input.target),
       ranges_of(input.op.as_input().target, verified)}};
  if (input.source != p.initial()) transitions.push_back({0, 0, std::nullopt, predicate::truth()});
  out.condition = artifact_automaton("verified_inputs", automaton_kind::condition, std::move(states), 0,
                                     std::move(transitions));
  return out;
}

verdict_bundle validate_result(const control_flow_automaton & p, const artifact_automaton & prop,
                               const artifact_automaton & wit, const analysis_config & cfg)
{
  verdict_bundle out;
  out.config = cfg;
  if (wit.kind() == automaton_kind::violation_witness) {
    out.basis = check_violation_witness(p, prop, wit, cfg);
    if (out.basis.outcome == verdict::holds) {
      out.outcome = result::false_;
      out.witness = build_violation_witness(*out.basis.evidence);
      out.note = "violation confirmed";
    } else {
      out.note = out.basis.outcome == verdict::violated ? "unconfirmed: witness yields no violating path"
                                                        : "unconfirmed: " + out.basis.reason;
    }
    return out;
  }
  if (wit.kind() == automaton_kind::correctness_witness) {
    out.basis = check_correctness_witness(p, prop, wit, cfg);
    if (out.basis.outcome == verdict::holds) {
      out.outcome = result::true_;
      out.witness = build_correctness_witness(p, observe(p, cfg));
      out.note = "correctness confirmed";
    } else {
      out.note = "unconfirmed: " + out.basis.reason;
    }
    return out;
  }
  throw invalid_artifact("validator expects a violation or correctness witness, got "
                         + std::string(kind_name(wit.kind())));
}

std::optional<concrete_path> residual_program::project(const concrete_path & residual_path) const
{
  const residual_location & last = origin.at(residual_path.back().loc);
  if (last.pending_guard || last.covered) return std::nullopt;
  concrete_path out(original.initial());
  for (std::size_t i = 1; i <= residual_path.length(); ++i) {
    const cfa_edge & e = *residual_path[i].incoming;
    auto k = std::find(cfa.edges().begin(), cfa.edges().end(), e) - cfa.edges().begin();
    if (auto idx = edge_origin[static_cast<std::size_t>(k)]) out.push(original.edges()[*idx], residual_path[i].state);
  }
  return out;
}

artifact_automaton residual_program::lift(const artifact_automaton & aut) const
{
  if (aut.kind() == automaton_kind::test_case) return aut;
  // States entered on an edge into a pending location wait in a non-final
  // copy until the guard is taken.
  std::size_t n = aut.states().size();
  std::vector<automaton_state> states = aut.states();
  for (std::size_t q = 0; q < n; ++q)
    states.push_back({aut.state(q).id + "_pending", aut.state(q).invariant, false});

  auto pattern_for = [](const cfa_edge & e) {
    if (e.op.is_input()) return edge_pattern{e.source, edge_pattern::op_match::input_template, {}, e.target};
    return edge_pattern::exact(e.source, e.op, e.target);
  };
  std::vector<transition> transitions;
  for (const transition & t : aut.transitions())
    if (t.is_otherwise()) transitions.push_back(t);
  for (std::size_t k = 0; k < cfa.edges().size(); ++k) {
    const cfa_edge & e = cfa.edges()[k];
    if (!edge_origin[k]) {
      for (std::size_t q = 0; q < n; ++q) transitions.push_back({n + q, q, pattern_for(e), predicate::truth()});
      continue;
    }
    const cfa_edge & orig = original.edges()[*edge_origin[k]];
    bool into_pending = origin.at(e.target).pending_guard;
    std::size_t shift = into_pending ? n : 0;
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<predicate> taken;
      for (std::size_t idx : aut.outgoing(q)) {
        const transition & t = aut.transitions()[idx];
        if (t.is_otherwise() || !t.pattern->matches(orig)) continue;
        transitions.push_back({q, t.to + shift, pattern_for(e), t.assume});
        taken.push_back(t.assume);
      }
      auto ow = aut.otherwise_of(q);
      if (into_pending && ow)
        transitions.push_back({q, aut.transitions()[*ow].to + n, pattern_for(e),
                               predicate::negation(predicate::any_of(taken))});
    }
  }
  if (aut.kind() == automaton_kind::property)
    for (std::size_t q = 0; q < n; ++q) transitions.push_back({n + q, n + q, std::nullopt, predicate::truth()});
  return artifact_automaton(aut.name(), aut.kind(), std::move(states), aut.initial(), std::move(transitions));
}

namespace {

constexpr std::size_t max_guards = 12;

struct product_key
{
  location loc;
  std::vector<std::size_t> states;
  bool pending;
  std::size_t via_edge;  // program edge for pending locations

  auto tie() const { return std::tie(loc, states, pending, via_edge); }
  friend bool operator<(const product_key & a, const product_key & b) { return a.tie() < b.tie(); }
};

}  // namespace

residual_program reduce(const control_flow_automaton & p, const artifact_automaton & cond)
{
  if (cond.kind() != automaton_kind::condition)
    throw invalid_artifact("reducer expects a condition automaton, got "
                           + std::string(kind_name(cond.kind())));
  kind_report report = validate_kind(cond, p, interval{0, 0});
  if (!report.ok()) throw invalid_artifact("condition is not kind-valid:\n" + report.to_string());

  std::map<product_key, location> ids;
  std::map<location, residual_location> origin;
  location fresh = *p.locations().rbegin() + 1;
  std::deque<product_key> work;
  std::vector<cfa_edge> edges;
  std::vector<std::optional<std::size_t>> edge_origin;

  auto id_of = [&](const product_key & key) {
    auto it = ids.find(key);
    if (it == ids.end()) {
      location id = !key.pending && !origin.count(key.loc) ? key.loc : fresh++;
      it = ids.emplace(key, id).first;
      origin[it->second] = {key.loc, key.states, key.pending, false};
      work.push_back(key);
    }
    return it->second;
  };

  product_key start{p.initial(), {cond.initial()}, false, 0};
  location root = id_of(start);
  if (cond.is_final(cond.initial())) {
    origin[root].covered = true;
    work.clear();
  }

  while (!work.empty()) {
    product_key key = work.front();
    work.pop_front();
    if (key.pending) continue;
    location here = ids.at(key);
    for (std::size_t gi : p.outgoing(key.loc)) {
      const cfa_edge & g = p.edges()[gi];
      // Explicit transitions matching g, and the distinct non-trivial guards.
      std::vector<std::pair<std::size_t, std::size_t>> matching;  // (state, transition)
      std::vector<predicate> guards;
      for (std::size_t q : key.states)
        for (std::size_t ti : cond.outgoing(q)) {
          const transition & t = cond.transitions()[ti];
          if (t.is_otherwise() || !t.pattern->matches(g)) continue;
          matching.emplace_back(q, ti);
          if (!t.assume.is_true() && std::find(guards.begin(), guards.end(), t.assume) == guards.end())
            guards.push_back(t.assume);
        }
      if (guards.size() > max_guards)
        throw invalid_artifact("condition has too many guards on edge " + g.to_string());

      // Successor condition-state set for every guard valuation.
      std::map<std::vector<std::size_t>, std::vector<predicate>> outcomes;
      for (std::size_t cube = 0; cube < (std::size_t{1} << guards.size()); ++cube) {
        auto holds = [&](const predicate & a) {
          if (a.is_true()) return true;
          auto pos = std::find(guards.begin(), guards.end(), a) - guards.begin();
          return ((cube >> pos) & 1) != 0;
        };
        std::set<std::size_t> next;
        bool accepted = false;
        for (std::size_t q : key.states) {
          bool fired = false;
          for (const auto & [mq, ti] : matching) {
            if (mq != q || !holds(cond.transitions()[ti].assume)) continue;
            fired = true;
            next.insert(cond.transitions()[ti].to);
          }
          if (!fired)
            if (auto ow = cond.otherwise_of(q)) next.insert(cond.transitions()[*ow].to);
        }
        for (std::size_t q : next) accepted = accepted || cond.is_final(q);
        if (accepted) continue;
        std::vector<predicate> literals;
        for (std::size_t k = 0; k < guards.size(); ++k)
          literals.push_back(((cube >> k) & 1) ? guards[k] : predicate::negation(guards[k]));
        outcomes[std::vector<std::size_t>(next.begin(), next.end())].push_back(predicate::all_of(literals));
      }
      if (outcomes.empty()) continue;

      bool unguarded = guards.empty() || (outcomes.size() == 1
                                          && outcomes.begin()->second.size() == (std::size_t{1} << guards.size()));
      if (unguarded) {
        location to = id_of({g.target, outcomes.begin()->first, false, 0});
        edges.push_back({here, g.op, to});
        edge_origin.push_back(gi);
        continue;
      }
      location mid = id_of({g.target, key.states, true, gi});
      edges.push_back({here, g.op, mid});
      edge_origin.push_back(gi);
      for (const auto & [states, cubes] : outcomes) {
        location to = id_of({g.target, states, false, 0});
        edges.push_back({mid, assumption{predicate::any_of(cubes)}, to});
        edge_origin.push_back(std::nullopt);
      }
    }
  }

  std::set<location> locations;
  for (const auto & [key, id] : ids) locations.insert(id);
  residual_program out{control_flow_automaton(std::move(locations), root, std::move(edges)), p,
                       std::move(origin), std::move(edge_origin)};
  try {
    check_definitions(out.cfa);
  } catch (const use_before_def & e) {
    throw invalid_artifact(std::string("condition guard reads an undefined variable: ") + e.what());
  }
  return out;
}

residual_program reduce(const residual_program & r, const artifact_automaton & cond)
{
  residual_program out = reduce(r.cfa, r.lift(cond));
  out.original = r.original;
  for (auto & idx : out.edge_origin)
    if (idx) idx = r.edge_origin[*idx];
  for (auto & [id, loc] : out.origin) {
    const residual_location & before = r.origin.at(loc.original);
    loc.original = before.original;
    loc.pending_guard = loc.pending_guard || before.pending_guard;
    loc.covered = loc.covered || before.covered;
  }
  return out;
}

test_case extract_test(const control_flow_automaton & p, const artifact_automaton & prop,
                       const artifact_automaton & wit, const analysis_config & cfg)
{
  judgment j = check_violation_witness(p, prop, wit, cfg);
  if (j.outcome != verdict::holds) throw no_violating_path();
  return j.evidence->inputs();
}

execution_report exec_test(const control_flow_automaton & p, const test_case & test,
                           const artifact_automaton * prop, std::size_t max_steps)
{
  using termination = execution_report::termination;
  execution_report out{concrete_path(p.initial()), termination::completed, 0, std::nullopt};
  while (true) {
    const path_step & at = out.trace.back();
    const auto & outgoing = p.outgoing(at.loc);
    if (outgoing.empty()) {
      out.status = termination::completed;
      break;
    }
    if (out.trace.length() >= max_steps) {
      out.status = termination::step_limit;
      break;
    }
    bool moved = false;
    bool starved = false;
    for (std::size_t idx : outgoing) {
      const cfa_edge & e = p.edges()[idx];
      std::optional<data_state> next;
      if (e.op.is_input()) {
        if (out.inputs_consumed == test.size()) {
          starved = true;
          continue;
        }
        next = strongest_post(at.state, e.op, test[out.inputs_consumed]);
      } else {
        next = strongest_post(at.state, e.op);
      }
      if (!next) continue;
      if (e.op.is_input()) ++out.inputs_consumed;
      out.trace.push(e, std::move(*next));
      moved = true;
      break;
    }
    if (!moved) {
      out.status = starved ? termination::blocked_no_input : termination::blocked_assume;
      break;
    }
  }
  if (prop) out.violation_observed = match_path(*prop, out.trace).accepted;
  return out;
}

bool test_suite::add(suite_entry entry)
{
  for (const suite_entry & e : tests)
    if (e.inputs == entry.inputs) return false;
  tests.push_back(std::move(entry));
  return true;
}

test_suite generate_tests(const control_flow_automaton & p, const artifact_automaton & goals,
                          const analysis_config & cfg)
{
  cfg.validate();
  require_kind(goals, automaton_kind::test_goal, p, cfg.input_domain);
  test_suite suite;
  std::set<goal_id> reached;
  const artifact_automaton * automata[] = {&goals};
  std::vector<value_t> choices = domain_values(cfg.input_domain);
  explore_product(p, automata, choices, cfg.max_steps,
                  [&](const concrete_path & path, std::span<const run_frontier> f) {
                    if (!f[0].accepted()) return explore_action::descend;
                    bool fresh = std::any_of(f[0].goals().begin(), f[0].goals().end(),
                                             [&](const goal_id & g) { return !reached.count(g); });
                    if (fresh && suite.add({path.inputs(), "generate_tests", {}}))
                      reached.insert(f[0].goals().begin(), f[0].goals().end());
                    return explore_action::descend;
                  });
  for (suite_entry & e : suite.tests) {
    coverage_judgment c = check_test_covers(p, e.inputs, goals, cfg);
    if (c.result.outcome != verdict::holds) throw error("internal: generated test does not cover its goal");
    e.covered_goals = c.goal_labels;
  }
  return suite;
}

test_case parse_test_case(std::string_view text)
{
  test_case out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    std::size_t digits = word[0] == '-' || word[0] == '+' ? 1 : 0;
    if (digits == word.size() || word.find_first_not_of("0123456789", digits) != std::string::npos)
      throw syntax_error(line_no, first + 1, "expected an integer, found '" + word + "'");
    if (word[0] == '+') word.erase(0, 1);
    out.push_back(value_t(word));
  }
  return out;
}

std::string serialize_test_case(const test_case & test)
{
  std::string out;
  for (const value_t & v : test) out += v.str() + "\n";
  return out;
}

}  // namespace coop
