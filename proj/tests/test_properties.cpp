#include "corpus.hpp"
#include "oracle_checks.hpp"
#include "random_gen.hpp"

#include "coop/error.hpp"
#include "coop/oracle.hpp"

#include <doctest.h>

using namespace coop;
using namespace coop::testing;

namespace {

constexpr std::uint32_t seeds = 200;

bool kind_ok(const artifact_automaton & aut, const control_flow_automaton & p, const analysis_config & cfg)
{
  return validate_kind(aut, p, cfg.input_domain).ok();
}

analysis_config random_config(generator & g)
{
  return config(-g.pick(1, 2), g.pick(1, 2), g.chance(0.25) ? static_cast<std::size_t>(g.pick(3, 8)) : 60);
}

predicate random_predicate(generator & g, int depth)
{
  const char * names[] = {"x", "y"};
  auto operand = [&] {
    switch (g.pick(0, 3)) {
      case 0: return expr::literal(g.pick(-3, 3));
      case 1: return expr::binary(g.chance(0.5) ? expr::kind::add : expr::kind::sub, expr::variable(names[g.pick(0, 1)]),
                                  expr::literal(g.pick(-2, 2)));
      default: return expr::variable(names[g.pick(0, 1)]);
    }
  };
  if (depth == 0 || g.chance(0.3)) {
    if (g.chance(0.05)) return g.chance(0.5) ? predicate::truth() : predicate::falsity();
    return predicate::compare(operand(), static_cast<relation>(g.pick(0, 5)), operand());
  }
  switch (g.pick(0, 2)) {
    case 0: return predicate::negation(random_predicate(g, depth - 1));
    case 1: return predicate::conjunction(random_predicate(g, depth - 1), random_predicate(g, depth - 1));
    default: return predicate::disjunction(random_predicate(g, depth - 1), random_predicate(g, depth - 1));
  }
}

std::vector<data_state> all_states(int lo, int hi)
{
  std::vector<data_state> out;
  for (int x = lo; x <= hi; ++x)
    for (int y = lo; y <= hi; ++y) out.push_back({{"x", x}, {"y", y}});
  return out;
}

}  // namespace

TEST_CASE("generation is deterministic per seed")
{
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    generator a(seed), b(seed);
    CHECK(a.program_source() == b.program_source());
    control_flow_automaton p = a.program();
    CHECK(p == b.program());
    CHECK(a.property(p) == b.property(p));
  }
}

TEST_CASE("explored paths are sound and maximal")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = random_config(g);
    CAPTURE(p.to_listing());
    path_enumeration en = enumerate_paths(p, cfg.input_domain, cfg.max_steps);
    oracle_result all = brute_force_oracle(p, {}, cfg);
    CHECK(en.truncated == !all.truncated.empty());
    std::vector<value_t> choices = domain_values(cfg.input_domain);
    std::set<concrete_path> prefixes;
    for (const concrete_path & path : en.paths) {
      CHECK(path.replays_on(p));
      bool cut = path.length() == cfg.max_steps;
      CHECK((cut || successors(p, path.back(), choices).empty()));
      for (std::size_t n = 0; n <= path.length(); ++n) prefixes.insert(path.prefix(n));
    }
    CHECK(prefixes == all.paths);
  }
}

TEST_CASE("branch conditions partition the states")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 60);
    std::vector<value_t> choices = domain_values(cfg.input_domain);
    for (const concrete_path & path : brute_force_oracle(p, {}, cfg).paths) {
      bool branching = false;
      for (const cfa_edge & e : p.edges())
        if (e.source == path.back().loc && e.op.is_assume()) branching = true;
      if (!branching) continue;
      CHECK(successors(p, path.back(), choices).size() == 1);
    }
  }
}

TEST_CASE("predicates print, parse and decide consistently")
{
  generator g(7);
  std::vector<data_state> states = all_states(-3, 3);
  int tautologies = 0;
  for (int i = 0; i < 300; ++i) {
    predicate pred = random_predicate(g, 3);
    CAPTURE(pred.to_string());
    predicate back = parse_predicate(pred.to_string());
    CHECK(back.to_string() == pred.to_string());
    for (const data_state & s : states) CHECK(back.eval(s) == pred.eval(s));

    // x and y are not bound in the empty state, so the check enumerates both.
    tautology_result t = is_tautology_bounded(pred, {"x", "y"}, {-3, 3});
    if (t.outcome == tautology_result::status::tautology) {
      ++tautologies;
      for (const data_state & s : states) CHECK(pred.eval(s));
    } else if (t.outcome == tautology_result::status::falsifiable) {
      REQUIRE(t.counter_state);
      CHECK_FALSE(pred.eval(*t.counter_state));
    }
    tautology_result c = is_tautology_bounded(predicate::disjunction(pred, predicate::negation(pred)), {"x", "y"},
                                              {-3, 3});
    CHECK(c.outcome == tautology_result::status::tautology);
  }
  CHECK(tautologies > 0);
}

TEST_CASE("frontier matching agrees with naive run enumeration")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-1, 1, 30);
    std::vector<artifact_automaton> automata = {g.property(p), g.test_goal(p), g.violation_witness(p),
                                                g.correctness_witness(p), g.condition(p),
                                                build_test_case_automaton(g.test(cfg.input_domain))};
    for (const concrete_path & path : brute_force_oracle(p, {}, cfg).paths)
      for (const artifact_automaton & aut : automata) {
        match_verdict m = match_path(aut, path);
        naive_match n = naive_match_path(aut, path);
        CHECK(m.accepted == n.accepts);
        CHECK(m.covered == n.covers);
      }
  }
}

TEST_CASE("all five judgments agree with the brute-force oracle")
{
  int judgments = 0;
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = random_config(g);
    CAPTURE(seed);
    CAPTURE(p.to_listing());
    artifact_automaton prop = g.property(p);
    artifact_automaton cw = g.correctness_witness(p);
    artifact_automaton vw = g.violation_witness(p);
    artifact_automaton cond = g.condition(p);
    artifact_automaton goals = g.test_goal(p);
    test_case t = g.test(cfg.input_domain);
    judgment_comparison c = compare_with_oracle(p, prop, cw, vw, cond, goals, t, cfg);
    judgments += c.judgments;
    for (const std::string & m : c.mismatches) FAIL_CHECK(m);

    if (validate_kind(prop, p, cfg.input_domain).ok()) {
      judgment j = check_fulfills(p, prop, cfg);
      if (j.evidence) CHECK(brute_force_oracle(p, {{&prop, match_mode::accept}}, cfg).paths.count(*j.evidence));
    }
  }
  CHECK(judgments >= 100);
}

TEST_CASE("reduced programs keep exactly the uncovered paths")
{
  int compared = 0;
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 200);
    artifact_automaton cond = g.condition(p);
    if (!kind_ok(cond, p, cfg)) continue;
    CAPTURE(seed);
    CAPTURE(p.to_listing());
    residual_program r = reduce(p, cond);
    if (!brute_force_oracle(r.cfa, {}, cfg).truncated.empty()) continue;
    ++compared;
    CHECK(projected_paths(r, cfg) == uncovered_paths(p, cond, cfg));
    for (const concrete_path & path : brute_force_oracle(r.cfa, {}, cfg).paths) CHECK(path.replays_on(r.cfa));
  }
  CHECK(compared >= 20);
}

TEST_CASE("reducing twice keeps the paths neither condition covers")
{
  int compared = 0;
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 200);
    artifact_automaton first = g.condition(p);
    artifact_automaton second = g.condition(p);
    if (!kind_ok(first, p, cfg) || !kind_ok(second, p, cfg)) continue;
    CAPTURE(seed);
    residual_program r = reduce(reduce(p, first), second);
    if (!brute_force_oracle(r.cfa, {}, cfg).truncated.empty()) continue;
    ++compared;
    std::set<concrete_path> expected;
    for (const concrete_path & path : uncovered_paths(p, first, cfg))
      if (!naive_match_path(second, path).accepts) expected.insert(path);
    CHECK(projected_paths(r, cfg) == expected);
  }
  CHECK(compared >= 20);
}

TEST_CASE("lifted automata judge residual paths like their projections")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 200);
    artifact_automaton cond = g.condition(p);
    if (!kind_ok(cond, p, cfg)) continue;
    residual_program r = reduce(p, cond);
    for (const artifact_automaton & aut : {g.property(p), g.test_goal(p), g.violation_witness(p)}) {
      artifact_automaton lifted = r.lift(aut);
      for (const concrete_path & path : brute_force_oracle(r.cfa, {}, cfg).paths) {
        auto projected = r.project(path);
        if (!projected) {
          // Nothing is decided before the pending guard is taken.
          if (path.length() > 0 && r.origin.at(path.back().loc).pending_guard)
            CHECK(match_path(lifted, path).accepted == match_path(lifted, path.prefix(path.length() - 1)).accepted);
          continue;
        }
        CHECK(match_path(lifted, path).accepted == match_path(aut, *projected).accepted);
      }
    }
  }
}

TEST_CASE("verifier results validate and violations replay")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 60);
    artifact_automaton prop = g.property(p);
    if (!kind_ok(prop, p, cfg)) continue;
    CAPTURE(seed);
    verdict_bundle v = verify(p, prop, cfg);
    if (v.outcome == result::unknown) {
      CHECK_FALSE(v.witness);
      continue;
    }
    REQUIRE(v.witness);
    CHECK(validate_kind(*v.witness, p, cfg.input_domain).ok());
    CHECK(validate_result(p, prop, *v.witness, cfg).outcome == v.outcome);
    if (v.outcome == result::false_) {
      test_case t = extract_test(p, prop, *v.witness, cfg);
      CHECK(exec_test(p, t, &prop, cfg.max_steps).violation_observed == true);
    }
  }
}

TEST_CASE("conditional verification is sound for the uncovered paths")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 200);
    artifact_automaton prop = g.property(p);
    artifact_automaton cond = g.condition(p);
    if (!kind_ok(prop, p, cfg) || !kind_ok(cond, p, cfg)) continue;
    CAPTURE(seed);
    verdict_bundle v = conditional_verify(p, prop, cond, cfg);
    bool violation = false;
    for (const concrete_path & path : uncovered_paths(p, cond, cfg))
      if (naive_match_path(prop, path).accepts) violation = true;
    if (v.outcome != result::unknown) CHECK((v.outcome == result::false_) == violation);
    // Full verification is at least as strong.
    if (v.outcome == result::false_) CHECK(verify(p, prop, cfg).outcome == result::false_);
    if (v.condition && check_condition_correct(p, prop, cond, cfg).outcome == verdict::holds) {
      CHECK(validate_kind(*v.condition, p, cfg.input_domain).ok());
      CHECK(check_condition_correct(p, prop, *v.condition, cfg).outcome == verdict::holds);
    }
  }
}

TEST_CASE("generated suites reach every reachable goal")
{
  for (std::uint32_t seed = 0; seed < seeds; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, 60);
    artifact_automaton goals = g.test_goal(p);
    if (!kind_ok(goals, p, cfg)) continue;
    CAPTURE(seed);
    oracle_result all = brute_force_oracle(p, {}, cfg);
    if (!all.truncated.empty()) continue;
    std::set<std::string> reachable;
    for (const concrete_path & path : all.paths)
      for (const goal_id & id : frontier_goals(goals, path)) reachable.insert(goal_label(goals, id));
    std::set<std::string> covered;
    test_suite suite = generate_tests(p, goals, cfg);
    for (const suite_entry & e : suite.tests) covered.insert(e.covered_goals.begin(), e.covered_goals.end());
    CHECK(covered == reachable);
  }
}
