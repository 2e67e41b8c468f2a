#include "corpus.hpp"
#include "oracle_checks.hpp"

#include "coop/error.hpp"
#include "coop/oracle.hpp"

#include <doctest.h>

using namespace coop;
using namespace coop::testing;

namespace {

const analysis_config small = config(-4, 4, 200);

}  // namespace

TEST_CASE("verifying the program without line 5 yields a chain witness")
{
  verdict_bundle b = verify(program_p_prime(), corpus_automaton("prop_equal_counts.aut"), small);
  CHECK(b.outcome == result::false_);
  REQUIRE(b.witness);
  const artifact_automaton & w = *b.witness;
  CHECK(w.kind() == automaton_kind::violation_witness);
  std::vector<location> sources;
  for (const transition & t : w.transitions()) sources.push_back(*t.pattern->source);
  sources.push_back(*w.transitions().back().pattern->target);
  CHECK(sources == std::vector<location>{0, 1, 2, 3, 4, 3, 6});
  CHECK(w.transitions()[0].assume.to_string() == "x==1");
  CHECK(validate_kind(w, program_p_prime(), small.input_domain).single_path);
}

TEST_CASE("verifying the running example yields a correctness witness")
{
  verdict_bundle b = verify(program_p(), corpus_automaton("prop_equal_counts.aut"), small);
  CHECK(b.outcome == result::true_);
  REQUIRE(b.witness);
  CHECK(b.witness->kind() == automaton_kind::correctness_witness);
  const automaton_state & q3 = b.witness->state(*b.witness->find_state("q3"));
  // The invariant at the loop head implies a == b on every state of the domain.
  predicate implies = predicate::disjunction(predicate::negation(q3.invariant), parse_predicate("a == b"));
  CHECK(is_tautology_bounded(implies, {"a", "b", "x"}, {-4, 4}, false).outcome == tautology_result::status::tautology);
  CHECK(check_correctness_witness(program_p(), corpus_automaton("prop_equal_counts.aut"), *b.witness, small).outcome
        == verdict::holds);
}

TEST_CASE("truncated verification is unknown and carries no witness")
{
  verdict_bundle b = verify(program_p(), corpus_automaton("prop_equal_counts.aut"), config(-4, 4, 1));
  CHECK(b.outcome == result::unknown);
  CHECK_FALSE(b.witness);
}

TEST_CASE("conditional verification")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  artifact_automaton cond = corpus_automaton("cond_nonpositive.aut");

  verdict_bundle ok = conditional_verify(program_p(), prop, cond, small);
  CHECK(ok.outcome == result::true_);
  REQUIRE(ok.condition);
  CHECK(validate_kind(*ok.condition, program_p(), small.input_domain).ok());
  for (int x = -4; x <= 4; ++x) {
    concrete_path path = exec_test(program_p(), {x}).trace;
    CHECK(naive_match_path(*ok.condition, path).accepts);
  }

  verdict_bundle bad = conditional_verify(program_p_prime(), prop, cond, small);
  CHECK(bad.outcome == result::false_);
  REQUIRE(bad.witness);
  REQUIRE(bad.witness_program);
  judgment replay = check_violation_witness(bad.witness_program->cfa, bad.witness_program->lift(prop), *bad.witness, small);
  REQUIRE(replay.outcome == verdict::holds);
  CHECK(replay.evidence->inputs()[0] >= 1);

  verdict_bundle everything = conditional_verify(program_p_prime(), prop, universal_condition(), small);
  CHECK(everything.outcome == result::true_);
}

TEST_CASE("validating witnesses")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  verdict_bundle f = validate_result(program_p_prime(), prop, corpus_automaton("violation_p_prime.aut"), small);
  CHECK(f.outcome == result::false_);
  REQUIRE(f.witness);
  CHECK(f.witness->kind() == automaton_kind::violation_witness);

  verdict_bundle t = validate_result(program_p(), prop, corpus_automaton("correctness_p.aut"), small);
  CHECK(t.outcome == result::true_);

  verdict_bundle cross = validate_result(program_p(), prop, corpus_automaton("violation_p_prime.aut"), small);
  CHECK(cross.outcome == result::unknown);
  CHECK_FALSE(cross.witness);
  CHECK(cross.note.find("witness yields no violating path") != std::string::npos);

  CHECK_THROWS_AS(validate_result(program_p(), prop, corpus_automaton("cond_nonpositive.aut"), small), invalid_artifact);
}

TEST_CASE("reducing by the non-positive-input condition")
{
  control_flow_automaton p = program_p();
  residual_program r = reduce(p, corpus_automaton("cond_nonpositive.aut"));
  REQUIRE(r.cfa.edges().size() >= 2);
  CHECK(r.cfa.edges()[0].op.is_input());
  CHECK(r.cfa.edges()[1].op.canonical() == "!(x<=0)");
  CHECK(r.cfa.edges()[1].source == r.cfa.edges()[0].target);
  CHECK(r.origin.at(r.cfa.edges()[0].target).pending_guard);

  analysis_config cfg = config(-4, 4, 200);
  CHECK(projected_paths(r, cfg) == uncovered_paths(p, corpus_automaton("cond_nonpositive.aut"), cfg));
}

TEST_CASE("reducing by trivial conditions")
{
  control_flow_automaton p = program_p();
  analysis_config cfg = config(-3, 3, 200);

  residual_program none = reduce(p, unreachable_condition());
  CHECK(none.cfa.edges().size() == p.edges().size());
  CHECK(projected_paths(none, cfg) == uncovered_paths(p, unreachable_condition(), cfg));

  residual_program all = reduce(p, universal_condition());
  CHECK(all.cfa.edges().empty());
  CHECK(projected_paths(all, cfg).empty());
}

TEST_CASE("the reducer rejects invalid conditions")
{
  CHECK_THROWS_AS(reduce(program_p(), corpus_automaton("prop_equal_counts.aut")), invalid_artifact);
  artifact_automaton leaving = parse_automaton("automaton c kind=condition\nstate q0 init\nstate q1 final\n"
                                               "trans q0 -> q1 on (*, *, *)\ntrans q1 -> q0 otherwise\n");
  CHECK_THROWS_AS(reduce(program_p(), leaving), invalid_artifact);
  artifact_automaton early = parse_automaton("automaton c kind=condition\nstate q0 init\nstate q1 final\n"
                                             "trans q0 -> q1 on (0, *, 1) assume a > 0\n");
  CHECK_THROWS_AS(reduce(program_p(), early), invalid_artifact);
}

TEST_CASE("extracting tests from violation witnesses")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  CHECK(extract_test(program_p_prime(), prop, corpus_automaton("violation_p_prime.aut"), small) == test_case{1});
  CHECK_THROWS_AS(extract_test(program_p(), prop, corpus_automaton("violation_p_prime.aut"), small), no_violating_path);

  control_flow_automaton direct = parse_program("a = 1; b = 0;");
  artifact_automaton neq = parse_automaton("automaton p kind=property\nstate q0 init\nstate qe final\n"
                                           "trans q0 -> q0 otherwise\n"
                                           "trans q0 -> qe on (1, *, 2) assume a != b\n");
  artifact_automaton any = parse_automaton("automaton w kind=violation-witness\nstate q0 init\nstate qe final\n"
                                           "trans q0 -> q0 otherwise\ntrans q0 -> qe on (*, *, *)\n");
  CHECK(extract_test(direct, neq, any, small).empty());
}

TEST_CASE("executing tests")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  execution_report four = exec_test(program_p(), {4}, &prop);
  CHECK(four.status == execution_report::termination::completed);
  CHECK(four.trace.back().loc == 6);
  CHECK(four.trace.back().state.to_string() == "{a:4, b:4, x:4}");
  CHECK(four.violation_observed == false);
  CHECK(four.inputs_consumed == 1);

  execution_report one = exec_test(program_p_prime(), {1}, &prop);
  CHECK(one.violation_observed == true);
  CHECK(one.trace.back().state.to_string() == "{a:1, b:0, x:1}");

  execution_report none = exec_test(program_p(), {});
  CHECK(none.status == execution_report::termination::blocked_no_input);
  CHECK(none.trace.back().loc == 0);
  CHECK_FALSE(none.violation_observed);

  execution_report slow = exec_test(program_p(), {8}, nullptr, 5);
  CHECK(slow.status == execution_report::termination::step_limit);

  control_flow_automaton stuck = parse_program_text("cfa\ninitial 0\nlocations 0 1\nedge 0 1 \"1>2\"\n");
  CHECK(exec_test(stuck, {}).status == execution_report::termination::blocked_assume);
}

TEST_CASE("generating tests for goals")
{
  test_suite one = generate_tests(program_p(), corpus_automaton("goal_loop_exit.aut"), config(-2, 2, 200));
  REQUIRE(one.tests.size() == 1);
  CHECK(one.tests[0].inputs == test_case{1});
  CHECK(one.tests[0].covered_goals == std::vector<std::string>{"qf"});

  artifact_automaton two_goals = parse_automaton("automaton two kind=test-goal\n"
                                                 "state q0 init\nstate q1\nstate entry final\nstate skip final\n"
                                                 "trans q0 -> q0 otherwise\n"
                                                 "trans q0 -> q1 on (2, *, 3)\n"
                                                 "trans q1 -> entry on (3, \"a<x\", 4)\n"
                                                 "trans q1 -> skip on (3, \"!(a<x)\", 6)\n");
  test_suite two = generate_tests(program_p(), two_goals, config(-2, 2, 200));
  REQUIRE(two.tests.size() == 2);
  CHECK(two.tests[0].inputs == test_case{-2});
  CHECK(two.tests[1].inputs == test_case{1});

  artifact_automaton unreachable = parse_automaton("automaton g kind=test-goal\nstate q0 init\nstate g final\n"
                                                   "trans q0 -> g on (6, *, 7)\n");
  CHECK(generate_tests(program_p(), unreachable, config(-2, 2, 200)).tests.empty());
}

TEST_CASE("test suites reject duplicates")
{
  test_suite s;
  CHECK(s.add({{1, 2}, "a", {}}));
  CHECK_FALSE(s.add({{1, 2}, "b", {}}));
  CHECK(s.add({{2, 1}, "b", {}}));
  CHECK(s.tests.size() == 2);
}

TEST_CASE("test files")
{
  CHECK(parse_test_case("# header\n4\n  -12  \n\n+3 # trailing\n") == test_case{4, -12, 3});
  CHECK(parse_test_case("").empty());
  CHECK(serialize_test_case({4, -12}) == "4\n-12\n");
  CHECK(parse_test_case(serialize_test_case({value_t("-99999999999999999999999")}))
        == test_case{value_t("-99999999999999999999999")});
  CHECK_THROWS_AS(parse_test_case("4\nfour\n"), syntax_error);
  CHECK_THROWS_AS(parse_test_case("-\n"), syntax_error);
  CHECK(parse_test_case(corpus_text("test4.test")) == test_case{4});
}
