#include "corpus.hpp"

#include "coop/error.hpp"
#include "coop/oracle.hpp"

#include <doctest.h>

using namespace coop;
using namespace coop::testing;

namespace {

const analysis_config small = config(-4, 4, 200);

artifact_automaton all_paths_witness()
{
  return parse_automaton("automaton all kind=correctness-witness\nstate q init\ntrans q -> q otherwise\n");
}

}  // namespace

TEST_CASE("the running example fulfills its property")
{
  judgment j = check_fulfills(program_p(), corpus_automaton("prop_equal_counts.aut"), small);
  CHECK(j.outcome == verdict::holds);
  CHECK(j.exhausted);
  CHECK_FALSE(j.evidence);
}

TEST_CASE("without line 5 the property is violated at input 1")
{
  judgment j = check_fulfills(program_p_prime(), corpus_automaton("prop_equal_counts.aut"), small);
  REQUIRE(j.outcome == verdict::violated);
  REQUIRE(j.evidence);
  CHECK(j.evidence->inputs() == std::vector<value_t>{1});
  CHECK(j.evidence->back().loc == 6);
  CHECK(j.evidence->replays_on(program_p_prime()));
}

TEST_CASE("a property without final states always holds")
{
  artifact_automaton none = parse_automaton("automaton none kind=property\nstate q init\ntrans q -> q otherwise\n");
  CHECK(check_fulfills(program_p_prime(), none, small).outcome == verdict::holds);
}

TEST_CASE("truncation makes universal judgments unknown")
{
  judgment j = check_fulfills(program_p(), corpus_automaton("prop_equal_counts.aut"), config(-4, 4, 1));
  CHECK(j.outcome == verdict::unknown);
  CHECK_FALSE(j.exhausted);
  CHECK_FALSE(j.evidence);
}

TEST_CASE("judging correctness witnesses")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  CHECK(check_correctness_witness(program_p(), prop, corpus_automaton("correctness_p.aut"), small).outcome == verdict::holds);
  CHECK(check_correctness_witness(program_p(), prop, all_paths_witness(), small).outcome == verdict::holds);
  judgment bad = check_correctness_witness(program_p_prime(), prop, corpus_automaton("correctness_p.aut"), small);
  CHECK(bad.outcome == verdict::violated);
  REQUIRE(bad.evidence);
  CHECK_FALSE(naive_match_path(corpus_automaton("correctness_p.aut"), *bad.evidence).covers);
}

TEST_CASE("judging violation witnesses")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  judgment ok = check_violation_witness(program_p_prime(), prop, corpus_automaton("violation_p_prime.aut"), small);
  REQUIRE(ok.outcome == verdict::holds);
  CHECK(ok.evidence->inputs() == std::vector<value_t>{1});
  CHECK(check_violation_witness(program_p(), prop, corpus_automaton("violation_p_prime.aut"), small).outcome
        == verdict::violated);
  artifact_automaton nonpositive = parse_automaton(
      "automaton w kind=violation-witness\nstate q0 init\nstate q1\nstate qe final\n"
      "trans q0 -> q1 on (0, \"x=input()\", 1) assume x <= 0\n"
      "trans q1 -> q1 otherwise\n"
      "trans q1 -> qe on (3, \"!(a<x)\", 6)\n");
  CHECK(check_violation_witness(program_p_prime(), prop, nonpositive, small).outcome == verdict::violated);
}

TEST_CASE("judging conditions")
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  artifact_automaton cond = corpus_automaton("cond_nonpositive.aut");
  CHECK(check_condition_correct(program_p(), prop, cond, small).outcome == verdict::holds);
  CHECK(check_condition_correct(program_p_prime(), prop, cond, small).outcome == verdict::holds);
  judgment all = check_condition_correct(program_p_prime(), prop, universal_condition(), small);
  CHECK(all.outcome == verdict::violated);
  REQUIRE(all.evidence);
  CHECK(all.evidence->inputs() == std::vector<value_t>{1});
}

TEST_CASE("judging test coverage")
{
  artifact_automaton goals = corpus_automaton("goal_loop_exit.aut");
  analysis_config cfg = config(-8, 8, 200);
  coverage_judgment four = check_test_covers(program_p(), {4}, goals, cfg);
  CHECK(four.result.outcome == verdict::holds);
  CHECK(four.goal_labels == std::vector<std::string>{"qf"});
  CHECK(four.result.evidence->inputs() == std::vector<value_t>{4});

  coverage_judgment zero = check_test_covers(program_p(), {0}, goals, cfg);
  CHECK(zero.result.outcome == verdict::violated);
  CHECK(zero.goals.empty());
  CHECK(check_test_covers(program_p(), {}, goals, cfg).result.outcome == verdict::violated);
}

TEST_CASE("test values outside the domain are still tried")
{
  coverage_judgment big = check_test_covers(program_p(), {20}, corpus_automaton("goal_loop_exit.aut"), config(-2, 2, 200));
  CHECK(big.result.outcome == verdict::holds);
}

TEST_CASE("judgments refuse automata of the wrong kind")
{
  CHECK_THROWS_AS(check_fulfills(program_p(), corpus_automaton("cond_nonpositive.aut"), small), invalid_artifact);
  CHECK_THROWS_AS(check_correctness_witness(program_p(), corpus_automaton("prop_equal_counts.aut"), corpus_automaton("violation_p_prime.aut"),
                                            small),
                  invalid_artifact);
  CHECK_THROWS_AS(check_fulfills(program_p(), corpus_automaton("prop_equal_counts.aut"), config(1, 0)), invalid_artifact);
  CHECK_THROWS_AS(check_fulfills(program_p(), corpus_automaton("prop_equal_counts.aut"), config(0, 1, 0)), invalid_artifact);
}

TEST_CASE("exploration is deterministic")
{
  const artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  const artifact_automaton * automata[] = {&prop};
  std::vector<value_t> choices = domain_values({-2, 2});
  auto trace = [&] {
    std::vector<concrete_path> seen;
    explore_product(program_p(), automata, choices, 50, [&](const concrete_path & path, std::span<const run_frontier>) {
      seen.push_back(path);
      return explore_action::descend;
    });
    return seen;
  };
  std::vector<concrete_path> first = trace();
  CHECK(first == trace());
  CHECK(first.front().length() == 0);
  CHECK(first[1].inputs() == std::vector<value_t>{-2});
}

TEST_CASE("serialized judgments")
{
  judgment j = check_fulfills(program_p_prime(), corpus_automaton("prop_equal_counts.aut"), small);
  nlohmann::json out = to_json(j);
  CHECK(out["verdict"] == "violated");
  CHECK(out["exhausted"] == true);
  CHECK(out["config"]["input_min"] == -4);
  CHECK(out["config"]["max_steps"] == 200);
  CHECK(out["evidence"].size() == 7);
  CHECK(out["evidence"][1]["state"]["x"] == 1);
  CHECK(to_text(j).find("verdict: violated") == 0);
  CHECK(value_to_json(value_t("123456789012345678901234567890")) == "123456789012345678901234567890");
}

TEST_CASE("oracle reproductions")
{
  const artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  const artifact_automaton wit = corpus_automaton("violation_p_prime.aut");
  oracle_result clean = brute_force_oracle(program_p(), {{&prop, match_mode::accept}}, config(-2, 2));
  CHECK(clean.paths.empty());
  CHECK(clean.truncated.empty());

  oracle_result both =
      brute_force_oracle(program_p_prime(), {{&prop, match_mode::accept}, {&wit, match_mode::accept}}, config(-2, 2));
  REQUIRE_FALSE(both.paths.empty());
  CHECK(both.paths.begin()->inputs() == std::vector<value_t>{1});

  oracle_result all = brute_force_oracle(program_p(), {}, config(0, 1, 100));
  std::set<concrete_path> prefixes;
  for (const concrete_path & path : enumerate_paths(program_p(), {0, 1}, 100).paths)
    for (std::size_t n = 0; n <= path.length(); ++n) prefixes.insert(path.prefix(n));
  CHECK(all.paths == prefixes);
}

TEST_CASE("the oracle reports truncated paths and its budget")
{
  oracle_result cut = brute_force_oracle(program_p(), {}, config(5, 5, 3));
  CHECK(cut.truncated.size() == 1);
  CHECK_THROWS_AS(brute_force_oracle(program_p(), {}, config(-1000, 1000, 100000)), oracle_budget_exceeded);
}
