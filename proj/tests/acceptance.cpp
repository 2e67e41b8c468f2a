#include "corpus.hpp"
#include "oracle_checks.hpp"
#include "random_gen.hpp"

#include "coop/error.hpp"
#include "coop/pipeline.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace coop;
using namespace coop::testing;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start)
{
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct outcome
{
  bool pass;
  std::string detail;
};

std::string verdict_text(result r) { return std::string(result_name(r)); }

outcome running_example()
{
  auto start = clock_type::now();
  verdict_bundle v = verify(program_p(), corpus_automaton("prop_equal_counts.aut"), config(-8, 8, 500));
  double t = seconds_since(start);
  bool pass = v.outcome == result::true_ && v.basis.exhausted && t < 1.0;
  return {pass, "result " + verdict_text(v.outcome) + ", exhausted " + (v.basis.exhausted ? "yes" : "no") + ", "
                    + std::to_string(t) + " s"};
}

outcome violation_detection()
{
  control_flow_automaton p = program_p_prime();
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  analysis_config cfg = config(-8, 8, 500);
  verdict_bundle v = verify(p, prop, cfg);
  if (v.outcome != result::false_ || !v.witness) return {false, "result " + verdict_text(v.outcome)};

  // Every input value admitted by the witness assumptions is at least 1.
  bool implies = true;
  bool constrained = false;
  for (const transition & t : v.witness->transitions()) {
    if (!t.pattern || t.assume.is_true()) continue;
    for (value_t x = -8; x <= 8; ++x) {
      data_state s{{"x", x}};
      std::set<std::string> vars = t.assume.variables();
      if (vars != std::set<std::string>{"x"}) continue;
      constrained = true;
      if (t.assume.eval(s) && x < 1) implies = false;
    }
  }
  test_case t = extract_test(p, prop, *v.witness, cfg);
  execution_report run = exec_test(p, t, &prop, cfg.max_steps);
  bool pass = implies && constrained && t == test_case{1} && run.violation_observed == true;
  std::string shown = t.empty() ? "none" : t[0].str();
  return {pass, std::string("witness implies x>=1: ") + (implies && constrained ? "yes" : "no") + ", test <" + shown
                    + ">, violation observed: " + (run.violation_observed == true ? "yes" : "no")};
}

outcome witness_validation()
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  analysis_config cfg = config(-8, 8, 500);
  result a = validate_result(program_p(), prop, corpus_automaton("correctness_p.aut"), cfg).outcome;
  result b = validate_result(program_p_prime(), prop, corpus_automaton("violation_p_prime.aut"), cfg).outcome;
  result c = validate_result(program_p(), prop, corpus_automaton("violation_p_prime.aut"), cfg).outcome;
  bool pass = a == result::true_ && b == result::false_ && c == result::unknown;
  return {pass, "correctness/p " + verdict_text(a) + ", violation/p' " + verdict_text(b) + ", violation/p " + verdict_text(c)};
}

outcome condition_correctness()
{
  artifact_automaton prop = corpus_automaton("prop_equal_counts.aut");
  artifact_automaton cond = corpus_automaton("cond_nonpositive.aut");
  analysis_config cfg = config(-8, 8, 500);
  verdict a = check_condition_correct(program_p(), prop, cond, cfg).outcome;
  verdict b = check_condition_correct(program_p_prime(), prop, cond, cfg).outcome;
  bool pass = a == verdict::holds && b == verdict::holds;
  return {pass, "p " + std::string(verdict_name(a)) + ", p' " + std::string(verdict_name(b))};
}

outcome reducer_identity()
{
  analysis_config cfg = config(-8, 8, 500);
  std::vector<std::pair<std::string, artifact_automaton>> conditions = {
      {"nonpositive", corpus_automaton("cond_nonpositive.aut")}, {"universal", universal_condition()}, {"unreachable", unreachable_condition()}};
  int equal = 0, total = 0;
  std::string failed;
  for (const auto & [pname, p] : {std::pair{"p", program_p()}, std::pair{"p'", program_p_prime()}})
    for (const auto & [cname, cond] : conditions) {
      ++total;
      if (projected_paths(reduce(p, cond), cfg) == uncovered_paths(p, cond, cfg)) ++equal;
      else failed += " " + std::string(pname) + "/" + cname;
    }
  return {equal == total, std::to_string(equal) + "/" + std::to_string(total) + " path sets equal, width 17"
                              + (failed.empty() ? "" : ", differing:" + failed)};
}

outcome conditional_composition()
{
  recipe r = parse_recipe(corpus_text("conditional.coop"));
  auto run = [&](const control_flow_automaton & p) {
    std::map<role, artifact> in{{role::program, p},
                                {role::property, corpus_automaton("prop_equal_counts.aut")},
                                {role::condition, corpus_automaton("cond_nonpositive.aut")}};
    return std::get<result>(run_pipeline(r, in, config(-8, 8, 500)).artifacts.at(role::verdict));
  };
  result a = run(program_p());
  result b = run(program_p_prime());
  return {a == result::true_ && b == result::false_, "p " + verdict_text(a) + ", p' " + verdict_text(b)};
}

outcome test_coverage()
{
  control_flow_automaton p = program_p();
  artifact_automaton goals = corpus_automaton("goal_loop_exit.aut");
  analysis_config cfg = config(-2, 2, 500);
  verdict four = check_test_covers(p, {4}, goals, cfg).result.outcome;
  verdict zero = check_test_covers(p, {0}, goals, cfg).result.outcome;

  std::set<std::string> reachable;
  for (const concrete_path & path : brute_force_oracle(p, {}, cfg).paths)
    for (const goal_id & g : frontier_goals(goals, path)) reachable.insert(goal_label(goals, g));
  std::set<std::string> covered;
  test_suite suite = generate_tests(p, goals, cfg);
  for (const suite_entry & e : suite.tests) covered.insert(e.covered_goals.begin(), e.covered_goals.end());
  bool pass = four == verdict::holds && zero == verdict::violated && covered == reachable && !reachable.empty();
  return {pass, "<4> " + std::string(verdict_name(four)) + ", <0> " + std::string(verdict_name(zero)) + ", suite of "
                    + std::to_string(suite.tests.size()) + " covers " + std::to_string(covered.size()) + "/"
                    + std::to_string(reachable.size()) + " goals"};
}

outcome oracle_equivalence()
{
  auto start = clock_type::now();
  int programs = 0, judgments = 0;
  std::vector<std::string> mismatches;
  for (std::uint32_t seed = 0; programs < 50; ++seed) {
    generator g(seed);
    control_flow_automaton p = g.program();
    analysis_config cfg = config(-2, 2, seed % 4 == 0 ? 6 : 60);
    artifact_automaton prop = g.property(p);
    artifact_automaton cw = g.correctness_witness(p);
    artifact_automaton vw = g.violation_witness(p);
    artifact_automaton cond = g.condition(p);
    artifact_automaton goals = g.test_goal(p);
    test_case t = g.test(cfg.input_domain);
    judgment_comparison c = compare_with_oracle(p, prop, cw, vw, cond, goals, t, cfg);
    if (c.judgments == 0) continue;
    ++programs;
    judgments += c.judgments;
    for (const std::string & m : c.mismatches) mismatches.push_back("seed " + std::to_string(seed) + " " + m);
  }
  double secs = seconds_since(start);
  std::string detail = std::to_string(programs) + " programs, " + std::to_string(judgments) + " judgments, "
                       + std::to_string(mismatches.size()) + " mismatches, " + std::to_string(secs) + " s";
  if (!mismatches.empty()) detail += " (first: " + mismatches.front() + ")";
  return {programs >= 20 && mismatches.empty() && secs < 60.0, detail};
}

struct mutation
{
  std::string name;
  std::string file;
  std::string find;
  std::string replace;
};

outcome structural_constraints()
{
  std::vector<std::pair<std::string, control_flow_automaton>> corpus = {
      {"prop_equal_counts.aut", program_p()}, {"goal_loop_exit.aut", program_p()},       {"correctness_p.aut", program_p()},
      {"violation_p_prime.aut", program_p_prime()}, {"cond_nonpositive.aut", program_p()}, {"testcase_4.aut", program_p()}};
  int accepted = 0;
  for (const auto & [file, p] : corpus)
    if (validate_kind(corpus_automaton(file), p, {-8, 8}).ok()) ++accepted;

  std::vector<mutation> mutations = {
      {"property invariant", "prop_equal_counts.aut", "state q0 init", "state q0 init inv: x >= 0"},
      {"condition final exit", "cond_nonpositive.aut", "assume x <= 0", "assume x <= 0\ntrans q1 -> q0 on (*, *, *)"},
      {"witness assumption", "correctness_p.aut", "(1, \"int a = 0\", 2)", "(1, \"int a = 0\", 2) assume a = 0"},
      {"test-case final", "testcase_4.aut", "state q1", "state q1 final"},
  };
  int rejected = 0;
  std::string missed;
  for (const mutation & m : mutations) {
    std::string text = corpus_text(m.file);
    std::size_t at = text.find(m.find);
    if (at == std::string::npos) {
      missed += " " + m.name;
      continue;
    }
    text.replace(at, m.find.size(), m.replace);
    bool rejects = false;
    try {
      rejects = !validate_kind(parse_automaton(text), program_p(), {-8, 8}).ok();
    } catch (const error &) {
      rejects = true;
    }
    if (rejects) ++rejected;
    else missed += " " + m.name;
  }
  bool pass = accepted == 6 && rejected == static_cast<int>(mutations.size());
  return {pass, std::to_string(accepted) + "/6 corpus automata accepted, " + std::to_string(rejected) + "/"
                    + std::to_string(mutations.size()) + " mutations rejected"
                    + (missed.empty() ? "" : ", missed:" + missed)};
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<outcome()>>> criteria = {
      {"running-example soundness", running_example},
      {"violation detection", violation_detection},
      {"witness validation", witness_validation},
      {"condition correctness", condition_correctness},
      {"reducer identity", reducer_identity},
      {"conditional-verifier composition", conditional_composition},
      {"test coverage", test_coverage},
      {"oracle equivalence", oracle_equivalence},
      {"structural constraints", structural_constraints},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception & e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << '\n';
  }
  return failures == 0 ? 0 : 1;
}
