#include "coop/cli.hpp"

#include "coop/error.hpp"
#include "coop/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace coop {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct options
{
  std::string program;
  std::string property;
  std::string testgoal;
  std::string witness;
  std::string condition;
  std::string test;
  std::string recipe;
  std::string kind;
  long long input_min = -8;
  long long input_max = 8;
  std::size_t max_steps = 500;
  std::string format = "text";
  std::string out = ".";
};

struct run_report
{
  std::string command;
  std::vector<std::string> argv;
  analysis_config config;
  std::string verdict = "unknown";
  bool exhausted = false;
  std::string note;
  std::vector<std::string> written;
  std::optional<judgment> basis;
  json details = json::object();
  std::vector<std::string> text_details;
};

class input_error : public error
{
 public:
  using error::error;
};

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

control_flow_automaton load_program(const std::string & path)
{
  control_flow_automaton p = parse_program_text(read_file(path));
  check_definitions(p);
  return p;
}

artifact_automaton load_automaton(const std::string & path) { return parse_automaton(read_file(path)); }

test_case load_test(const std::string & path) { return parse_test_case(read_file(path)); }

std::string write_artifact(const options & o, const std::string & name, const std::string & content,
                           run_report & report)
{
  fs::create_directories(o.out);
  fs::path path = fs::path(o.out) / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw error("cannot write '" + path.string() + "'");
  file << content;
  report.written.push_back(path.string());
  return path.string();
}

std::string witness_file(const artifact_automaton & w) { return std::string(kind_name(w.kind())) + ".aut"; }

std::string verdict_of(verdict v)
{
  return std::string(verdict_name(v));
}

int exit_of(verdict v)
{
  return v == verdict::holds ? exit_holds : v == verdict::violated ? exit_violated : exit_unknown;
}

int exit_of(result r)
{
  return r == result::true_ ? exit_holds : r == result::false_ ? exit_violated : exit_unknown;
}

std::string inputs_text(const test_case & t)
{
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + t[i].str();
  return out + ">";
}

json inputs_json(const test_case & t)
{
  json out = json::array();
  for (const value_t & v : t) out.push_back(value_to_json(v));
  return out;
}

void detail(run_report & r, const std::string & key, json value, const std::string & text)
{
  r.details[key] = std::move(value);
  r.text_details.push_back(key + ": " + text);
}

int bundle_into(const verdict_bundle & b, const options & o, run_report & r)
{
  r.verdict = std::string(result_name(b.outcome));
  r.exhausted = b.basis.exhausted;
  r.note = b.note;
  r.basis = b.basis;
  if (b.witness) write_artifact(o, witness_file(*b.witness), serialize_automaton(*b.witness), r);
  return exit_of(b.outcome);
}

int run_command(const std::string & command, const options & o, const analysis_config & cfg, run_report & r)
{
  if (command == "parse") {
    control_flow_automaton p = load_program(o.program);
    r.verdict = "ok";
    r.exhausted = true;
    detail(r, "locations", p.locations().size(), std::to_string(p.locations().size()));
    detail(r, "edges", p.edges().size(), std::to_string(p.edges().size()));
    r.text_details.push_back(p.to_listing());
    r.details["listing"] = p.to_listing();
    return exit_holds;
  }
  if (command == "verify") {
    control_flow_automaton p = load_program(o.program);
    artifact_automaton prop = load_automaton(o.property);
    if (o.condition.empty()) return bundle_into(verify(p, prop, cfg), o, r);
    verdict_bundle b = conditional_verify(p, prop, load_automaton(o.condition), cfg);
    int code = bundle_into(b, o, r);
    if (b.witness_program) write_artifact(o, "residual.cfa", b.witness_program->cfa.to_listing(), r);
    if (b.condition) write_artifact(o, "output-condition.aut", serialize_automaton(*b.condition), r);
    return code;
  }
  if (command == "validate") {
    control_flow_automaton p = load_program(o.program);
    artifact_automaton prop = load_automaton(o.property);
    artifact_automaton wit = load_automaton(o.witness);
    return bundle_into(validate_result(p, prop, wit, cfg), o, r);
  }
  if (command == "check-condition") {
    control_flow_automaton p = load_program(o.program);
    judgment j = check_condition_correct(p, load_automaton(o.property), load_automaton(o.condition), cfg);
    r.verdict = verdict_of(j.outcome);
    r.exhausted = j.exhausted;
    r.note = j.reason;
    r.basis = j;
    return exit_of(j.outcome);
  }
  if (command == "reduce") {
    control_flow_automaton p = load_program(o.program);
    artifact_automaton cond = load_automaton(o.condition);
    require_kind(cond, automaton_kind::condition, p, cfg.input_domain);
    residual_program res = reduce(p, cond);
    r.verdict = "ok";
    r.exhausted = true;
    detail(r, "locations", res.cfa.locations().size(), std::to_string(res.cfa.locations().size()));
    detail(r, "edges", res.cfa.edges().size(), std::to_string(res.cfa.edges().size()));
    write_artifact(o, "residual.cfa", res.cfa.to_listing(), r);
    return exit_holds;
  }
  if (command == "extract-test") {
    control_flow_automaton p = load_program(o.program);
    artifact_automaton prop = load_automaton(o.property);
    artifact_automaton wit = load_automaton(o.witness);
    try {
      test_case t = extract_test(p, prop, wit, cfg);
      r.verdict = "ok";
      r.exhausted = true;
      detail(r, "test", inputs_json(t), inputs_text(t));
      write_artifact(o, "extracted.test", serialize_test_case(t), r);
      return exit_holds;
    } catch (const no_violating_path & e) {
      r.verdict = "no-violating-path";
      r.exhausted = true;
      r.note = e.what();
      return exit_violated;
    }
  }
  if (command == "exec-test") {
    control_flow_automaton p = load_program(o.program);
    test_case t = load_test(o.test);
    std::optional<artifact_automaton> prop;
    if (!o.property.empty()) prop = load_automaton(o.property);
    execution_report rep = exec_test(p, t, prop ? &*prop : nullptr, cfg.max_steps);
    r.exhausted = rep.status != execution_report::termination::step_limit;
    detail(r, "termination", std::string(termination_name(rep.status)), std::string(termination_name(rep.status)));
    detail(r, "final_location", rep.trace.back().loc, std::to_string(rep.trace.back().loc));
    detail(r, "final_state", to_json(rep.trace).back()["state"], rep.trace.back().state.to_string());
    detail(r, "inputs_consumed", rep.inputs_consumed, std::to_string(rep.inputs_consumed));
    r.details["trace"] = to_json(rep.trace);
    if (rep.violation_observed.value_or(false)) {
      r.verdict = "violation-observed";
      r.note = "violation observed by execution";
      return exit_violated;
    }
    if (rep.status == execution_report::termination::completed) {
      r.verdict = prop ? "no-violation" : "completed";
      return exit_holds;
    }
    r.verdict = "unknown";
    return exit_unknown;
  }
  if (command == "gen-tests") {
    control_flow_automaton p = load_program(o.program);
    test_suite suite = generate_tests(p, load_automaton(o.testgoal), cfg);
    r.exhausted = true;
    r.verdict = suite.tests.empty() ? "no-goal-reached" : "ok";
    json tests = json::array();
    for (std::size_t i = 0; i < suite.tests.size(); ++i) {
      const suite_entry & e = suite.tests[i];
      std::string path = write_artifact(o, "test-" + std::to_string(i + 1) + ".test", serialize_test_case(e.inputs), r);
      tests.push_back({{"inputs", inputs_json(e.inputs)}, {"goals", e.covered_goals}, {"file", path}});
      std::string goals;
      for (const std::string & g : e.covered_goals) goals += (goals.empty() ? "" : ", ") + g;
      r.text_details.push_back("test " + inputs_text(e.inputs) + " covers " + goals);
    }
    r.details["tests"] = tests;
    return suite.tests.empty() ? exit_violated : exit_holds;
  }
  if (command == "check-test-covers") {
    control_flow_automaton p = load_program(o.program);
    coverage_judgment c = check_test_covers(p, load_test(o.test), load_automaton(o.testgoal), cfg);
    r.verdict = verdict_of(c.result.outcome);
    r.exhausted = c.result.exhausted;
    r.note = c.result.reason;
    r.basis = c.result;
    std::string goals;
    for (const std::string & g : c.goal_labels) goals += (goals.empty() ? "" : ", ") + g;
    detail(r, "goals", c.goal_labels, goals.empty() ? "none" : goals);
    return exit_of(c.result.outcome);
  }
  if (command == "check-kind") {
    std::string path = !o.property.empty()  ? o.property
                       : !o.testgoal.empty() ? o.testgoal
                       : !o.witness.empty()  ? o.witness
                                             : o.condition;
    if (path.empty()) throw CLI::ValidationError("check-kind needs one automaton option");
    artifact_automaton aut = load_automaton(path);
    control_flow_automaton p = o.program.empty()
                                   ? control_flow_automaton({0}, 0, {})
                                   : load_program(o.program);
    if (!o.kind.empty() && parse_kind(o.kind) != aut.kind())
      aut = aut.with_kind(parse_kind(o.kind));
    kind_report k = validate_kind(aut, p, cfg.input_domain);
    r.exhausted = true;
    r.verdict = k.ok() ? "valid" : "invalid";
    json violations = json::array();
    for (const kind_violation & v : k.violations)
      violations.push_back({{"constraint", v.constraint}, {"where", v.where}, {"message", v.message}});
    r.details["kind"] = kind_name(aut.kind());
    r.details["violations"] = violations;
    r.details["non_blocking"] = k.non_blocking.to_string();
    r.text_details.push_back(k.to_string());
    return k.ok() ? exit_holds : exit_violated;
  }
  if (command == "pipeline") {
    recipe steps = parse_recipe(read_file(o.recipe));
    std::map<role, artifact> inputs;
    if (!o.program.empty()) inputs.emplace(role::program, load_program(o.program));
    if (!o.property.empty()) inputs.emplace(role::property, load_automaton(o.property));
    if (!o.testgoal.empty()) inputs.emplace(role::test_goal, load_automaton(o.testgoal));
    if (!o.witness.empty()) inputs.emplace(role::witness, load_automaton(o.witness));
    if (!o.condition.empty()) inputs.emplace(role::condition, load_automaton(o.condition));
    if (!o.test.empty()) {
      test_suite suite;
      suite.add({load_test(o.test), "file", {}});
      inputs.emplace(role::tests, std::move(suite));
    }
    pipeline_report rep = run_pipeline(steps, std::move(inputs), cfg);
    json log = json::array();
    for (const step_log & s : rep.log) {
      json produced = json::object();
      std::string line = "step " + std::to_string(s.step) + " " + s.actor + ":";
      for (const auto & [role_id, art] : s.produced) {
        produced[std::string(role_name(role_id))] = describe(art);
        line += " " + std::string(role_name(role_id)) + " = " + describe(art) + ";";
      }
      log.push_back({{"step", s.step}, {"actor", s.actor}, {"produced", produced}, {"note", s.note}});
      r.text_details.push_back(line + " " + s.note);
    }
    r.details["steps"] = log;
    r.note = rep.note;
    r.exhausted = rep.exhausted;
    // Final artifacts produced by some step.
    std::set<role> produced;
    for (const step_log & s : rep.log)
      for (const auto & pr : s.produced) produced.insert(pr.first);
    for (role id : produced) {
      const artifact & art = rep.artifacts.at(id);
      if (auto * p = std::get_if<control_flow_automaton>(&art))
        write_artifact(o, "pipeline-" + std::string(role_name(id)) + ".cfa", p->to_listing(), r);
      else if (auto * res = std::get_if<residual_program>(&art))
        write_artifact(o, "pipeline-" + std::string(role_name(id)) + ".cfa", res->cfa.to_listing(), r);
      else if (auto * a = std::get_if<artifact_automaton>(&art))
        write_artifact(o, "pipeline-" + std::string(role_name(id)) + ".aut", serialize_automaton(*a), r);
      else if (auto * s = std::get_if<test_suite>(&art))
        for (std::size_t i = 0; i < s->tests.size(); ++i)
          write_artifact(o, "pipeline-t-" + std::to_string(i + 1) + ".test", serialize_test_case(s->tests[i].inputs), r);
    }
    auto final_r = rep.artifacts.find(role::verdict);
    if (final_r == rep.artifacts.end()) {
      r.verdict = "ok";
      return exit_holds;
    }
    result res = std::get<result>(final_r->second);
    r.verdict = std::string(result_name(res));
    return exit_of(res);
  }
  throw CLI::ValidationError("unknown command " + command);
}

void print_report(const run_report & r, const options & o, double wall_ms, std::ostream & out)
{
  if (o.format == "json") {
    json j = {{"command", r.command},
              {"argv", r.argv},
              {"config", to_json(r.config)},
              {"verdict", r.verdict},
              {"exhausted", r.exhausted},
              {"note", r.note},
              {"artifacts", r.written},
              {"judgment", r.basis ? to_json(*r.basis) : json()},
              {"details", r.details},
              {"wall_time_ms", wall_ms}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "command: " << r.command << '\n'
      << "verdict: " << r.verdict << '\n'
      << "exhausted: " << (r.exhausted ? "yes" : "no") << '\n'
      << "config: inputs [" << r.config.input_domain.lo << ", " << r.config.input_domain.hi
      << "], max-steps " << r.config.max_steps << '\n';
  if (!r.note.empty()) out << "note: " << r.note << '\n';
  if (r.basis && r.basis->evidence) {
    out << "evidence:\n";
    for (const path_step & s : r.basis->evidence->steps())
      out << "  " << s.loc << "  " << (s.incoming ? s.incoming->op.canonical() : std::string("-")) << "  "
          << s.state.to_string() << '\n';
  }
  for (const std::string & d : r.text_details) out << d << (d.ends_with('\n') ? "" : "\n");
  for (const std::string & w : r.written) out << "wrote: " << w << '\n';
  out << "time: " << wall_ms << " ms\n";
}

}  // namespace

int cli_main(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Cooperative verification over a small imperative language", "coopverify"};
  app.require_subcommand(1);
  options o;

  struct command_spec
  {
    const char * name;
    const char * help;
    std::vector<std::string> required;
    std::vector<std::string> optional;
  };
  const std::vector<command_spec> commands = {
      {"parse", "Parse a program and print its CFA", {"program"}, {}},
      {"verify", "Verify a program against a property", {"program", "property"}, {"condition"}},
      {"validate", "Validate a verification witness", {"program", "property", "witness"}, {}},
      {"check-condition", "Check that a condition is correct", {"program", "property", "condition"}, {}},
      {"reduce", "Reduce a program by a condition", {"program", "condition"}, {}},
      {"extract-test", "Extract a test from a violation witness", {"program", "property", "witness"}, {}},
      {"exec-test", "Execute a test on a program", {"program", "test"}, {"property"}},
      {"gen-tests", "Generate tests for test goals", {"program", "testgoal"}, {}},
      {"check-test-covers", "Check that a test covers a test goal", {"program", "test", "testgoal"}, {}},
      {"check-kind", "Validate an automaton against its kind", {},
       {"program", "property", "testgoal", "witness", "condition", "kind"}},
      {"pipeline", "Run a cooperation recipe", {"recipe"},
       {"program", "property", "testgoal", "witness", "condition", "test"}},
  };
  std::map<std::string, std::string *> targets = {
      {"program", &o.program}, {"property", &o.property},   {"testgoal", &o.testgoal}, {"witness", &o.witness},
      {"condition", &o.condition}, {"test", &o.test}, {"recipe", &o.recipe}, {"kind", &o.kind},
  };
  for (const command_spec & c : commands) {
    CLI::App * sub = app.add_subcommand(c.name, c.help);
    for (const std::string & name : c.required) sub->add_option("--" + name, *targets.at(name))->required();
    for (const std::string & name : c.optional) sub->add_option("--" + name, *targets.at(name));
    sub->add_option("--input-min", o.input_min, "Smallest input value")->capture_default_str();
    sub->add_option("--input-max", o.input_max, "Largest input value")->capture_default_str();
    sub->add_option("--max-steps", o.max_steps, "Path length bound")->capture_default_str();
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--out", o.out, "Directory for written artifacts")->capture_default_str();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_holds;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_holds;
  } catch (const CLI::ParseError & e) {
    err << "coopverify: " << e.what() << '\n';
    return exit_usage;
  }

  run_report report;
  report.command = app.get_subcommands().front()->get_name();
  report.argv = args;
  report.config = {{o.input_min, o.input_max}, o.max_steps};
  try {
    report.config.validate();
  } catch (const error & e) {
    err << "coopverify: " << e.what() << '\n';
    return exit_usage;
  }
  auto start = std::chrono::steady_clock::now();
  int code;
  try {
    code = run_command(report.command, o, report.config, report);
  } catch (const CLI::Error & e) {
    err << "coopverify: " << e.what() << '\n';
    return exit_usage;
  } catch (const input_error & e) {
    err << "coopverify: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const error & e) {
    err << "coopverify: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const std::exception & e) {
    err << "coopverify: internal error: " << e.what() << '\n';
    return exit_internal;
  }
  double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  print_report(report, o, wall_ms, out);
  return code;
}

}  // namespace coop
