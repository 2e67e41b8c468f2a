#include "coop/pipeline.hpp"

#include "coop/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace coop {

namespace {

constexpr std::pair<role, std::string_view> role_table[] = {
    {role::program, "p"},   {role::property, "phi_b"}, {role::test_goal, "phi_t"}, {role::witness, "omega"},
    {role::condition, "psi"}, {role::tests, "t"},       {role::verdict, "r"},
};

using arguments = std::map<role, const artifact *>;

struct step_result
{
  std::vector<std::pair<role, artifact>> produced;
  std::string note;
  bool exhausted = true;
};

struct actor
{
  std::string name;
  std::vector<role> required;
  std::vector<role> optional;
  std::vector<role> outputs;
  std::function<step_result(const arguments &, const analysis_config &)> run;
};

template <typename T>
const T & get(const arguments & args, role r)
{
  const artifact * a = args.at(r);
  if (const T * v = std::get_if<T>(a)) return *v;
  throw error("artifact bound to " + std::string(role_name(r)) + " has the wrong type");
}

const control_flow_automaton & program_of(const arguments & args)
{
  if (const auto * r = std::get_if<residual_program>(args.at(role::program))) return r->cfa;
  return get<control_flow_automaton>(args, role::program);
}

// Specification for the program role, lifted when the program is a residual.
artifact_automaton spec(const arguments & args, role r)
{
  const artifact_automaton & aut = get<artifact_automaton>(args, r);
  if (const auto * res = std::get_if<residual_program>(args.at(role::program))) return res->lift(aut);
  return aut;
}

step_result from_bundle(verdict_bundle b, bool with_condition)
{
  step_result out;
  out.produced.emplace_back(role::verdict, b.outcome);
  if (b.witness) out.produced.emplace_back(role::witness, std::move(*b.witness));
  if (with_condition && b.condition) out.produced.emplace_back(role::condition, std::move(*b.condition));
  out.note = b.note;
  out.exhausted = b.basis.exhausted;
  return out;
}

const std::vector<actor> & actors()
{
  static const std::vector<actor> table = {
      {"verify",
       {role::program, role::property},
       {},
       {role::verdict, role::witness},
       [](const arguments & a, const analysis_config & cfg) {
         return from_bundle(verify(program_of(a), spec(a, role::property), cfg), false);
       }},
      {"conditional_verify",
       {role::program, role::property, role::condition},
       {},
       {role::verdict, role::witness, role::condition},
       [](const arguments & a, const analysis_config & cfg) {
         return from_bundle(
             conditional_verify(program_of(a), spec(a, role::property), spec(a, role::condition), cfg), true);
       }},
      {"validate",
       {role::program, role::property, role::witness},
       {},
       {role::verdict, role::witness},
       [](const arguments & a, const analysis_config & cfg) {
         return from_bundle(
             validate_result(program_of(a), spec(a, role::property), get<artifact_automaton>(a, role::witness), cfg),
             false);
       }},
      {"reduce",
       {role::program, role::condition},
       {},
       {role::program},
       [](const arguments & a, const analysis_config & cfg) {
         const auto & cond = get<artifact_automaton>(a, role::condition);
         require_kind(cond, automaton_kind::condition, program_of(a), cfg.input_domain);
         const auto * before = std::get_if<residual_program>(a.at(role::program));
         residual_program r = before ? reduce(*before, cond) : reduce(program_of(a), cond);
         std::string note = "reduced by condition '" + cond.name() + "'";
         return step_result{{{role::program, std::move(r)}}, note};
       }},
      {"extract_test",
       {role::program, role::property, role::witness},
       {},
       {role::tests},
       [](const arguments & a, const analysis_config & cfg) {
         test_case t =
             extract_test(program_of(a), spec(a, role::property), get<artifact_automaton>(a, role::witness), cfg);
         test_suite suite;
         suite.add({t, "extract_test", {}});
         return step_result{{{role::tests, std::move(suite)}}, "extracted 1 test"};
       }},
      {"exec_test",
       {role::program, role::tests},
       {role::property},
       {role::verdict},
       [](const arguments & a, const analysis_config & cfg) {
         const auto & p = program_of(a);
         const auto & suite = get<test_suite>(a, role::tests);
         std::optional<artifact_automaton> lifted;
         if (a.count(role::property)) lifted = spec(a, role::property);
         const artifact_automaton * prop = lifted ? &*lifted : nullptr;
         bool observed = false;
         bool all_clean = prop != nullptr;
         bool bounded = true;
         for (const suite_entry & e : suite.tests) {
           execution_report rep = exec_test(p, e.inputs, prop, cfg.max_steps);
           if (rep.violation_observed.value_or(false)) observed = true;
           if (rep.status != execution_report::termination::completed) all_clean = false;
           if (rep.status == execution_report::termination::step_limit) bounded = false;
         }
         if (observed)
           return step_result{{{role::verdict, result::false_}}, "violation observed by execution", bounded};
         if (all_clean && !suite.tests.empty())
           return step_result{{{role::verdict, result::true_}}, "no violation observed by execution", bounded};
         return step_result{{{role::verdict, result::unknown}}, "execution inconclusive", bounded};
       }},
      {"generate_tests",
       {role::program, role::test_goal},
       {},
       {role::tests},
       [](const arguments & a, const analysis_config & cfg) {
         test_suite suite = generate_tests(program_of(a), spec(a, role::test_goal), cfg);
         std::string note = "generated " + std::to_string(suite.tests.size()) + " test(s)";
         return step_result{{{role::tests, std::move(suite)}}, note};
       }},
      {"check_condition",
       {role::program, role::property, role::condition},
       {},
       {role::verdict},
       [](const arguments & a, const analysis_config & cfg) {
         judgment j = check_condition_correct(program_of(a), spec(a, role::property), spec(a, role::condition), cfg);
         result r = j.outcome == verdict::holds      ? result::true_
                    : j.outcome == verdict::violated ? result::false_
                                                     : result::unknown;
         return step_result{{{role::verdict, r}}, "condition " + std::string(verdict_name(j.outcome)), j.exhausted};
       }},
  };
  return table;
}

std::string normalize(std::string name)
{
  std::replace(name.begin(), name.end(), '-', '_');
  if (name == "ver") return "verify";
  if (name == "red") return "reduce";
  if (name == "wit2test") return "extract_test";
  if (name == "exec") return "exec_test";
  if (name == "gen_tests") return "generate_tests";
  return name;
}

const actor * find_actor(const std::string & name)
{
  for (const actor & a : actors())
    if (a.name == name) return &a;
  return nullptr;
}

// Input roles of a step after defaults are applied; optional roles are
// taken when available.
std::vector<role> bind_inputs(const pipeline_step & s, const actor * a, const std::set<role> & available)
{
  if (!s.inputs.empty()) return s.inputs;
  std::vector<role> out = a->required;
  for (role r : a->optional)
    if (available.count(r)) out.push_back(r);
  return out;
}

}  // namespace

std::string_view role_name(role r)
{
  for (const auto & [value, name] : role_table)
    if (value == r) return name;
  return "?";
}

role parse_role(std::string_view name)
{
  for (const auto & [value, text] : role_table)
    if (text == name) return value;
  throw error("unknown artifact role '" + std::string(name) + "'");
}

std::vector<std::string> actor_names()
{
  std::vector<std::string> out{"identity"};
  for (const actor & a : actors()) out.push_back(a.name);
  return out;
}

recipe parse_recipe(std::string_view source)
{
  recipe out;
  std::istringstream in{std::string(source)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    if (!(words >> word)) continue;
    if (word != "step") throw syntax_error(line_no, 1, "expected 'step', found '" + word + "'");
    pipeline_step s;
    s.line = line_no;
    if (!(words >> s.actor)) throw syntax_error(line_no, line.size() + 1, "missing actor name");
    s.actor = normalize(s.actor);
    bool outputs = false;
    while (words >> word) {
      if (word == "->") {
        if (outputs) throw syntax_error(line_no, 1, "second '->'");
        outputs = true;
        continue;
      }
      role r;
      try {
        r = parse_role(word);
      } catch (const error & e) {
        throw syntax_error(line_no, line.find(word) + 1, e.what());
      }
      (outputs ? s.outputs : s.inputs).push_back(r);
    }
    out.steps.push_back(std::move(s));
  }
  return out;
}

void check_recipe(const recipe & steps, const std::set<role> & initial)
{
  std::set<role> available = initial;
  for (std::size_t i = 0; i < steps.steps.size(); ++i) {
    const pipeline_step & s = steps.steps[i];
    std::size_t number = i + 1;
    if (s.actor == "identity") {
      if (s.inputs.size() != 1) throw type_mismatch(number, "exactly one artifact", std::to_string(s.inputs.size()));
      if (!available.count(s.inputs[0])) throw type_mismatch(number, std::string(role_name(s.inputs[0])), "nothing");
      for (role r : s.outputs)
        if (r != s.inputs[0]) throw type_mismatch(number, std::string(role_name(s.inputs[0])), std::string(role_name(r)));
      continue;
    }
    const actor * a = find_actor(s.actor);
    if (!a) throw error("pipeline step " + std::to_string(number) + ": unknown actor '" + s.actor + "'");
    std::vector<role> inputs = bind_inputs(s, a, available);
    std::vector<role> params = a->required;
    params.insert(params.end(), a->optional.begin(), a->optional.end());
    if (inputs.size() < a->required.size())
      throw type_mismatch(number, std::string(role_name(a->required[inputs.size()])), "nothing");
    if (inputs.size() > params.size()) throw type_mismatch(number, "no further input", std::string(role_name(inputs[params.size()])));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      if (inputs[k] != params[k])
        throw type_mismatch(number, std::string(role_name(params[k])), std::string(role_name(inputs[k])));
      if (!available.count(inputs[k])) throw type_mismatch(number, std::string(role_name(inputs[k])), "nothing");
    }
    for (role r : s.outputs)
      if (std::find(a->outputs.begin(), a->outputs.end(), r) == a->outputs.end())
        throw type_mismatch(number, "an output of " + a->name, std::string(role_name(r)));
    const std::vector<role> & produced = s.outputs.empty() ? a->outputs : s.outputs;
    available.insert(produced.begin(), produced.end());
  }
}

pipeline_report run_pipeline(const recipe & steps, std::map<role, artifact> inputs,
                             const analysis_config & cfg)
{
  cfg.validate();
  std::set<role> available;
  for (const auto & [r, a] : inputs) available.insert(r);
  check_recipe(steps, available);

  pipeline_report report;
  report.artifacts = std::move(inputs);
  for (std::size_t i = 0; i < steps.steps.size(); ++i) {
    const pipeline_step & s = steps.steps[i];
    step_log entry{i + 1, s.actor, {}, {}, true};
    try {
      if (s.actor == "identity") {
        entry.produced.emplace_back(s.inputs[0], report.artifacts.at(s.inputs[0]));
        entry.note = "unchanged";
      } else {
        const actor * a = find_actor(s.actor);
        available.clear();
        for (const auto & [r, art] : report.artifacts) available.insert(r);
        arguments args;
        for (role r : bind_inputs(s, a, available)) {
          auto it = report.artifacts.find(r);
          if (it == report.artifacts.end())
            throw error("no " + std::string(role_name(r)) + " artifact was produced by an earlier step");
          args[r] = &it->second;
        }
        step_result out = a->run(args, cfg);
        for (auto & [r, art] : out.produced)
          if (s.outputs.empty() || std::find(s.outputs.begin(), s.outputs.end(), r) != s.outputs.end())
            entry.produced.emplace_back(r, std::move(art));
        entry.note = std::move(out.note);
        entry.exhausted = out.exhausted;
        // A step that re-derives r without a witness invalidates the old one.
        if (std::find(a->outputs.begin(), a->outputs.end(), role::witness) != a->outputs.end()
            && std::none_of(entry.produced.begin(), entry.produced.end(),
                            [](const auto & pr) { return pr.first == role::witness; }))
          report.artifacts.erase(role::witness);
      }
    } catch (const pipeline_step_error &) {
      throw;
    } catch (const std::exception & e) {
      throw pipeline_step_error(i + 1, s.actor, e.what());
    }
    for (const auto & [r, art] : entry.produced) report.artifacts.insert_or_assign(r, art);
    report.note = entry.note;
    report.exhausted = report.exhausted && entry.exhausted;
    report.log.push_back(std::move(entry));
  }
  return report;
}

std::string describe(const artifact & a)
{
  struct visitor
  {
    std::string operator()(const control_flow_automaton & p) const
    {
      return "program with " + std::to_string(p.locations().size()) + " locations and "
             + std::to_string(p.edges().size()) + " edges";
    }
    std::string operator()(const residual_program & r) const
    {
      return "residual " + (*this)(r.cfa);
    }
    std::string operator()(const artifact_automaton & aut) const
    {
      return std::string(kind_name(aut.kind())) + " automaton '" + aut.name() + "' with "
             + std::to_string(aut.states().size()) + " states";
    }
    std::string operator()(const test_suite & s) const
    {
      std::string out = std::to_string(s.tests.size()) + " test(s)";
      for (const suite_entry & e : s.tests) {
        out += " <";
        for (std::size_t i = 0; i < e.inputs.size(); ++i) out += (i ? "," : "") + e.inputs[i].str();
        out += ">";
      }
      return out;
    }
    std::string operator()(result r) const { return std::string(result_name(r)); }
  };
  return std::visit(visitor{}, a);
}

}  // namespace coop
