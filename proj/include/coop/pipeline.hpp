#pragma once

#include "coop/actors.hpp"

#include <variant>

namespace coop {

/// Artifact roles: p, phi_b, phi_t, omega, psi, t, r.
enum class role { program, property, test_goal, witness, condition, tests, verdict };

std::string_view role_name(role r);
/// Throws error for an unknown role letter.
role parse_role(std::string_view name);

/// The program role holds either a program or a residual that remembers the
/// program it was reduced from; specifications given for the original are
/// lifted onto the residual before use.
using artifact = std::variant<control_flow_automaton, residual_program, artifact_automaton, test_suite, result>;

struct pipeline_step
{
  std::string actor;
  /// Input roles in the actor's parameter order; empty means the defaults.
  std::vector<role> inputs;
  /// Output roles to keep; empty means all.
  std::vector<role> outputs;
  std::size_t line = 0;
};

struct recipe
{
  std::vector<pipeline_step> steps;
};

/// Reads a `.coop` recipe: `step <actor> [roles...] [-> roles...]` per line,
/// `#` comments. Actor names accept `-` for `_` and the short aliases ver,
/// red, wit2test, exec.
recipe parse_recipe(std::string_view source);

/// Names of all actors a recipe can refer to.
std::vector<std::string> actor_names();

struct step_log
{
  std::size_t step;
  std::string actor;
  std::vector<std::pair<role, artifact>> produced;
  std::string note;
  /// The step's analysis explored its whole bounded space.
  bool exhausted = true;
};

struct pipeline_report
{
  std::map<role, artifact> artifacts;
  std::vector<step_log> log;
  /// Note of the last step.
  std::string note;
  bool exhausted = true;
};

/// Checks the wiring (type_mismatch) without running anything.
void check_recipe(const recipe & steps, const std::set<role> & available);

/// Runs the steps in order, threading artifacts by role. Step failures are
/// rethrown as pipeline_step_error.
pipeline_report run_pipeline(const recipe & steps, std::map<role, artifact> inputs,
                             const analysis_config & cfg);

std::string describe(const artifact & a);

}  // namespace coop
