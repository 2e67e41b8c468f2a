#pragma once

#include <stdexcept>
#include <string>

namespace coop {

/// Base class for every error raised by the toolkit.
class error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

class syntax_error : public error
{
 public:
  syntax_error(std::size_t line, std::size_t column, const std::string & message)
      : error("syntax error at " + std::to_string(line) + ":"
              + std::to_string(column) + ": " + message),
        line_(line),
        column_(column)
  {
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class use_before_def : public error
{
 public:
  use_before_def(std::string variable, int location)
      : error("variable '" + variable + "' may be read before it is written (location "
              + std::to_string(location) + ")"),
        variable_(std::move(variable)),
        location_(location)
  {
  }

  const std::string & variable() const { return variable_; }
  int location() const { return location_; }

 private:
  std::string variable_;
  int location_;
};

class undefined_variable : public error
{
 public:
  explicit undefined_variable(std::string variable)
      : error("read of unbound variable '" + variable + "'"), variable_(std::move(variable))
  {
  }

  const std::string & variable() const { return variable_; }

 private:
  std::string variable_;
};

class unbound_template : public error
{
 public:
  unbound_template() : error("template variable chi occurs but no binding was given") {}
};

class unknown_kind : public error
{
 public:
  explicit unknown_kind(const std::string & kind) : error("unknown automaton kind '" + kind + "'") {}
};

class duplicate_otherwise : public error
{
 public:
  explicit duplicate_otherwise(const std::string & state)
      : error("state '" + state + "' has more than one otherwise transition")
  {
  }
};

/// An artifact failed its structural or kind validation.
class invalid_artifact : public error
{
 public:
  using error::error;
};

class oracle_budget_exceeded : public error
{
 public:
  oracle_budget_exceeded() : error("brute-force oracle exceeded its path-step budget") {}
};

class no_violating_path : public error
{
 public:
  no_violating_path() : error("witness does not lead to a violating path within the configuration") {}
};

class type_mismatch : public error
{
 public:
  type_mismatch(std::size_t step, const std::string & expected, const std::string & got)
      : error("pipeline step " + std::to_string(step) + ": expected " + expected + ", got " + got),
        step_(step)
  {
  }

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// A pipeline step raised an error; `step()` is its one-based number.
class pipeline_step_error : public error
{
 public:
  pipeline_step_error(std::size_t step, const std::string & actor, const std::string & message)
      : error("pipeline step " + std::to_string(step) + " (" + actor + "): " + message), step_(step)
  {
  }

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace coop
