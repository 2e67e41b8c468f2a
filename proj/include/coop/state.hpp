#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>

namespace coop {

/// Mathematical integer; program arithmetic never wraps.
using value_t = boost::multiprecision::cpp_int;

/// Partial valuation of program variables. The empty state binds nothing.
class data_state
{
 public:
  data_state() = default;
  data_state(std::initializer_list<std::pair<const std::string, value_t>> init)
      : bindings_(init)
  {
  }

  /// nullptr when the variable is unbound.
  const value_t * find(const std::string & name) const
  {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  std::optional<value_t> lookup(const std::string & name) const
  {
    if (const value_t * v = find(name)) return *v;
    return std::nullopt;
  }

  bool bound(const std::string & name) const { return bindings_.count(name) != 0; }

  data_state with(const std::string & name, value_t value) const
  {
    data_state next = *this;
    next.bindings_[name] = std::move(value);
    return next;
  }

  const std::map<std::string, value_t> & bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::string to_string() const;

  friend bool operator==(const data_state & a, const data_state & b) = default;
  friend bool operator<(const data_state & a, const data_state & b)
  {
    return a.bindings_ < b.bindings_;
  }

 private:
  std::map<std::string, value_t> bindings_;
};

inline std::string data_state::to_string() const
{
  std::string out = "{";
  bool first = true;
  for (const auto & [name, value] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += name + ":" + value.str();
  }
  return out + "}";
}

}  // namespace coop
