#pragma once

#include <span>
#include <string>
#include <vector>

#include "bcn/logical.hpp"

namespace bcn {

/// One named multi-valued variable; the order of its value labels defines
/// the canonical index of each label.
struct VariableSpec {
  std::string name;
  std::vector<std::string> values;

  Index cardinality() const { return static_cast<Index>(values.size()); }

  /// 1-based position of a label, or throws DomainError.
  Index value_index(const std::string& label) const;

  bool operator==(const VariableSpec&) const = default;
};

/// Ordered list of variables with mixed-radix encoding into canonical
/// indices. The first variable is the highest-order digit, matching the
/// iterated semi-tensor product of the per-variable canonical vectors.
class StateSpace {
 public:
  StateSpace() : dim_(1) {}
  explicit StateSpace(std::vector<VariableSpec> variables);

  Index dim() const { return dim_; }
  const std::vector<VariableSpec>& variables() const { return variables_; }

  /// Position of the named variable (0-based), or throws DomainError.
  std::size_t variable_position(const std::string& name) const;
  bool has_variable(const std::string& name) const;

  /// Mixed-radix encode of one label per variable.
  CanonicalVector encode(std::span<const std::string> labels) const;
  std::vector<std::string> decode(const CanonicalVector& v) const;

  /// Index-level forms working with 1-based per-variable positions.
  Index encode_positions(std::span<const Index> positions) const;
  std::vector<Index> decode_positions(Index state) const;

  bool operator==(const StateSpace&) const = default;

 private:
  std::vector<VariableSpec> variables_;
  Index dim_;
};

/// Concatenation of two spaces, lhs variables first (high order).
StateSpace product_space(const StateSpace& lhs, const StateSpace& rhs);

}  // namespace bcn
