#include "bcn/state_space.hpp"

#include <algorithm>
#include <unordered_set>

namespace bcn {

namespace {
constexpr Index kMaxSpaceDim = Index{1} << 24;
}

Index VariableSpec::value_index(const std::string& label) const {
  const auto it = std::find(values.begin(), values.end(), label);
  if (it == values.end()) {
    throw DomainError("variable '" + name + "' has no value '" + label + "'");
  }
  return static_cast<Index>(it - values.begin()) + 1;
}

StateSpace::StateSpace(std::vector<VariableSpec> variables)
    : variables_(std::move(variables)), dim_(1) {
  std::unordered_set<std::string> names;
  for (const auto& var : variables_) {
    if (var.cardinality() < 1) {
      throw DomainError("variable '" + var.name + "' has an empty value set");
    }
    std::unordered_set<std::string> labels(var.values.begin(),
                                           var.values.end());
    if (static_cast<Index>(labels.size()) != var.cardinality()) {
      throw DomainError("variable '" + var.name + "' has duplicate labels");
    }
    if (!names.insert(var.name).second) {
      throw DomainError("duplicate variable name '" + var.name + "'");
    }
    dim_ = checked_mul(dim_, var.cardinality());
    if (dim_ > kMaxSpaceDim) {
      throw DimensionOverflowError("state space dimension exceeds 2^24");
    }
  }
}

std::size_t StateSpace::variable_position(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  throw DomainError("no variable named '" + name + "'");
}

bool StateSpace::has_variable(const std::string& name) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const VariableSpec& v) { return v.name == name; });
}

CanonicalVector StateSpace::encode(std::span<const std::string> labels) const {
  if (labels.size() != variables_.size()) {
    throw DomainError("expected " + std::to_string(variables_.size()) +
                      " labels, got " + std::to_string(labels.size()));
  }
  std::vector<Index> positions(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    positions[i] = variables_[i].value_index(labels[i]);
  }
  return {dim_, encode_positions(positions)};
}

std::vector<std::string> StateSpace::decode(const CanonicalVector& v) const {
  if (v.dim != dim_) {
    throw DimensionMismatchError("vector dimension " + std::to_string(v.dim) +
                                 " does not match space dimension " +
                                 std::to_string(dim_));
  }
  const auto positions = decode_positions(v.index);
  std::vector<std::string> labels(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    labels[i] =
        variables_[i].values[static_cast<std::size_t>(positions[i] - 1)];
  }
  return labels;
}

Index StateSpace::encode_positions(std::span<const Index> positions) const {
  if (positions.size() != variables_.size()) {
    throw DomainError("expected " + std::to_string(variables_.size()) +
                      " positions, got " + std::to_string(positions.size()));
  }
  Index index = 1;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Index card = variables_[i].cardinality();
    if (positions[i] < 1 || positions[i] > card) {
      throw DomainError("position " + std::to_string(positions[i]) +
                        " out of range for variable '" + variables_[i].name +
                        "'");
    }
    index = (index - 1) * card + positions[i];
  }
  return index;
}

std::vector<Index> StateSpace::decode_positions(Index state) const {
  if (state < 1 || state > dim_) {
    throw DomainError("state index " + std::to_string(state) +
                      " out of range [1, " + std::to_string(dim_) + "]");
  }
  std::vector<Index> positions(variables_.size());
  Index rem = state - 1;
  for (std::size_t i = variables_.size(); i-- > 0;) {
    const Index card = variables_[i].cardinality();
    positions[i] = rem % card + 1;
    rem /= card;
  }
  return positions;
}

StateSpace product_space(const StateSpace& lhs, const StateSpace& rhs) {
  std::vector<VariableSpec> vars = lhs.variables();
  vars.insert(vars.end(), rhs.variables().begin(), rhs.variables().end());
  return StateSpace(std::move(vars));
}

}  // namespace bcn
