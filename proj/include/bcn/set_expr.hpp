#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bcn/state_space.hpp"

namespace bcn {

/// Boolean predicate over the variables of a state space. Grammar:
///   expr  ::= term ('||' term)*
///   term  ::= unary ('&&' unary)*
///   unary ::= '!' unary | '(' expr ')' | 'true' | 'false' | atom
///   atom  ::= VAR '==' VALUE | VAR '!=' VALUE
class SetExpr {
 public:
  struct Node;  // opaque expression tree

  static SetExpr parse(std::string_view text);

  std::string to_string() const;

  /// Evaluates against 1-based per-variable positions of `space`.
  /// Variables and values are resolved (and validated) per call.
  bool eval(const StateSpace& space, std::span<const Index> positions) const;

  /// Checks every referenced variable/value against the space; throws
  /// DomainError on an unknown name.
  void validate(const StateSpace& space) const;

 private:
  explicit SetExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Materialized subset of a state space: sorted canonical indices plus a
/// membership mask.
class StateSet {
 public:
  StateSet(Index space_dim, std::vector<Index> sorted_indices);

  Index space_dim() const { return space_dim_; }
  const std::vector<Index>& indices() const { return indices_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool contains(Index state) const {
    return mask_[static_cast<std::size_t>(state - 1)] != 0;
  }

 private:
  Index space_dim_;
  std::vector<Index> indices_;
  std::vector<std::uint8_t> mask_;
};

/// All states of `space` satisfying `predicate`, as sorted indices.
StateSet state_set(const StateSpace& space, const SetExpr& predicate);

}  // namespace bcn
