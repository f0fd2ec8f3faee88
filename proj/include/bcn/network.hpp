#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcn/state_space.hpp"

namespace bcn {

/// Control network in algebraic form. The transition matrix is N x N*M with
/// columns ordered input-major: column (u-1)*N + x holds the successor of
/// state x under input u (the u |x| x convention). The output map is P x N
/// when the outputs depend on the state only, P x N*M otherwise.
struct Bcn {
  std::string name;
  StateSpace input_space;
  StateSpace state_space;
  StateSpace output_space;
  LogicalMatrix transition;
  LogicalMatrix output_map;
  bool output_depends_on_input = false;
};

/// Validates shapes and returns the model; throws DimensionMismatchError.
Bcn make_bcn(std::string name, StateSpace input_space, StateSpace state_space,
             StateSpace output_space, LogicalMatrix transition,
             LogicalMatrix output_map, bool output_depends_on_input);

/// Autonomous network: a functional graph over the state space.
struct Bn {
  std::string name;
  StateSpace state_space;
  LogicalMatrix transition;  // square N x N
  std::optional<LogicalMatrix> output_map;
};

Bn make_bn(std::string name, StateSpace state_space, LogicalMatrix transition,
           std::optional<LogicalMatrix> output_map = std::nullopt);

/// A BCN whose input space is trivial (dim 1) is an autonomous network.
Bn to_bn(const Bcn& net);

struct Trajectory {
  std::vector<CanonicalVector> states;
  std::vector<CanonicalVector> inputs;   // empty for BN runs
  std::vector<CanonicalVector> outputs;  // may be one longer than inputs
};

/// The N x N block of the transition matrix for input delta^i_M.
LogicalMatrix input_block(const Bcn& net, Index i);

/// One synchronous update; returns (next state, current output).
std::pair<CanonicalVector, CanonicalVector> step(const Bcn& net,
                                                 const CanonicalVector& x,
                                                 const CanonicalVector& u);

/// Iterated stepping for `horizon` steps; needs at least `horizon` inputs.
/// Outputs cover every time index for which they are defined: horizon + 1
/// entries for state-only output maps, horizon otherwise.
Trajectory simulate(const Bcn& net, const CanonicalVector& x0,
                    std::span<const CanonicalVector> inputs, Index horizon);
Trajectory simulate(const Bn& net, const CanonicalVector& x0, Index horizon);

}  // namespace bcn
