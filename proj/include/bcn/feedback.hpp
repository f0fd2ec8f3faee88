#pragma once

#include <map>

#include "bcn/network.hpp"
#include "bcn/set_expr.hpp"

namespace bcn {

/// Feedback interconnection of a context network (L, M) and a plant
/// network (F, H). The combined state is v = s |x| x with the plant state
/// s as the high-order factor; the transition pairs the two per-column
/// update matrices columnwise.
struct ClosedLoop {
  Bcn context;
  Bcn plant;
  LogicalMatrix a_matrix;    // Ns x Ns*Nx, plant-state update per v
  LogicalMatrix b_matrix;    // Nx x Ns*Nx, context-state update per v
  LogicalMatrix transition;  // Ns*Nx square, columnwise pairing of A and B
  LogicalMatrix psi;         // Ny x Ns*Nx, context output lifted to v
  StateSpace combined_space;

  Bn as_bn() const;
};

/// Builds the closed loop by columnwise evaluation of the simultaneous
/// update s+ = F |x| y |x| u |x| s, x+ = L |x| u |x| x with u = H s and
/// y = M x. Requires: context input dim = plant output dim, plant input
/// dim = context output dim * plant output dim (the plant reads the pair
/// (y, u) with y as the high-order factor), and both output maps
/// state-only.
ClosedLoop compose(const Bcn& context, const Bcn& plant, int threads = 0);

/// Substitutes the self-feedback u = H s into a plant whose input is the
/// pair (y, u), producing a standard-form network driven by y alone.
Bcn reduce_plant(const Bcn& plant);

/// The 2 x (Ns*Nx) comparison matrix over the product of the two state
/// spaces (plant factor high-order): column v maps to delta^1_2 exactly
/// when correspondence[plant value] is the context value in the decoded
/// state. The correspondence must be injective; unmapped values never
/// match.
LogicalMatrix comparison_output(
    const StateSpace& plant_space, const StateSpace& context_space,
    const std::string& plant_var, const std::string& context_var,
    const std::map<std::string, std::string>& correspondence);

}  // namespace bcn
