#include "bcn/network.hpp"

namespace bcn {

Bcn make_bcn(std::string name, StateSpace input_space, StateSpace state_space,
             StateSpace output_space, LogicalMatrix transition,
             LogicalMatrix output_map, bool output_depends_on_input) {
  const Index n = state_space.dim();
  const Index m = input_space.dim();
  const Index p = output_space.dim();
  if (transition.rows() != n || transition.cols() != checked_mul(n, m)) {
    throw DimensionMismatchError(
        "transition matrix must be " + std::to_string(n) + " x " +
        std::to_string(n * m) + ", got " + std::to_string(transition.rows()) +
        " x " + std::to_string(transition.cols()));
  }
  const Index want_cols = output_depends_on_input ? checked_mul(n, m) : n;
  if (output_map.rows() != p || output_map.cols() != want_cols) {
    throw DimensionMismatchError(
        "output map must be " + std::to_string(p) + " x " +
        std::to_string(want_cols) + ", got " +
        std::to_string(output_map.rows()) + " x " +
        std::to_string(output_map.cols()));
  }
  return Bcn{std::move(name),      std::move(input_space),
             std::move(state_space), std::move(output_space),
             std::move(transition),  std::move(output_map),
             output_depends_on_input};
}

Bn make_bn(std::string name, StateSpace state_space, LogicalMatrix transition,
           std::optional<LogicalMatrix> output_map) {
  const Index n = state_space.dim();
  if (transition.rows() != n || transition.cols() != n) {
    throw DimensionMismatchError(
        "autonomous transition matrix must be square of size " +
        std::to_string(n));
  }
  if (output_map && output_map->cols() != n) {
    throw DimensionMismatchError("output map must have " + std::to_string(n) +
                                 " columns");
  }
  return Bn{std::move(name), std::move(state_space), std::move(transition),
            std::move(output_map)};
}

Bn to_bn(const Bcn& net) {
  if (net.input_space.dim() != 1) {
    throw DimensionMismatchError(
        "model '" + net.name +
        "' has a nontrivial input space and is not autonomous");
  }
  return make_bn(net.name, net.state_space, net.transition, net.output_map);
}

LogicalMatrix input_block(const Bcn& net, Index i) {
  const Index m = net.input_space.dim();
  const Index n = net.state_space.dim();
  if (i < 1 || i > m) {
    throw DomainError("input index " + std::to_string(i) +
                      " out of range [1, " + std::to_string(m) + "]");
  }
  std::vector<Index> cols(static_cast<std::size_t>(n));
  for (Index x = 1; x <= n; ++x) {
    cols[static_cast<std::size_t>(x - 1)] = net.transition.col((i - 1) * n + x);
  }
  return {n, std::move(cols)};
}

std::pair<CanonicalVector, CanonicalVector> step(const Bcn& net,
                                                 const CanonicalVector& x,
                                                 const CanonicalVector& u) {
  const Index n = net.state_space.dim();
  if (x.dim != n || u.dim != net.input_space.dim()) {
    throw DimensionMismatchError("state/input dimensions do not match model '" +
                                 net.name + "'");
  }
  const Index pair = (u.index - 1) * n + x.index;
  const CanonicalVector next{n, net.transition.col(pair)};
  const Index ycol = net.output_depends_on_input ? pair : x.index;
  const CanonicalVector y{net.output_space.dim(), net.output_map.col(ycol)};
  return {next, y};
}

Trajectory simulate(const Bcn& net, const CanonicalVector& x0,
                    std::span<const CanonicalVector> inputs, Index horizon) {
  if (static_cast<Index>(inputs.size()) < horizon) {
    throw DomainError("need at least " + std::to_string(horizon) +
                      " inputs, got " + std::to_string(inputs.size()));
  }
  Trajectory traj;
  traj.states.push_back(x0);
  for (Index t = 0; t < horizon; ++t) {
    const auto& u = inputs[static_cast<std::size_t>(t)];
    auto [next, y] = step(net, traj.states.back(), u);
    traj.inputs.push_back(u);
    traj.outputs.push_back(y);
    traj.states.push_back(next);
  }
  if (!net.output_depends_on_input) {
    // Output of the final state is well defined without a further input.
    traj.outputs.emplace_back(net.output_space.dim(),
                              net.output_map.col(traj.states.back().index));
  }
  return traj;
}

Trajectory simulate(const Bn& net, const CanonicalVector& x0, Index horizon) {
  const Index n = net.state_space.dim();
  if (x0.dim != n) {
    throw DimensionMismatchError("initial state does not match model '" +
                                 net.name + "'");
  }
  Trajectory traj;
  traj.states.push_back(x0);
  for (Index t = 0; t < horizon; ++t) {
    traj.states.emplace_back(n, net.transition.col(traj.states.back().index));
  }
  if (net.output_map) {
    for (const auto& s : traj.states) {
      traj.outputs.emplace_back(net.output_map->rows(),
                                net.output_map->col(s.index));
    }
  }
  return traj;
}

}  // namespace bcn
