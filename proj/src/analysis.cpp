#include "bcn/analysis.hpp"

#include <algorithm>

namespace bcn {

namespace {

std::vector<Index> rotate_to_min(std::vector<Index> cycle) {
  const auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

}  // namespace

StateSet fixed_points(const Bn& net) {
  std::vector<Index> fixed;
  for (Index i = 1; i <= net.state_space.dim(); ++i) {
    if (net.transition.col(i) == i) fixed.push_back(i);
  }
  return {net.state_space.dim(), std::move(fixed)};
}

std::vector<std::vector<Index>> limit_cycles(const Bn& net) {
  const Index n = net.state_space.dim();
  std::vector<std::uint8_t> color(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> path_pos(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> path;
  std::vector<std::vector<Index>> cycles;

  for (Index start = 1; start <= n; ++start) {
    if (color[static_cast<std::size_t>(start)] != 0) continue;
    path.clear();
    Index cur = start;
    while (color[static_cast<std::size_t>(cur)] == 0) {
      color[static_cast<std::size_t>(cur)] = 1;
      path_pos[static_cast<std::size_t>(cur)] =
          static_cast<Index>(path.size());
      path.push_back(cur);
      cur = net.transition.col(cur);
    }
    if (color[static_cast<std::size_t>(cur)] == 1) {
      // Newly discovered cycle: the tail of the current path.
      const Index from = path_pos[static_cast<std::size_t>(cur)];
      cycles.push_back(rotate_to_min(
          {path.begin() + static_cast<std::ptrdiff_t>(from), path.end()}));
    }
    for (const Index v : path) color[static_cast<std::size_t>(v)] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return cycles;
}

AttractorReport is_global_attractor(const Bn& net, const StateSet& target) {
  const Index n = net.state_space.dim();
  if (target.space_dim() != n) {
    throw DimensionMismatchError("target set lives in a space of dimension " +
                                 std::to_string(target.space_dim()) +
                                 ", model has " + std::to_string(n));
  }
  const auto cycles = limit_cycles(net);

  AttractorReport report;
  for (const auto& cycle : cycles) {
    const bool inside = std::all_of(cycle.begin(), cycle.end(),
                                    [&](Index v) { return target.contains(v); });
    if (!inside) {
      // Cycles are sorted by smallest member, so the first violation is
      // the canonical witness.
      report.is_global_attractor = false;
      report.violating_cycle = cycle;
      return report;
    }
  }

  // Least time after which each trajectory stays inside: 0 on the cycles
  // (they are fully inside), and one more than the successor's value off
  // them unless already absorbed.
  std::vector<Index> absorb(static_cast<std::size_t>(n) + 1, -1);
  for (const auto& cycle : cycles) {
    for (const Index v : cycle) absorb[static_cast<std::size_t>(v)] = 0;
  }
  std::vector<Index> path;
  Index horizon = 0;
  for (Index start = 1; start <= n; ++start) {
    if (absorb[static_cast<std::size_t>(start)] >= 0) continue;
    path.clear();
    Index cur = start;
    while (absorb[static_cast<std::size_t>(cur)] < 0) {
      path.push_back(cur);
      cur = net.transition.col(cur);
    }
    Index succ_value = absorb[static_cast<std::size_t>(cur)];
    for (std::size_t i = path.size(); i-- > 0;) {
      const Index v = path[i];
      const Index value =
          (target.contains(v) && succ_value == 0) ? 0 : succ_value + 1;
      absorb[static_cast<std::size_t>(v)] = value;
      succ_value = value;
    }
    horizon = std::max(horizon, absorb[static_cast<std::size_t>(start)]);
  }
  report.is_global_attractor = true;
  report.horizon = horizon;
  return report;
}

Index absorption_horizon(const Bn& net, const StateSet& target) {
  const AttractorReport report = is_global_attractor(net, target);
  if (!report.is_global_attractor) {
    throw DomainError("the target set is not a global attractor");
  }
  return *report.horizon;
}

ReconstructibilityReport reconstructibility(const Bcn& net) {
  if (net.output_depends_on_input) {
    throw DimensionMismatchError(
        "reconstructibility needs a standard-form model with a state-only "
        "output map (reduce the plant first)");
  }
  const Index n = net.state_space.dim();
  const Index m = net.input_space.dim();

  const auto pair_id = [n](Index a, Index b) {
    return static_cast<std::size_t>((a - 1) * n + (b - 1));
  };

  // Colors: 0 unexplored, 1 on the DFS stack, 2 finished. `longest` holds
  // the longest indistinguishable-pair path (in edges) from each node.
  std::vector<std::uint8_t> color(static_cast<std::size_t>(n) * n, 0);
  std::vector<Index> longest(static_cast<std::size_t>(n) * n, 0);

  struct Frame {
    Index a, b;
    Index next_input;   // next input to explore, 1-based
    Index child_input;  // input taken into the currently open child
  };
  std::vector<Frame> stack;

  ReconstructibilityReport report;
  Index best_path = -1;  // -1: no valid pair at all

  for (Index a0 = 1; a0 <= n; ++a0) {
    for (Index b0 = a0 + 1; b0 <= n; ++b0) {
      if (net.output_map.col(a0) != net.output_map.col(b0)) continue;
      if (color[pair_id(a0, b0)] != 0) {
        best_path = std::max(best_path, longest[pair_id(a0, b0)]);
        continue;
      }
      stack.push_back({a0, b0, 1, 0});
      color[pair_id(a0, b0)] = 1;
      while (!stack.empty()) {
        Frame& top = stack.back();
        const std::size_t tid = pair_id(top.a, top.b);
        if (top.next_input > m) {
          color[tid] = 2;
          best_path = std::max(best_path, longest[tid]);
          const Index finished = longest[tid];
          stack.pop_back();
          if (!stack.empty()) {
            const Frame& parent = stack.back();
            Index& plen = longest[pair_id(parent.a, parent.b)];
            plen = std::max(plen, finished + 1);
          }
          continue;
        }
        const Index i = top.next_input++;
        Index na = net.transition.col((i - 1) * n + top.a);
        Index nb = net.transition.col((i - 1) * n + top.b);
        if (na == nb) continue;  // merged: the final state is forced
        if (na > nb) std::swap(na, nb);
        if (net.output_map.col(na) != net.output_map.col(nb)) {
          continue;  // distinguished by the next output
        }
        const std::size_t cid = pair_id(na, nb);
        if (color[cid] == 1) {
          // A cycle of indistinguishable pairs: permanent ambiguity. The
          // cycle runs from the on-stack occurrence of (na, nb) to the top
          // frame; child_input of each frame is the edge into the next.
          std::size_t at = stack.size() - 1;
          while (!(stack[at].a == na && stack[at].b == nb)) --at;
          ReconstructibilityWitness witness;
          witness.states = {na, nb};
          for (std::size_t k = at; k + 1 < stack.size(); ++k) {
            witness.input_cycle.push_back(stack[k].child_input);
          }
          witness.input_cycle.push_back(i);
          report.reconstructible = false;
          report.witness = std::move(witness);
          return report;
        }
        if (color[cid] == 2) {
          longest[tid] = std::max(longest[tid], longest[cid] + 1);
          continue;
        }
        top.child_input = i;
        color[cid] = 1;
        stack.push_back({na, nb, 1, 0});
      }
    }
  }

  report.reconstructible = true;
  report.horizon = best_path < 0 ? 0 : best_path + 1;
  return report;
}

StateSet correct_diagnosis_set(const ClosedLoop& loop,
                               const DiagnosisSpec& spec) {
  const LogicalMatrix cmp =
      comparison_output(loop.plant.state_space, loop.context.state_space,
                        spec.plant_var, spec.context_var, spec.correspondence);
  std::vector<Index> members;
  for (Index v = 1; v <= cmp.cols(); ++v) {
    if (cmp.col(v) == 1) members.push_back(v);
  }
  return {cmp.cols(), std::move(members)};
}

StateSet healthy_set(const ClosedLoop& loop, const DiagnosisSpec& spec) {
  const SetExpr predicate = SetExpr::parse(
      spec.plant_var + " == " + spec.healthy_plant_value + " && " +
      spec.context_var + " == " + spec.healthy_context_value);
  return state_set(loop.combined_space, predicate);
}

AttractorReport verify_correct_diagnosis(const ClosedLoop& loop,
                                         const DiagnosisSpec& spec) {
  return is_global_attractor(loop.as_bn(), correct_diagnosis_set(loop, spec));
}

AttractorReport verify_successful_therapy(const ClosedLoop& loop,
                                          const DiagnosisSpec& spec) {
  const StateSet healthy = healthy_set(loop, spec);
  const StateSet correct = correct_diagnosis_set(loop, spec);
  for (const Index v : healthy.indices()) {
    if (!correct.contains(v)) {
      throw DomainError(
          "the healthy target is not contained in the correct-diagnosis set");
    }
  }
  return is_global_attractor(loop.as_bn(), healthy);
}

}  // namespace bcn
