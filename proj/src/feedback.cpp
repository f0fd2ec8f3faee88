#include "bcn/feedback.hpp"

#include <unordered_set>

#include "bcn/parallel.hpp"

namespace bcn {

Bn ClosedLoop::as_bn() const {
  return make_bn(context.name + "+" + plant.name, combined_space, transition,
                 psi);
}

ClosedLoop compose(const Bcn& context, const Bcn& plant, int threads) {
  const Index nx = context.state_space.dim();
  const Index nu = context.input_space.dim();
  const Index ny = context.output_space.dim();
  const Index ns = plant.state_space.dim();

  if (plant.output_space.dim() != nu) {
    throw DimensionMismatchError(
        "plant output dimension " + std::to_string(plant.output_space.dim()) +
        " does not match context input dimension " + std::to_string(nu));
  }
  if (plant.input_space.dim() != checked_mul(ny, nu)) {
    throw DimensionMismatchError(
        "plant input dimension " + std::to_string(plant.input_space.dim()) +
        " is not context output dim * plant output dim = " +
        std::to_string(ny * nu));
  }
  if (context.output_depends_on_input || plant.output_depends_on_input) {
    throw DimensionMismatchError(
        "feedback composition needs state-only output maps on both sides");
  }

  const Index nv = checked_mul(ns, nx);
  std::vector<Index> a(static_cast<std::size_t>(nv));
  std::vector<Index> b(static_cast<std::size_t>(nv));
  std::vector<Index> w(static_cast<std::size_t>(nv));
  std::vector<Index> psi(static_cast<std::size_t>(nv));

  // Column v = (s-1)*Nx + x of every matrix is evaluated directly from the
  // semantic contract; the literal semi-tensor chain for A and B would
  // materialize swap matrices at the square of the combined dimension.
  parallel_for(
      0, nv,
      [&](Index lo, Index hi) {
        for (Index c = lo; c < hi; ++c) {
          const Index s = c / nx + 1;
          const Index x = c % nx + 1;
          const Index u = plant.output_map.col(s);
          const Index y = context.output_map.col(x);
          const Index plant_in = (y - 1) * nu + u;
          const Index s_next = plant.transition.col((plant_in - 1) * ns + s);
          const Index x_next = context.transition.col((u - 1) * nx + x);
          a[static_cast<std::size_t>(c)] = s_next;
          b[static_cast<std::size_t>(c)] = x_next;
          w[static_cast<std::size_t>(c)] = (s_next - 1) * nx + x_next;
          psi[static_cast<std::size_t>(c)] = y;
        }
      },
      threads);

  return ClosedLoop{context,
                    plant,
                    LogicalMatrix(ns, std::move(a)),
                    LogicalMatrix(nx, std::move(b)),
                    LogicalMatrix(nv, std::move(w)),
                    LogicalMatrix(ny, std::move(psi)),
                    product_space(plant.state_space, context.state_space)};
}

Bcn reduce_plant(const Bcn& plant) {
  const Index ns = plant.state_space.dim();
  const Index nu = plant.output_space.dim();
  if (plant.output_depends_on_input) {
    throw DimensionMismatchError(
        "plant reduction needs a state-only output map");
  }
  if (plant.input_space.dim() % nu != 0) {
    throw DimensionMismatchError(
        "plant input dimension " + std::to_string(plant.input_space.dim()) +
        " does not factor as (external input) * (output dimension " +
        std::to_string(nu) + ")");
  }
  const Index ny = plant.input_space.dim() / nu;

  // The reduced input space keeps the leading (high-order) input variables
  // when their radices multiply exactly to Ny; otherwise a single
  // synthetic variable stands in.
  std::vector<VariableSpec> yvars;
  Index acc = 1;
  for (const VariableSpec& var : plant.input_space.variables()) {
    if (acc == ny) break;
    yvars.push_back(var);
    acc = checked_mul(acc, var.cardinality());
  }
  StateSpace reduced_input;
  if (acc == ny) {
    reduced_input = StateSpace(std::move(yvars));
  } else {
    std::vector<std::string> labels;
    for (Index i = 1; i <= ny; ++i) labels.push_back("y" + std::to_string(i));
    reduced_input = StateSpace({{"y", std::move(labels)}});
  }

  std::vector<Index> trans(static_cast<std::size_t>(checked_mul(ny, ns)));
  for (Index y = 1; y <= ny; ++y) {
    for (Index s = 1; s <= ns; ++s) {
      const Index u = plant.output_map.col(s);
      const Index full_in = (y - 1) * nu + u;
      trans[static_cast<std::size_t>((y - 1) * ns + s - 1)] =
          plant.transition.col((full_in - 1) * ns + s);
    }
  }
  return make_bcn(plant.name + "_reduced", std::move(reduced_input),
                  plant.state_space, plant.output_space,
                  LogicalMatrix(ns, std::move(trans)), plant.output_map,
                  false);
}

LogicalMatrix comparison_output(
    const StateSpace& plant_space, const StateSpace& context_space,
    const std::string& plant_var, const std::string& context_var,
    const std::map<std::string, std::string>& correspondence) {
  const std::size_t ppos = plant_space.variable_position(plant_var);
  const std::size_t cpos = context_space.variable_position(context_var);
  const VariableSpec& pvar = plant_space.variables()[ppos];
  const VariableSpec& cvar = context_space.variables()[cpos];

  std::unordered_set<std::string> targets;
  for (const auto& [from, to] : correspondence) {
    pvar.value_index(from);
    if (!targets.insert(to).second) {
      throw DomainError("correspondence maps two values onto '" + to + "'");
    }
  }

  // Map each plant value position to the matching context value position
  // (0 when unmapped).
  std::vector<Index> matches(static_cast<std::size_t>(pvar.cardinality()), 0);
  for (const auto& [from, to] : correspondence) {
    matches[static_cast<std::size_t>(pvar.value_index(from) - 1)] =
        cvar.value_index(to);
  }

  const Index ns = plant_space.dim();
  const Index nx = context_space.dim();
  std::vector<Index> cols(static_cast<std::size_t>(checked_mul(ns, nx)));
  std::vector<Index> spos(plant_space.variables().size());
  std::vector<Index> xpos(context_space.variables().size());
  for (Index s = 1; s <= ns; ++s) {
    spos = plant_space.decode_positions(s);
    const Index want = matches[static_cast<std::size_t>(spos[ppos] - 1)];
    for (Index x = 1; x <= nx; ++x) {
      xpos = context_space.decode_positions(x);
      const bool match = want != 0 && xpos[cpos] == want;
      cols[static_cast<std::size_t>((s - 1) * nx + x - 1)] = match ? 1 : 2;
    }
  }
  return {2, std::move(cols)};
}

}  // namespace bcn
