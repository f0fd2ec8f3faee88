#include <doctest.h>

#include <random>

#include "bcn/feedback.hpp"
#include "support/dense.hpp"

using namespace bcn;
using namespace bcn::testing;

namespace {

StateSpace labeled(const std::string& var, Index k) {
  std::vector<std::string> values;
  for (Index i = 1; i <= k; ++i) values.push_back(var + std::to_string(i));
  return StateSpace{{{var, std::move(values)}}};
}

struct Pair {
  Bcn context;
  Bcn plant;
};

/// Random loop-compatible pair: context (u -> x, output y) and plant
/// ((y,u) -> s, output u).
Pair random_pair(std::mt19937_64& rng, Index nu, Index nx, Index ny,
                 Index ns) {
  auto context = make_bcn(
      "ctx", labeled("u", nu), labeled("x", nx), labeled("y", ny),
      random_logical(rng, nx, nx * nu), random_logical(rng, ny, nx), false);
  auto plant = make_bcn(
      "plt", product_space(labeled("yin", ny), labeled("uin", nu)),
      labeled("s", ns), labeled("uo", nu), random_logical(rng, ns, ns * ny * nu),
      random_logical(rng, nu, ns), false);
  return {std::move(context), std::move(plant)};
}

LogicalMatrix vec(Index dim, Index i) {
  return LogicalMatrix::from_vector({dim, i});
}

}  // namespace

TEST_CASE("compose rejects mismatched interconnections") {
  std::mt19937_64 rng(3);
  auto [context, plant] = random_pair(rng, 2, 3, 2, 4);
  CHECK_THROWS_AS(compose(plant, context), DimensionMismatchError);
  auto bad_plant = plant;
  bad_plant = make_bcn("plt", labeled("w", 3), plant.state_space,
                       plant.output_space, random_logical(rng, 4, 12),
                       plant.output_map, false);
  CHECK_THROWS_AS(compose(context, bad_plant), DimensionMismatchError);
}

TEST_CASE("closed loop matches the semi-tensor oracle column by column") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<Index> small(1, 4);
  for (int round = 0; round < 40; ++round) {
    const Index nu = small(rng), nx = small(rng), ny = small(rng),
                ns = small(rng);
    const auto [context, plant] = random_pair(rng, nu, nx, ny, ns);
    const auto loop = compose(context, plant);

    REQUIRE(loop.transition.rows() == ns * nx);
    REQUIRE(loop.transition.cols() == ns * nx);
    REQUIRE(loop.psi.rows() == ny);
    CHECK(loop.transition == columnwise_stp(loop.a_matrix, loop.b_matrix));
    CHECK(loop.combined_space.dim() == ns * nx);

    for (Index s = 1; s <= ns; ++s) {
      for (Index x = 1; x <= nx; ++x) {
        // oracle: everything through explicit semi-tensor products
        const auto u = stp(plant.output_map, vec(ns, s));
        const auto y = stp(context.output_map, vec(nx, x));
        const auto s_next = stp(
            plant.transition,
            stp(stp(y, u), vec(ns, s)));
        const auto x_next = stp(context.transition, stp(u, vec(nx, x)));
        const Index v = stp_vec({ns, s}, {nx, x}).index;
        CHECK(loop.a_matrix.col(v) == s_next.col(1));
        CHECK(loop.b_matrix.col(v) == x_next.col(1));
        CHECK(loop.transition.col(v) ==
              stp_vec(s_next.column(1), x_next.column(1)).index);
        CHECK(loop.psi.col(v) == y.col(1));
      }
    }
  }
}

TEST_CASE("closed-loop trajectories equal lock-step component simulation") {
  std::mt19937_64 rng(977);
  std::uniform_int_distribution<Index> small(1, 5);
  for (int round = 0; round < 30; ++round) {
    const Index nu = small(rng), nx = small(rng), ny = small(rng),
                ns = small(rng);
    const auto [context, plant] = random_pair(rng, nu, nx, ny, ns);
    const auto loop = compose(context, plant);
    const auto bn = loop.as_bn();

    Index s = std::uniform_int_distribution<Index>(1, ns)(rng);
    Index x = std::uniform_int_distribution<Index>(1, nx)(rng);
    const Index v0 = stp_vec({ns, s}, {nx, x}).index;
    const auto traj = simulate(bn, {ns * nx, v0}, 2 * ns * nx);

    for (std::size_t t = 0; t < traj.states.size(); ++t) {
      CHECK(traj.states[t] == stp_vec({ns, s}, {nx, x}));
      REQUIRE(t < traj.outputs.size());
      // lock-step: both sides read each other's current output
      const auto [s2, u] = step(plant, {ns, s},
                                {ny * nu,
                                 stp_vec({ny, context.output_map.col(x)},
                                         {nu, plant.output_map.col(s)})
                                     .index});
      const auto [x2, y] = step(context, {nx, x}, u);
      CHECK(traj.outputs[t] == y);
      s = s2.index;
      x = x2.index;
    }
  }
}

TEST_CASE("plant reduction substitutes the self-feedback") {
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<Index> small(1, 4);
  for (int round = 0; round < 30; ++round) {
    const Index nu = small(rng), ny = small(rng), ns = small(rng);
    const auto plant = random_pair(rng, nu, 2, ny, ns).plant;
    const auto reduced = reduce_plant(plant);

    CHECK(reduced.input_space.dim() == ny);
    CHECK(reduced.state_space.dim() == ns);
    CHECK(reduced.output_map == plant.output_map);

    // oracle: the reduced transition is F (I_ny (x) H Phi_ns) in index form
    const auto oracle =
        stp(plant.transition,
            kron(LogicalMatrix::identity(ny),
                 stp(plant.output_map, power_reducing_matrix(ns))));
    CHECK(reduced.transition == oracle);
  }
}

TEST_CASE("plant reduction keeps named leading input variables") {
  std::mt19937_64 rng(556);
  const auto plant = random_pair(rng, 2, 2, 3, 2).plant;
  const auto reduced = reduce_plant(plant);
  REQUIRE(reduced.input_space.variables().size() == 1);
  CHECK(reduced.input_space.variables()[0].name == "yin");

  // input space that does not factor cleanly falls back to a synthetic var
  const auto odd = make_bcn("odd", labeled("w", 6), labeled("s", 2),
                            labeled("uo", 2), random_logical(rng, 2, 12),
                            random_logical(rng, 2, 2), false);
  const auto odd_reduced = reduce_plant(odd);
  CHECK(odd_reduced.input_space.dim() == 3);
  CHECK(odd_reduced.input_space.variables()[0].name == "y");

  const auto indivisible = make_bcn(
      "bad", labeled("w", 5), labeled("s", 2), labeled("uo", 2),
      random_logical(rng, 2, 10), random_logical(rng, 2, 2), false);
  CHECK_THROWS_AS(reduce_plant(indivisible), DimensionMismatchError);
}

TEST_CASE("comparison output marks exactly the agreeing states") {
  const StateSpace plant_space{{
      {"cond", {"ok", "mild", "bad", "grim"}},
      {"aux", {"a", "b"}},
  }};
  const StateSpace context_space{{
      {"est", {"ok", "mild", "unsure", "bad", "grim"}},
  }};
  const std::map<std::string, std::string> corr{
      {"ok", "ok"}, {"mild", "mild"}, {"bad", "bad"}, {"grim", "grim"}};
  const auto cmp = comparison_output(plant_space, context_space, "cond", "est",
                                     corr);
  REQUIRE(cmp.rows() == 2);
  REQUIRE(cmp.cols() == plant_space.dim() * context_space.dim());
  for (Index s = 1; s <= plant_space.dim(); ++s) {
    const auto spos = plant_space.decode_positions(s);
    for (Index x = 1; x <= context_space.dim(); ++x) {
      const auto xpos = context_space.decode_positions(x);
      const std::string& pv =
          plant_space.variables()[0].values[static_cast<std::size_t>(spos[0] - 1)];
      const std::string& cv =
          context_space.variables()[0].values[static_cast<std::size_t>(xpos[0] - 1)];
      const bool agree = corr.count(pv) != 0 && corr.at(pv) == cv;
      const Index v = stp_vec({plant_space.dim(), s}, {context_space.dim(), x}).index;
      CHECK(cmp.col(v) == (agree ? 1 : 2));
    }
  }
}

TEST_CASE("comparison output validation") {
  const StateSpace p{{{"cond", {"ok", "bad"}}}};
  const StateSpace c{{{"est", {"ok", "bad"}}}};
  CHECK_THROWS_AS(
      comparison_output(p, c, "cond", "est", {{"ok", "ok"}, {"bad", "ok"}}),
      DomainError);
  CHECK_THROWS_AS(comparison_output(p, c, "cond", "est", {{"fine", "ok"}}),
                  DomainError);
  CHECK_THROWS_AS(comparison_output(p, c, "nope", "est", {{"ok", "ok"}}),
                  DomainError);
  // unmapped plant values never match
  const auto cmp = comparison_output(p, c, "cond", "est", {{"ok", "ok"}});
  CHECK(cmp.col(1) == 1);
  CHECK(cmp.col(2) == 2);
  CHECK(cmp.col(3) == 2);
  CHECK(cmp.col(4) == 2);
}
