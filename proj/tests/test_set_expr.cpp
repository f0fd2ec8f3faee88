#include <doctest.h>

#include <algorithm>
#include <vector>

#include "bcn/set_expr.hpp"

using namespace bcn;

namespace {

StateSpace clinic_space() {
  return StateSpace{{
      {"status", {"healthy", "ill", "critical"}},
      {"therapy", {"none", "mild", "strong"}},
      {"ward", {"home", "icu"}},
  }};
}

bool holds(const StateSpace& space, const SetExpr& e,
           std::vector<Index> pos) {
  return e.eval(space, pos);
}

}  // namespace

TEST_CASE("atoms and literals") {
  const auto space = clinic_space();
  const auto eq = SetExpr::parse("status == healthy");
  CHECK(holds(space, eq, {1, 1, 1}));
  CHECK_FALSE(holds(space, eq, {2, 1, 1}));
  const auto ne = SetExpr::parse("ward != icu");
  CHECK(holds(space, ne, {1, 1, 1}));
  CHECK_FALSE(holds(space, ne, {1, 1, 2}));
  CHECK(holds(space, SetExpr::parse("true"), {3, 3, 2}));
  CHECK_FALSE(holds(space, SetExpr::parse("false"), {1, 1, 1}));
}

TEST_CASE("connectives, precedence and parentheses") {
  const auto space = clinic_space();
  // && binds tighter than ||
  const auto e =
      SetExpr::parse("status == healthy || status == ill && ward == icu");
  CHECK(holds(space, e, {1, 1, 1}));
  CHECK(holds(space, e, {2, 1, 2}));
  CHECK_FALSE(holds(space, e, {2, 1, 1}));
  const auto grouped =
      SetExpr::parse("(status == healthy || status == ill) && ward == icu");
  CHECK_FALSE(holds(space, grouped, {1, 1, 1}));
  CHECK(holds(space, grouped, {1, 1, 2}));
  const auto negated = SetExpr::parse("!(therapy == none) && !false");
  CHECK(holds(space, negated, {1, 2, 1}));
  CHECK_FALSE(holds(space, negated, {1, 1, 1}));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(SetExpr::parse(""), ParseError);
  CHECK_THROWS_AS(SetExpr::parse("status =="), ParseError);
  CHECK_THROWS_AS(SetExpr::parse("status == healthy &&"), ParseError);
  CHECK_THROWS_AS(SetExpr::parse("(status == healthy"), ParseError);
  CHECK_THROWS_AS(SetExpr::parse("status == healthy extra"), ParseError);
  try {
    SetExpr::parse("status <> healthy");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("validation against a space") {
  const auto space = clinic_space();
  CHECK_NOTHROW(SetExpr::parse("status != critical").validate(space));
  CHECK_THROWS_AS(SetExpr::parse("pulse == high").validate(space),
                  DomainError);
  CHECK_THROWS_AS(SetExpr::parse("status == sleepy").validate(space),
                  DomainError);
  CHECK_THROWS_AS(
      SetExpr::parse("pulse == high").eval(space, std::vector<Index>{1, 1, 1}),
      DomainError);
}

TEST_CASE("round trip through to_string") {
  const char* sources[] = {
      "status == healthy",
      "!(status == ill) && ward != icu",
      "true || status == critical && !(therapy == strong)",
  };
  const auto space = clinic_space();
  for (const char* src : sources) {
    const auto once = SetExpr::parse(src);
    const auto twice = SetExpr::parse(once.to_string());
    for (Index s = 1; s <= space.dim(); ++s) {
      const auto pos = space.decode_positions(s);
      CHECK(once.eval(space, pos) == twice.eval(space, pos));
    }
  }
}

TEST_CASE("state_set materializes the satisfying states") {
  const auto space = clinic_space();
  const auto set =
      state_set(space, SetExpr::parse("status == healthy && ward == home"));
  CHECK(set.space_dim() == 18);
  CHECK(set.size() == 3);
  for (Index s = 1; s <= space.dim(); ++s) {
    const auto pos = space.decode_positions(s);
    CHECK(set.contains(s) == (pos[0] == 1 && pos[2] == 1));
  }
  CHECK(std::is_sorted(set.indices().begin(), set.indices().end()));
  CHECK(state_set(space, SetExpr::parse("false")).size() == 0);
  CHECK(state_set(space, SetExpr::parse("true")).size() == 18);
}
