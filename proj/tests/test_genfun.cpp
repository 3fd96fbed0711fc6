#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bandperm/evaluate.hpp"
#include "bandperm/genfun.hpp"

using namespace bandperm;
using namespace bandperm::genfun;
using exactalg::Poly;

namespace {
Poly P(const char* s) { return Poly::parse(s); }
}  // namespace

TEST_CASE("circulant permanent by grade") {
  auto g = build_gf(1, 1, 0, transfer::symbolic_weights(1), GFKind::circulant_per);
  REQUIRE(g.per_grade.size() == 2);
  CHECK(same_function(g.per_grade[0], {P("a0*y"), P("1 - a0*y")}));
  CHECK(same_function(g.per_grade[1], {P("a1*y"), P("1 - a1*y")}));
  auto s = exactalg::rational_series(g.total, 4);
  for (unsigned n = 1; n <= 4; ++n) CHECK(s[n] == P("a0").pow(n) + P("a1").pow(n));
  CHECK(s[0] == Poly(0));
}

TEST_CASE("circulant rook") {
  auto w = transfer::symbolic_weights(1);
  auto g = build_gf(1, 1, 0, w, GFKind::circulant_rook);
  CHECK(g.total.den == P("1 - (1 + a0*x + a1*x)*y + a0*a1*x^2*y^2"));
  auto spec = bands::make_spec(bands::Family::circulant, 1, 0, w);
  auto rep = series_check(
      g.total, [&](unsigned n) { return n < 2 ? evaluate::circulant_rook(spec, n) : oracle::brute_rook(bands::build_kron_band(spec, n)); },
      5);
  CHECK(rep.ok);
}

TEST_CASE("toeplitz kinds") {
  auto fib = build_gf(1, 2, 1, {1, 1, 1}, GFKind::toeplitz_per).total;
  CHECK(fib.den == P("1 - y - y^2"));
  auto s = exactalg::rational_series(fib, 6);
  const long long want[] = {1, 1, 2, 3, 5, 8, 13};
  for (unsigned n = 0; n <= 6; ++n) CHECK(s[n] == Poly(want[n]));

  auto w = transfer::symbolic_weights(2);
  for (unsigned r = 0; r <= 2; ++r) {
    auto spec = bands::make_spec(bands::Family::toeplitz, 1, r, w);
    auto per = build_gf(1, 2, r, w, GFKind::toeplitz_per).total;
    CHECK(series_check(per, [&](unsigned n) { return oracle::brute_permanent(bands::build_kron_band(spec, n)); }, 4).ok);
    auto rook = build_gf(1, 2, r, w, GFKind::toeplitz_rook).total;
    CHECK(series_check(rook, [&](unsigned n) { return oracle::brute_rook(bands::build_kron_band(spec, n)); }, 4).ok);
  }
}

TEST_CASE("mismatch is reported") {
  auto g = build_gf(1, 1, 0, transfer::symbolic_weights(1), GFKind::circulant_per).total;
  g.num += P("y^3");
  auto rep = series_check(g, [](unsigned n) { return P("a0").pow(n) + P("a1").pow(n); }, 5);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.first_mismatch.has_value());
  CHECK(*rep.first_mismatch == 3);
  CHECK(rep.expected == P("a0^3 + a1^3"));
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(build_gf(3, 5, 0, transfer::symbolic_weights(5), GFKind::toeplitz_per), std::length_error);
  CHECK_THROWS_AS(build_gf(1, 1, 0, {P("y"), P("a1")}, GFKind::toeplitz_per), std::invalid_argument);
  CHECK_THROWS_AS(build_gf(1, 1, 0, {P("x"), P("a1")}, GFKind::circulant_rook), std::invalid_argument);
  CHECK_THROWS_AS(build_gf(1, 1, 2, transfer::symbolic_weights(1), GFKind::toeplitz_per), std::invalid_argument);
  CHECK_THROWS_AS(series_check({Poly(1), Poly(1)}, [](unsigned) { return Poly(); }, 0), std::invalid_argument);
  CHECK(parse_kind("toeplitz-rook") == GFKind::toeplitz_rook);
  CHECK(kind_name(GFKind::circulant_per) == "circulant_per");
}
