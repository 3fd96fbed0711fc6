#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bandperm/evaluate.hpp"

using namespace bandperm;
using namespace bandperm::evaluate;
using bands::Family;
using exactalg::Poly;

namespace {
Poly P(const char* s) { return Poly::parse(s); }

EvalResult run(Family f, unsigned k, unsigned r, std::vector<Poly> w, unsigned n, Mode mode,
               Method method = Method::transfer) {
  EvalRequest req;
  req.spec = bands::make_spec(f, k, r, std::move(w));
  req.n = n;
  req.mode = mode;
  req.method = method;
  return evaluate::evaluate(req);
}

Poly oracle_per(Family f, unsigned k, unsigned r, std::vector<Poly> w, unsigned n) {
  return oracle::brute_permanent(bands::build_kron_band(bands::make_spec(f, k, r, std::move(w)), n));
}
}  // namespace

TEST_CASE("circulant examples") {
  auto w = transfer::symbolic_weights(1);
  auto res = run(Family::circulant, 1, 0, w, 3, Mode::permanent);
  CHECK(res.value == P("a0^3 + a1^3"));
  CHECK(res.checked_against_oracle);
  CHECK(res.value.str() == "a0^3 + a1^3");

  auto r1 = run(Family::circulant, 1, 0, w, 1, Mode::rook);
  CHECK(r1.value == P("1 + (a0 + a1)*x"));
  CHECK(std::find(r1.tags.begin(), r1.tags.end(), "identity-not-guaranteed") != r1.tags.end());
  auto r2 = run(Family::circulant, 1, 0, w, 2, Mode::rook);
  CHECK(r2.value == P("1 + 2*(a0 + a1)*x + (a0^2 + a1^2)*x^2"));
  CHECK(r2.tags.empty());

  // r shifts the bands; per of the shifted circulant is unchanged up to relabeling
  CHECK(run(Family::circulant, 1, 1, w, 3, Mode::permanent).value == P("a0^3 + a1^3"));
}

TEST_CASE("toeplitz examples") {
  for (unsigned n = 1; n <= 5; ++n) CHECK(run(Family::toeplitz, 1, 0, {P("a0")}, n, Mode::permanent).value == P("a0").pow(n));
  CHECK(run(Family::toeplitz, 1, 1, {1, 1, 1}, 4, Mode::permanent).value == Poly(5));
  CHECK(run(Family::toeplitz, 2, 0, {P("a0")}, 2, Mode::permanent).value == Poly(4) * P("a0").pow(4));
  CHECK(run(Family::toeplitz, 1, 0, {P("a0")}, 2, Mode::rook).value == P("1 + 2*a0*x + a0^2*x^2"));
}

TEST_CASE("methods agree") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> d(-3, 3);
  for (Family f : {Family::toeplitz, Family::circulant}) {
    for (unsigned k = 1; k <= 2; ++k) {
      for (unsigned t = 1; t <= 2; ++t) {
        for (unsigned r = 0; r <= t; ++r) {
          for (unsigned n = t + 1; n <= 4 && n * k <= 8; ++n) {
            std::vector<Poly> w;
            for (unsigned i = 0; i <= t; ++i) w.push_back(d(rng));
            Poly want = oracle_per(f, k, r, w, n);
            CHECK(run(f, k, r, w, n, Mode::permanent).value == want);
            CHECK(run(f, k, r, w, n, Mode::permanent, Method::oracle).value == want);
            if (k * t <= 2) CHECK(run(f, k, r, w, n, Mode::permanent, Method::wv).value == want);
          }
        }
      }
    }
  }
  auto cf = run(Family::circulant, 2, 0, {P("a0"), P("a1")}, 3, Mode::permanent, Method::closed_form);
  CHECK(cf.value == closed_form_two_band_per(2, 3, P("a0"), P("a1")));
  CHECK_THROWS_AS(run(Family::toeplitz, 1, 0, {P("a0"), P("a1")}, 3, Mode::permanent, Method::closed_form),
                  std::invalid_argument);
}

TEST_CASE("closed forms") {
  const Poly a0 = P("a0"), a1 = P("a1");
  CHECK(closed_form_two_band_per(2, 1, a0, a1) == Poly(2) * (a0 + a1).pow(2));
  CHECK(closed_form_two_band_per(1, 3, a0, a1) == a0.pow(3) + a1.pow(3));
  CHECK(closed_form_gcd(1, 4, 2, a0, P("a2")) == (a0.pow(2) + P("a2").pow(2)).pow(2));
  CHECK(closed_form_gcd(1, 3, 1, a0, a1) == closed_form_two_band_per(1, 3, a0, a1));
  CHECK(closed_form_two_band_rook(1, 2, a0, a1) == P("1 + 2*(a0 + a1)*x + (a0^2 + a1^2)*x^2"));
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned n = 2; n <= 3; ++n) {
      auto spec = bands::make_spec(Family::circulant, k, 0, {a0, a1});
      CHECK(closed_form_two_band_rook(k, n, a0, a1) == oracle::brute_rook(bands::build_kron_band(spec, n)));
      CHECK(closed_form_two_band_per(k, n, a0, a1) == oracle::brute_permanent(bands::build_kron_band(spec, n)));
    }
  }
}

TEST_CASE("submatrix identities") {
  auto w = transfer::symbolic_weights(1);
  states::State one(1, {1});
  auto e = submatrix_eval(1, 1, 2, w, one, one, SubmatrixTheorem::per_Pi);
  CHECK(e.lhs == P("a1^2"));
  CHECK(e.equal);
  CHECK(e.prefactor == 1);
  CHECK(submatrix_eval(1, 1, 2, w, one, one, SubmatrixTheorem::per_A).equal);
  CHECK(submatrix_eval(1, 1, 2, w, one, one, SubmatrixTheorem::rook_K).equal);
}

TEST_CASE("graded circulant") {
  auto spec = bands::make_spec(Family::circulant_x, 1, 0, transfer::symbolic_weights(1));
  auto g = graded_eval(spec, 2);
  CHECK(g.equal);
  CHECK(g.transfer == P("a0^2 + a1^2*x"));
  EvalRequest req;
  req.spec = spec;
  req.n = 2;
  CHECK(evaluate::evaluate(req).value == P("a0^2 + a1^2*x"));
  req.mode = Mode::rook;
  CHECK_THROWS_AS(evaluate::evaluate(req), std::invalid_argument);
}

TEST_CASE("restricted counts") {
  CHECK(count_restricted({0}, 4, Family::circulant, true).value == 9);
  CHECK(count_restricted({0}, 4, Family::toeplitz, true).value == 9);
  CHECK(count_restricted({-1, 0, 1}, 4, Family::toeplitz, false).value == 5);
  CHECK(count_restricted({0, 1}, 4, Family::circulant, true).value == 2);
  CHECK(count_restricted({0, 1}, 5, Family::circulant, true).value == 13);
  CHECK(count_restricted({0, 1}, 6, Family::circulant, true).value == 80);
  CHECK(count_restricted({0, 1}, 6, Family::circulant, true, Method::oracle).value == 80);
  auto small = count_restricted({-2, 2}, 3, Family::circulant, false);
  CHECK_FALSE(small.warnings.empty());
  CHECK(small.value == oracle::brute_permanent(allowed_matrix({-2, 2}, 3, Family::circulant)).to_integer());
}

TEST_CASE("parsing") {
  CHECK(parse_mode("per") == Mode::permanent);
  CHECK(parse_method("closed-form") == Method::closed_form);
  CHECK(method_name(Method::closed_form) == "closed");
  CHECK_THROWS_AS(parse_method("magic"), std::invalid_argument);
}
