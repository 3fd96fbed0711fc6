#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bandperm/explicit.hpp"
#include "bandperm/oracle.hpp"
#include "bandperm/transfer.hpp"

using namespace bandperm;
using namespace bandperm::transfer;
using exactalg::Poly;

namespace {
Poly P(const char* s) { return Poly::parse(s); }
RingMatrix M(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Poly>> r;
  for (auto row : rows) {
    std::vector<Poly> v;
    for (const char* e : row) v.push_back(P(e));
    r.push_back(v);
  }
  return RingMatrix::from_rows(r);
}
}  // namespace

TEST_CASE("K") {
  CHECK(build_K(2, 0, {P("a0")}).matrix == M({{"1 + 4*a0 + 2*a0^2"}}));
  auto K = build_K(1, 1, symbolic_weights(1));
  CHECK(K.labels() == std::vector<std::string>{"[0]", "[1]"});
  CHECK(K.matrix == M({{"a0", "1"}, {"a0", "1 + a1"}}));
  CHECK(build_K(1, 1, {0, 0}).matrix == M({{"0", "1"}, {"0", "1"}}));
  CHECK(build_K(2, 2, symbolic_weights(2)).order() == 9);
  CHECK_THROWS_AS(build_K(1, 2, symbolic_weights(1)), std::invalid_argument);
  // K_0 is the rook polynomial of J_k with x = a0
  for (unsigned k = 1; k <= 4; ++k) {
    RingMatrix J = bands::kron_with_J(RingMatrix::from_rows({{Poly(1)}}), k);
    Poly rook = oracle::brute_rook(J);
    CHECK(build_K(k, 0, {Poly::var(exactalg::Var::x())}).matrix(0, 0) == rook);
  }
}

TEST_CASE("Pi") {
  auto w = symbolic_weights(2);
  for (unsigned k = 1; k <= 3; ++k) {
    CHECK(build_Pi(k, 2, 0, w).matrix == RingMatrix::from_rows({{Poly(exactalg::factorial(k)) * P("a0").pow(k)}}));
    for (unsigned l = 0; l <= k; ++l) {
      Poly want = Poly(exactalg::factorial(k) * exactalg::binomial(k, l)) * P("a0").pow(k - l) * P("a1").pow(l);
      CHECK(build_Pi(k, 1, l, symbolic_weights(1)).matrix == RingMatrix::from_rows({{want}}));
    }
  }
  auto p = build_Pi(1, 2, 1, w);
  CHECK(p.labels() == std::vector<std::string>{"[0,1]", "[1,0]"});
  CHECK(p.matrix == M({{"0", "a2"}, {"a0", "a1"}}));
  CHECK_THROWS(build_Pi(1, 2, 3, w));
  // every grade together has the size of the full index
  std::size_t total = 0;
  for (unsigned r = 0; r <= 6; ++r) total += build_Pi(2, 3, r, symbolic_weights(3)).order();
  CHECK(total == 27);
}

TEST_CASE("A graded") {
  auto w = symbolic_weights(1);
  CHECK(build_A_graded(1, 1, 0, w).order() == 2);
  CHECK(build_A_graded(2, 2, 4, symbolic_weights(2)).order() == 9);
  CHECK_THROWS(build_A_graded(1, 1, 2, w));
  // n = 1, alpha = beta = (0): per of the 1x2 row [a0 a1] restricted to column 1
  auto A = build_A_graded(1, 1, 0, w).matrix;
  CHECK(A(0, 0) + A(0, 1) == P("a0"));
}

TEST_CASE("D") {
  auto w = symbolic_weights(3);
  CHECK(build_D(0, 3, w).matrix == M({{"a0"}}));
  CHECK(build_D(3, 3, w).matrix == M({{"-a3"}}));
  CHECK(build_D(2, 2, symbolic_weights(2)).matrix == M({{"a2"}}));
  auto D1 = build_D(1, 3, w).matrix;
  auto Pi = build_Pi(1, 3, 1, {P("a0"), P("-a1"), P("-a2"), P("-a3")});
  const auto& idx = std::get<StateIndex>(Pi.index);
  auto unit = [&](unsigned i) {
    std::vector<unsigned> m(3, 0);
    m[i] = 1;
    return idx.rank(State(1, m)) - 1;
  };
  for (unsigned i = 0; i < 3; ++i) {
    for (unsigned j = 0; j < 3; ++j) CHECK(D1(i, j) == Pi.matrix(unit(i), unit(j)));
  }
  CHECK_THROWS(build_D(4, 3, w));
}

TEST_CASE("W and V sets") {
  CHECK(enumerate_WV(1, 1, 0, WVVariant::V).size() == 2);
  CHECK(enumerate_WV(1, 1, 0, WVVariant::W).size() == 3);
  for (unsigned r = 0; r <= 2; ++r) {
    auto V = enumerate_WV(1, 2, r, WVVariant::V);
    auto W = enumerate_WV(1, 2, r, WVVariant::W);
    for (const auto& e : V) CHECK(std::find(W.begin(), W.end(), e) != W.end());
    CHECK(W.size() > V.size());
  }
  CHECK_THROWS_AS(enumerate_WV(3, 3, 0, WVVariant::V), std::length_error);

  auto w = symbolic_weights(1);
  auto A = build_A_WV(1, 1, 0, w, WVVariant::V).matrix;
  for (unsigned n = 1; n <= 4; ++n) CHECK(exactalg::trace(exactalg::mat_pow(A, n)) == P("a0").pow(n) + P("a1").pow(n));
  CHECK_THROWS_AS(build_A_WV(1, 1, 0, symbolic_weights(2), WVVariant::V), std::invalid_argument);
}

TEST_CASE("closed determinant and permanent") {
  auto cf = closed_form_det_per(1, 1, 1, symbolic_weights(1));
  CHECK(cf.det_pi == P("a1"));
  CHECK(cf.per_pi == P("a1"));
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned t = 1; t <= 3; ++t) {
      auto w = symbolic_weights(t);
      for (unsigned r = 1; r <= k * t; ++r) {
        auto c = closed_form_det_per(k, t, r, w);
        auto Pi = build_Pi(k, t, r, w).matrix;
        CHECK(c.det_pi == exactalg::det(Pi));
        // no sign factor in the permanent
        for (const auto& term : c.per_pi.terms()) CHECK(term.coeff > 0);
      }
    }
  }
  CHECK_THROWS(closed_form_det_per(1, 2, 0, symbolic_weights(2)));
  CHECK_THROWS(closed_form_det_per(1, 2, 3, symbolic_weights(2)));
}

TEST_CASE("weights helpers") {
  auto w = symbolic_weights(2);
  auto g = graded_weights(w, exactalg::Var::x());
  CHECK(g[2] == P("a2*x^2"));
  CHECK(scaled_weights(w, P("x"))[0] == P("a0*x"));
}
