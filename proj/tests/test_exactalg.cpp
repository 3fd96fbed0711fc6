#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bandperm/matrix.hpp"

using namespace bandperm::exactalg;

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

RingMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool symbolic) {
  std::uniform_int_distribution<int> d(-3, 3);
  RingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = d(rng);
      if (symbolic && d(rng) > 1) m(i, j) += Poly(d(rng)) * Poly::var(Var::weight(static_cast<unsigned>((i + j) % 3)));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK(P("a0 + x") * P("a0 - x") == P("a0^2 - x^2"));
  CHECK(P("3*a1 + y") + Poly() == P("3*a1 + y"));
  CHECK(Poly(2) * Poly(3) == Poly(6));
  CHECK((P("a0") - P("a0")).is_zero());
  CHECK(P("x") * P("xinv") == Poly(1));
}

TEST_CASE("canonical text") {
  CHECK(P("a0*y^2 - a1*y + 1 - y - a0*y").str() == "1 - y - a0*y - a1*y + a0*y^2");
  CHECK(P("3*x^2 + 1 + 2*a0*x").str() == "1 + 2*a0*x + 3*x^2");
  CHECK(Poly().str() == "0");
  for (const char* s : {"1 - y - a0*y - a1*y + a0*y^2", "-2*a3^4*x", "a0*a1 + 7", "(a0 + 1)*(a0 - 1)"}) {
    Poly p = P(s);
    CHECK(P(p.str().c_str()) == p);
  }
  CHECK_THROWS_AS(P("a0 +"), std::invalid_argument);
}

TEST_CASE("powers and traces") {
  RingMatrix m = M({{"a0", "1"}, {"a0", "1 + a1"}});
  CHECK(mat_pow(m, 0) == RingMatrix::identity(2));
  CHECK(mat_pow(m, 1) == m);
  CHECK(mat_pow(M({{"0", "1"}, {"1", "1"}}), 5)(0, 0) == Poly(3));
  CHECK(mat_pow(M({{"0", "1"}, {"1", "1"}}), 5)(1, 1) == Poly(8));
  CHECK(trace(RingMatrix::identity(4)) == Poly(4));
  CHECK(trace(m) == P("1 + a0 + a1"));
  CHECK(trace(mat_pow(m, 2)) == P("1 + 2*a0 + 2*a1 + a0^2 + a1^2"));
  CHECK(trace_power(m, 2) == trace(mat_pow(m, 2)));
  CHECK(row_of_power(m, 1, 3)[0] == mat_pow(m, 3)(1, 0));
  CHECK(column_of_power(m, 1, 3)[0] == mat_pow(m, 3)(0, 1));
  CHECK_THROWS_AS(trace(RingMatrix(2, 3)), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    RingMatrix a = random_matrix(rng, 3, true);
    CHECK(mat_pow(a, 5) == mat_pow(a, 2) * mat_pow(a, 3));
  }
}

TEST_CASE("determinants") {
  CHECK(det(M({{"a", "b"}, {"c", "d"}})) == P("a*d - b*c"));
  CHECK(det(RingMatrix::identity(6)) == Poly(1));
  RingMatrix m = M({{"a0", "1"}, {"a0", "1 + a1"}});
  CHECK(det(RingMatrix::identity(2) - Poly::var(Var::y()) * m) == P("1 - (a0 + a1 + 1)*y + a0*a1*y^2"));
  CHECK(det_one_minus(m, Var::y()) == P("1 - (a0 + a1 + 1)*y + a0*a1*y^2"));
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      RingMatrix a = random_matrix(rng, n, n <= 4);
      CHECK(det_berkowitz(a) == det_cofactor(a));
    }
  }
}

TEST_CASE("minors") {
  CHECK(minor_det(M({{"a"}}), 1, 1) == Poly(1));
  CHECK(minor_det(M({{"a", "b"}, {"c", "d"}}), 1, 1) == P("d"));
  CHECK(minor_det(RingMatrix::identity(3), 2, 2) == Poly(1));
  CHECK_THROWS_AS(minor_det(RingMatrix::identity(3), 4, 1), std::out_of_range);
}

TEST_CASE("characteristic polynomials") {
  Var lam = Var::named("lambda");
  CHECK(charpoly(RingMatrix::identity(2), lam) == P("lambda^2 - 2*lambda + 1"));
  CHECK(charpoly(M({{"a0"}}), lam) == P("lambda - a0"));
  CHECK(charpoly(M({{"0", "1"}, {"1", "0"}}), lam) == P("lambda^2 - 1"));
  CHECK_THROWS_AS(charpoly(M({{"lambda"}}), lam), std::invalid_argument);
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 5; ++n) {
    RingMatrix a = random_matrix(rng, n, true);
    Poly at0 = charpoly(a, lam).substitute(lam, Poly(0));
    CHECK(at0 == (n % 2 ? -det(a) : det(a)));
  }
}

TEST_CASE("derivatives") {
  Var a0 = Var::weight(0), a1 = Var::weight(1);
  CHECK(P("a0^2*a1").derivative(a0) == P("2*a0*a1"));
  CHECK(P("a0^2").derivative(a1).is_zero());
  CHECK(P("1 - (a0 + a1 + 1)*y + a0*y^2").derivative(Var::y()) == P("-(a0 + a1 + 1) + 2*a0*y"));
  Poly f = P("a0^3 + 2*a0*a1 - 5"), g = P("a0*a1^2 + a0 + 3");
  CHECK((f * g).derivative(a0) == f.derivative(a0) * g + f * g.derivative(a0));
}

TEST_CASE("series expansion") {
  auto c = rational_series({Poly(1), P("1 - y")}, 3);
  CHECK(c == std::vector<Poly>{1, 1, 1, 1});
  c = rational_series({P("y"), P("1 - y - y^2")}, 5);
  CHECK(c == std::vector<Poly>{0, 1, 1, 2, 3, 5});
  c = rational_series({P("a0*y"), P("1 - a0*y")}, 2);
  CHECK(c == std::vector<Poly>{Poly(0), P("a0"), P("a0^2")});
  CHECK_THROWS_AS(rational_series({Poly(1), P("2 - y")}, 3), std::domain_error);

  RationalGF g{P("1 + a0*y"), P("1 - 2*y + a1*y^2")};
  auto s = rational_series(g, 6);
  Poly back;
  for (unsigned i = 0; i <= 6; ++i) back += s[i] * Poly::var(Var::y(), i);
  back = back * g.den;
  for (unsigned i = 0; i <= 6; ++i) CHECK(back.coefficient(Var::y(), i) == g.num.coefficient(Var::y(), i));
}

TEST_CASE("exact division and binomials") {
  Poly q;
  CHECK(divide_exact(P("a0^2 - 1"), P("a0 - 1"), q));
  CHECK(q == P("a0 + 1"));
  CHECK_FALSE(divide_exact(P("a0^2 + 1"), P("a0 - 1"), q));
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(factorial(10) == 3628800);
}
