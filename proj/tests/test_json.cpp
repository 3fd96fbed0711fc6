#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bandperm/json_io.hpp"

using namespace bandperm;
using json_io::json;
using exactalg::Poly;

TEST_CASE("transfer matrix") {
  auto j = json_io::to_json(transfer::build_Pi(1, 1, 1, transfer::symbolic_weights(1)));
  CHECK(j.dump() == R"({"entries":[["a1"]],"index":["[1]"],"kind":"Pi","order":1})");
  auto m = json_io::to_json(exactalg::RingMatrix::identity(2));
  CHECK(m["rows"] == 2);
  CHECK(m["entries"][0][0] == "1");
  CHECK(m["entries"][0][1] == "0");
}

TEST_CASE("generating function round trip") {
  exactalg::RationalGF g{Poly::parse("a0*y"), Poly::parse("1 - a0*y"), exactalg::Var::y()};
  auto j = json_io::to_json(g);
  CHECK(j["var"] == "y");
  auto back = json_io::gf_from_json(j);
  CHECK(back.num == g.num);
  CHECK(back.den == g.den);
  CHECK(back.var == g.var);
}

TEST_CASE("request round trip") {
  json j = json::parse(R"({"family":"toeplitz","k":2,"r":1,"weights":["a0",3,"a1 + 1"],"n":4,"mode":"rook"})");
  auto req = json_io::request_from_json(j);
  CHECK(req.spec.family == bands::Family::toeplitz);
  CHECK(req.spec.k == 2);
  CHECK(req.spec.t == 2);
  CHECK(req.spec.weights[1] == Poly(3));
  CHECK(req.spec.weights[2] == Poly::parse("1 + a1"));
  CHECK(req.mode == evaluate::Mode::rook);
  CHECK(req.method == evaluate::Method::transfer);
  CHECK_FALSE(req.spec.inverse_var);

  auto again = json_io::request_from_json(json_io::to_json(req));
  CHECK(again.spec.weights == req.spec.weights);
  CHECK(again.n == 4);
  CHECK(again.spec.r == 1);

  CHECK_THROWS(json_io::request_from_json(json::parse(R"({"family":"toeplitz","k":1})")));
}

TEST_CASE("result") {
  evaluate::EvalResult res;
  res.value = Poly::parse("a0^3 + a1^3");
  res.method = evaluate::Method::closed_form;
  res.tags = {"identity-not-guaranteed"};
  auto j = json_io::to_json(res);
  CHECK(j["value"] == "a0^3 + a1^3");
  CHECK(j["method"] == "closed");
  CHECK(j["tags"].size() == 1);
}
