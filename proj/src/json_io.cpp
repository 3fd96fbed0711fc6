#include "bandperm/json_io.hpp"

namespace bandperm::json_io {

using exactalg::Poly;
using exactalg::Var;

namespace {

json entries_of(const exactalg::RingMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Poly poly_field(const json& j) {
  if (j.is_number_integer()) return Poly(j.get<long long>());
  if (j.is_string()) return Poly::parse(j.get<std::string>());
  throw std::invalid_argument("expected a polynomial string or an integer");
}

Var var_named(const std::string& s) {
  if (s == "x") return Var::x();
  if (s == "y") return Var::y();
  if (s == "z") return Var::z();
  return Var::named(s);
}

}  // namespace

json to_json(const transfer::TransferMatrix& m) {
  return json{{"kind", m.kind}, {"order", m.order()}, {"index", m.labels()}, {"entries", entries_of(m.matrix)}};
}

json to_json(const exactalg::RingMatrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_of(m)}};
}

json to_json(const exactalg::RationalGF& gf) {
  return json{{"num", gf.num.str()}, {"den", gf.den.str()}, {"var", gf.var.name()}};
}

exactalg::RationalGF gf_from_json(const json& j) {
  return {poly_field(j.at("num")), poly_field(j.at("den")), var_named(j.value("var", std::string("y")))};
}

evaluate::EvalRequest request_from_json(const json& j) {
  std::vector<Poly> w;
  for (const auto& e : j.at("weights")) w.push_back(poly_field(e));
  evaluate::EvalRequest req;
  req.spec = bands::make_spec(bands::parse_family(j.at("family").get<std::string>()), j.at("k").get<unsigned>(),
                              j.value("r", 0u), std::move(w), j.value("inverse_var", false));
  req.n = j.at("n").get<unsigned>();
  req.mode = evaluate::parse_mode(j.value("mode", std::string("permanent")));
  req.method = evaluate::parse_method(j.value("method", std::string("transfer")));
  return req;
}

json to_json(const evaluate::EvalRequest& req) {
  json w = json::array();
  for (const auto& p : req.spec.weights) w.push_back(p.str());
  return json{{"family", bands::family_name(req.spec.family)},
              {"k", req.spec.k},
              {"r", req.spec.r},
              {"weights", w},
              {"n", req.n},
              {"mode", evaluate::mode_name(req.mode)},
              {"method", evaluate::method_name(req.method)},
              {"inverse_var", req.spec.inverse_var}};
}

json to_json(const evaluate::EvalResult& res) {
  return json{{"value", res.value.str()},
              {"method", evaluate::method_name(res.method)},
              {"checked_against_oracle", res.checked_against_oracle},
              {"tags", res.tags}};
}

}  // namespace bandperm::json_io
