#pragma once

#include <json.hpp>

#include "bandperm/evaluate.hpp"
#include "bandperm/genfun.hpp"
#include "bandperm/transfer.hpp"

namespace bandperm::json_io {

using nlohmann::json;

// {kind, order, index: [labels], entries: [[poly text]]}
json to_json(const transfer::TransferMatrix& m);
// {rows, cols, entries: [[poly text]]}
json to_json(const exactalg::RingMatrix& m);
// {num, den, var}
json to_json(const exactalg::RationalGF& gf);
exactalg::RationalGF gf_from_json(const json& j);

// {family, k, r, weights: [text], n, mode, method, inverse_var}; missing
// mode / method / inverse_var take their defaults.
evaluate::EvalRequest request_from_json(const json& j);
json to_json(const evaluate::EvalRequest& req);
// {value, method, checked_against_oracle, tags}
json to_json(const evaluate::EvalResult& res);

}  // namespace bandperm::json_io
