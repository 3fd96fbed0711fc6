#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bandperm/matrix.hpp"

// Generating functions sum_n f(n) y^n as num / det(I - y M). Nothing is
// reduced to lowest terms.
namespace bandperm::genfun {

using exactalg::Poly;
using exactalg::RationalGF;
using exactalg::RingMatrix;
using exactalg::Var;

enum class GFKind { toeplitz_rook, circulant_rook, toeplitz_per, circulant_per };

GFKind parse_kind(const std::string& s);
std::string kind_name(GFKind k);

inline constexpr unsigned kMaxIndex = 256;  // (k+1)^t

struct GFResult {
  RationalGF total;
  // circulant_per only: one GF per grade l = 0..kt.
  std::vector<RationalGF> per_grade;
};

// toeplitz_rook: cofactor sum over gamma containing (k^r, 0^(t-r)) of I - y K(w x)
// circulant_rook: -y d/dy det(I - y K(w x)) / det(I - y K(w x))
// toeplitz_per:  the (s, s) cofactor of I - y Pi_{rk,t} over its determinant
// circulant_per: sum over l of -y d/dy det(I - y Pi_l) / det(I - y Pi_l)
GFResult build_gf(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights, GFKind kind,
                  Var y = Var::y(), Var x = Var::x());

// Sum_n (M^n)[i|j] y^n = (-1)^(i+j) det((I - yM) without row j, col i) / det(I - yM),
// 0-based i, j.
Poly adjugate_entry(const RingMatrix& one_minus_yM, std::size_t i, std::size_t j);

// num1/den1 == num2/den2 by cross-multiplication.
bool same_function(const RationalGF& a, const RationalGF& b);

struct SeriesReport {
  bool ok = true;
  std::optional<unsigned> first_mismatch;  // n at which the series and the evaluator differ
  Poly expected;                           // evaluator value at first_mismatch
  Poly got;                                // series coefficient at first_mismatch
};

// Coefficients n = 1..N of gf against direct(n).
SeriesReport series_check(const RationalGF& gf, const std::function<Poly(unsigned)>& direct, unsigned N);

}  // namespace bandperm::genfun
