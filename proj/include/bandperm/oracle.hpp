#pragma once

#include <vector>

#include "bandperm/matrix.hpp"

// Ground truth by brute force. Everything here sums over injections
// directly; nothing is borrowed from the transfer-matrix side.
namespace bandperm::oracle {

using exactalg::Poly;
using exactalg::RingMatrix;
using exactalg::Var;

struct Limits {
  std::size_t numeric_rows = 12;
  std::size_t symbolic_rows = 9;
  std::size_t rook_rows_plus_cols = 14;
  std::size_t sym_group_order = 7;  // nk for the symmetric-group sums
};

bool is_numeric(const RingMatrix& m);

// Square numeric matrices go through Ryser's formula with Gray-code subset
// order; everything else through the injection sum. rows > cols is an error.
Poly brute_permanent(const RingMatrix& m, const Limits& lim = {});
Poly permanent_ryser(const RingMatrix& m);
// Sum over injections, memoized on the set of used columns.
Poly permanent_injections(const RingMatrix& m);
// Literal depth-first walk over all injections.
Poly permanent_naive(const RingMatrix& m);
// Permanent with the rows > cols case read as injections of columns into rows.
Poly permanent_any_shape(const RingMatrix& m, const Limits& lim = {});

// R(x; A) = 1 + sum_k x^k sum_{|S|=k} sum_sigma prod a_{i,sigma(i)}; with
// cycles, every closed orbit of sigma contributes a factor z.
Poly brute_rook(const RingMatrix& m, bool with_cycles = false, Var x = Var::x(), Var z = Var::z(),
                const Limits& lim = {});
// Coefficients r_0..r_min(m,n) of the rook polynomial.
std::vector<Poly> rook_numbers(const RingMatrix& m, const Limits& lim = {});

struct PartitionExpansion {
  Poly per;
  Poly rook;
};
// Block expansion over an ordered partition of the rows (1-based cells):
// sums over disjoint column sets K_i with |K_i| <= |H_i|.
PartitionExpansion partition_expand(const RingMatrix& m, const std::vector<std::vector<std::size_t>>& parts,
                                    Var x = Var::x(), const Limits& lim = {});
// R(x;A) = sum_{|K| <= |H|} per(A[H|K]) x^|K| R(x; A[rest|rest]), H 1-based.
Poly rook_recursion(const RingMatrix& m, const std::vector<std::size_t>& H, Var x = Var::x(), const Limits& lim = {});

// per(yJ - A) from the rook numbers of A.
Poly complement_permanent_via_rook(const RingMatrix& m, const Poly& y, const Limits& lim = {});

enum class SymSumVariant { general, distinct_bands };
// Literal double sum over Sym(nk) and label vectors alpha_i in 0..t with
// floor((sigma(i)-1)/k) - floor((i-1)/k) = alpha_i (mod n). The general form
// weighs x^(#{sigma(i) < i, alpha_i != 0 mod n} + sum floor(alpha_i/n)); the
// distinct_bands form needs n >= t+1 and weighs x^#{sigma(i) < i, alpha_i != 0}.
Poly sym_weighted_sum(unsigned k, unsigned t, unsigned n, const std::vector<Poly>& weights, Var x = Var::x(),
                      SymSumVariant variant = SymSumVariant::general, const Limits& lim = {});

}  // namespace bandperm::oracle
