#pragma once

#include <string>
#include <vector>

#include "bandperm/matrix.hpp"
#include "bandperm/states.hpp"

// Concrete band matrices: sum_i w_i T_n^(-r+i), sum_i w_i P_n^(-r+i) and the
// twisted circulant P_n(x), optionally Kronecker-multiplied by J_k.
namespace bandperm::bands {

using exactalg::Poly;
using exactalg::RingMatrix;
using exactalg::Var;

enum class Family { toeplitz, circulant, circulant_x };

Family parse_family(const std::string& name);  // "toeplitz", "circulant", "circulant-x" / "circulant_x"
std::string family_name(Family f);

struct BandSpec {
  unsigned k = 1;
  unsigned r = 0;
  unsigned t = 0;
  std::vector<Poly> weights;  // w_0..w_t; w_i sits on band -r+i
  Family family = Family::circulant;
  // Allows negative powers of P_n(x); x^-1 is the variable xinv.
  bool inverse_var = false;

  void validate() const;
};

BandSpec make_spec(Family f, unsigned k, unsigned r, std::vector<Poly> weights, bool inverse_var = false);

// T_n^(i): ones on the diagonal j - i = i.
RingMatrix toeplitz_shift(unsigned n, int i);
// P_n^s, any integer s.
RingMatrix circulant_power(unsigned n, int s);
// P_n(x): ones at j - i = 1 and x at (n, 1).
RingMatrix twisted_shift(unsigned n, Var x = Var::x());
// (P_n(x))^s from the closed forms; |s| <= n, negative s uses xinv.
RingMatrix twisted_power_formula(unsigned n, int s, Var x = Var::x());
// (P_n(x))^s for any s, reducing by (P_n(x))^n = x I.
RingMatrix twisted_power(unsigned n, int s, Var x = Var::x());

// Residues -r..-r+t are distinct mod n.
bool bands_distinct(const BandSpec& spec, unsigned n);

RingMatrix build_band_matrix(const BandSpec& spec, unsigned n, std::vector<std::string>* warnings = nullptr);
RingMatrix kron_with_J(const RingMatrix& m, unsigned k);
// build_band_matrix followed by kron_with_J(spec.k).
RingMatrix build_kron_band(const BandSpec& spec, unsigned n, std::vector<std::string>* warnings = nullptr);

// 1-based column list; repeats allowed.
RingMatrix select_columns(const RingMatrix& m, const std::vector<std::size_t>& cols);
RingMatrix complement_matrix(const RingMatrix& m, const Poly& y);

// Column list selecting the submatrix of (sum_i a_i T_{n+t}^(i)) (x) J_k
// (rows 1..nk) whose permanent / rook polynomial the entry identities
// describe. beta has min(n,t) labels, alpha has t.
std::vector<std::size_t> theorem_columns(unsigned k, unsigned n, unsigned t, const states::State& beta,
                                         const states::State& alpha);
// The rows 1..nk of (sum_i a_i T_{n+t}^(i)) (x) J_k restricted to theorem_columns.
RingMatrix theorem_submatrix(unsigned k, unsigned n, unsigned t, const std::vector<Poly>& weights,
                             const states::State& beta, const states::State& alpha);

}  // namespace bandperm::bands
