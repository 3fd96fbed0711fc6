#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bandperm/explicit.hpp"
#include "bandperm/oracle.hpp"
#include "bandperm/transfer.hpp"

namespace bandperm::evaluate {

using bands::BandSpec;
using exactalg::BigInt;
using exactalg::Poly;
using exactalg::Var;
using states::State;

enum class Mode { permanent, rook };
enum class Method { transfer, closed_form, oracle, wv };

Mode parse_mode(const std::string& s);
Method parse_method(const std::string& s);
std::string mode_name(Mode m);
std::string method_name(Method m);

// Raised when a computed value disagrees with its oracle.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Circulant lines: rook = Tr(K(w x)^n); permanent = sum_l Tr(Pi_l^n).
Poly circulant_rook(const BandSpec& spec, unsigned n, Var x = Var::x());
Poly circulant_permanent(const BandSpec& spec, unsigned n);
// sum_l Tr(Pi_l^n) x^(l n): the permanent with w_i scaled by x^i.
Poly circulant_permanent_graded(const BandSpec& spec, unsigned n, Var x = Var::x());
Poly circulant_eval(const BandSpec& spec, unsigned n, Mode mode, Var x = Var::x());

// Toeplitz lines: permanent = (Pi_{rk,t}^n)[s|s] with s = (k^r, 0^(t-r));
// rook = sum over gamma containing s of (K(w x)^n)[s|gamma].
Poly toeplitz_eval(const BandSpec& spec, unsigned n, Mode mode, Var x = Var::x());

// The same quantities through the W/V-indexed matrices.
Poly circulant_eval_wv(const BandSpec& spec, unsigned n, Mode mode, Var x = Var::x());
Poly toeplitz_eval_wv(const BandSpec& spec, unsigned n, Mode mode, Var x = Var::x());

enum class SubmatrixTheorem { rook_K, per_Pi, per_A };

struct SubmatrixEval {
  Poly lhs;        // oracle value on the selected columns
  Poly rhs;        // transfer-matrix side with the binomial prefactor divided out
  BigInt prefactor;  // prod_i C(k, beta_i)
  bool equal = false;
};
// rook_K: R(x; sub) = prefactor^-1 sum_{gamma >= beta} prod C(gamma_i, beta_i) (K(wx)^n)[alpha|gamma]
// per_Pi: per(sub) = prefactor^-1 (Pi_{r,t}^n)[alpha|beta], r = |beta| = |alpha|
// per_A:  per(sub) = prefactor^-1 sum_{gamma >= beta} prod C(gamma_i, beta_i) (A_{r,t}^n)[alpha|gamma]
SubmatrixEval submatrix_eval(unsigned k, unsigned t, unsigned n, const std::vector<Poly>& weights, const State& alpha,
                             const State& beta, SubmatrixTheorem which, Var x = Var::x(),
                             const oracle::Limits& lim = {});

// (k!)^n sum_l C(k,l)^n (a0^(k-l) a1^l)^n
Poly closed_form_two_band_per(unsigned k, unsigned n, const Poly& a0, const Poly& a1);
// per((a0 I + at P^t) (x) J_k) = [(k!)^(n/d) sum_l C(k,l)^(n/d) (a0^(k-l) at^l)^(n/d)]^d, d = gcd(n,t)
Poly closed_form_gcd(unsigned k, unsigned n, unsigned t, const Poly& a0, const Poly& at);
// R(x; (a0 I + a1 P_n) (x) J_k) as a sum over (l1, l2) in {0..k}^n x {0..k}^n.
Poly closed_form_two_band_rook(unsigned k, unsigned n, const Poly& a0, const Poly& a1, Var x = Var::x());

struct GradedEval {
  Poly oracle;
  Poly transfer;
  bool equal = false;
};
// per((sum_i w_i P_n(x)^(i-r)) (x) J_k) by brute force against sum_l Tr(Pi_l^n) x^l.
GradedEval graded_eval(const BandSpec& spec, unsigned n, Var x = Var::x(), const oracle::Limits& lim = {});

struct CountResult {
  BigInt value;
  std::string method;
  std::vector<std::string> warnings;
};
// Permutations with sigma(i) - i in S (toeplitz) or in S + nZ (circulant);
// complement counts those avoiding S.
CountResult count_restricted(const std::vector<int>& S, unsigned n, bands::Family family, bool complement,
                             Method method = Method::transfer);
// The 0/1 allowed-position matrix.
exactalg::RingMatrix allowed_matrix(const std::vector<int>& S, unsigned n, bands::Family family);

struct EvalRequest {
  BandSpec spec;
  unsigned n = 1;
  Mode mode = Mode::permanent;
  Method method = Method::transfer;
};

struct EvalResult {
  Poly value;
  Method method = Method::transfer;
  bool checked_against_oracle = false;
  std::vector<std::string> tags;
};

// Dispatches a request; when the oracle fits its limits the value is
// compared against it and VerificationError is raised on mismatch.
EvalResult evaluate(const EvalRequest& req, const oracle::Limits& lim = {});

}  // namespace bandperm::evaluate
