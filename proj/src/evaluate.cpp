#include "bandperm/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

namespace bandperm::evaluate {

using bands::Family;
using exactalg::binomial;
using exactalg::factorial;
using exactalg::RingMatrix;
using transfer::WVEntry;
using transfer::WVVariant;

Mode parse_mode(const std::string& s) {
  if (s == "permanent" || s == "per") return Mode::permanent;
  if (s == "rook") return Mode::rook;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "transfer") return Method::transfer;
  if (s == "closed" || s == "closed_form" || s == "closed-form") return Method::closed_form;
  if (s == "oracle") return Method::oracle;
  if (s == "wv") return Method::wv;
  throw std::invalid_argument("unknown method '" + s + "'");
}

std::string mode_name(Mode m) { return m == Mode::permanent ? "permanent" : "rook"; }

std::string method_name(Method m) {
  switch (m) {
    case Method::transfer: return "transfer";
    case Method::closed_form: return "closed";
    case Method::oracle: return "oracle";
    case Method::wv: return "wv";
  }
  return "?";
}

namespace {

void require_family(const BandSpec& spec, Family f) {
  spec.validate();
  if (spec.family != f) throw std::invalid_argument("expected a " + bands::family_name(f) + " band spec");
}

void require_n(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

void require_free_of(const std::vector<Poly>& w, Var x) {
  for (const auto& p : w) {
    if (p.contains(x)) throw std::invalid_argument("weights must not contain the marker variable " + x.name());
  }
}

// (k^r, 0^(t-r))
State leading_state(unsigned k, unsigned t, unsigned r) {
  std::vector<unsigned> m(t, 0);
  for (unsigned i = 0; i < r; ++i) m[i] = k;
  return State(k, std::move(m));
}

bool dominates(const State& g, const State& b) {
  for (unsigned i = 1; i <= g.t(); ++i) {
    if (g.m(i) < b.m(i)) return false;
  }
  return true;
}

BigInt dominance_weight(const State& g, const State& b) {
  BigInt c = 1;
  for (unsigned i = 1; i <= b.t(); ++i) c *= binomial(g.m(i), b.m(i));
  return c;
}

State pad(const State& s, unsigned t) {
  std::vector<unsigned> m = s.mult();
  m.resize(t, 0);
  return State(s.k(), std::move(m));
}

Poly wv_trace(const BandSpec& spec, unsigned n, Mode mode, Var x) {
  auto w = mode == Mode::rook ? transfer::scaled_weights(spec.weights, Poly::var(x)) : spec.weights;
  auto tm = transfer::build_A_WV(spec.k, spec.t, spec.r, w, mode == Mode::rook ? WVVariant::W : WVVariant::V);
  return exactalg::trace_power(tm.matrix, n);
}

}  // namespace

Poly circulant_rook(const BandSpec& spec, unsigned n, Var x) {
  require_family(spec, Family::circulant);
  require_n(n);
  require_free_of(spec.weights, x);
  auto K = transfer::build_K(spec.k, spec.t, transfer::scaled_weights(spec.weights, Poly::var(x)));
  return exactalg::trace_power(K.matrix, n);
}

Poly circulant_permanent(const BandSpec& spec, unsigned n) {
  require_family(spec, Family::circulant);
  require_n(n);
  Poly total;
  for (unsigned l = 0; l <= spec.k * spec.t; ++l) {
    auto P = transfer::build_Pi(spec.k, spec.t, l, spec.weights);
    total += exactalg::trace_power(P.matrix, n);
  }
  return total;
}

Poly circulant_permanent_graded(const BandSpec& spec, unsigned n, Var x) {
  require_family(spec, Family::circulant);
  require_n(n);
  require_free_of(spec.weights, x);
  Poly total;
  for (unsigned l = 0; l <= spec.k * spec.t; ++l) {
    auto P = transfer::build_Pi(spec.k, spec.t, l, spec.weights);
    total += exactalg::trace_power(P.matrix, n) * Poly::var(x, l * n);
  }
  return total;
}

Poly circulant_eval(const BandSpec& spec, unsigned n, Mode mode, Var x) {
  return mode == Mode::rook ? circulant_rook(spec, n, x) : circulant_permanent(spec, n);
}

Poly toeplitz_eval(const BandSpec& spec, unsigned n, Mode mode, Var x) {
  require_family(spec, Family::toeplitz);
  require_n(n);
  const unsigned k = spec.k, t = spec.t, r = spec.r;
  State s0 = leading_state(k, t, r);
  if (mode == Mode::permanent) {
    auto P = transfer::build_Pi(k, t, r * k, spec.weights);
    auto idx = std::get<states::StateIndex>(P.index);
    std::size_t i = idx.rank(s0) - 1;
    return exactalg::row_of_power(P.matrix, i, n)[i];
  }
  require_free_of(spec.weights, x);
  auto K = transfer::build_K(k, t, transfer::scaled_weights(spec.weights, Poly::var(x)));
  const auto& idx = std::get<states::StateIndex>(K.index);
  auto row = exactalg::row_of_power(K.matrix, idx.rank(s0) - 1, n);
  Poly total;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (dominates(idx.states()[j], s0)) total += row[j];
  }
  return total;
}

Poly circulant_eval_wv(const BandSpec& spec, unsigned n, Mode mode, Var x) {
  require_family(spec, Family::circulant);
  require_n(n);
  if (spec.t < 1) throw std::invalid_argument("the W/V route needs t >= 1");
  if (mode == Mode::rook) require_free_of(spec.weights, x);
  return wv_trace(spec, n, mode, x);
}

Poly toeplitz_eval_wv(const BandSpec& spec, unsigned n, Mode mode, Var x) {
  require_family(spec, Family::toeplitz);
  require_n(n);
  if (spec.t < 1) throw std::invalid_argument("the W/V route needs t >= 1");
  if (mode == Mode::rook) require_free_of(spec.weights, x);
  const unsigned k = spec.k;
  auto w = mode == Mode::rook ? transfer::scaled_weights(spec.weights, Poly::var(x)) : spec.weights;
  auto tm = transfer::build_A_WV(k, spec.t, spec.r, w, mode == Mode::rook ? WVVariant::W : WVVariant::V);
  const auto& entries = std::get<transfer::WVIndex>(tm.index).entries;
  // the identity arrangement: labels 0, offsets l_{ks+i} = i
  WVEntry fin;
  for (unsigned j = 0; j < k * spec.t; ++j) {
    fin.alpha.push_back(0);
    fin.beta.push_back(static_cast<int>(j % k));
  }
  auto it = std::lower_bound(entries.begin(), entries.end(), fin);
  if (it == entries.end() || !(*it == fin)) throw std::logic_error("identity arrangement missing from the W/V index");
  std::size_t col = static_cast<std::size_t>(it - entries.begin());
  auto column = exactalg::column_of_power(tm.matrix, col, n);
  Poly total;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    bool inside = true;
    for (std::size_t j = 0; j < e.alpha.size(); ++j) {
      if (e.alpha[j] != WVEntry::kSentinel && static_cast<int>(j / k) + e.alpha[j] < 0) inside = false;
    }
    if (inside) total += column[i];
  }
  return total;
}

SubmatrixEval submatrix_eval(unsigned k, unsigned t, unsigned n, const std::vector<Poly>& weights, const State& alpha,
                             const State& beta, SubmatrixTheorem which, Var x, const oracle::Limits& lim) {
  require_n(n);
  if (t < 1) throw std::invalid_argument("submatrix identities need t >= 1");
  const unsigned m = std::min(n, t);
  if (beta.t() != m || beta.k() != k) throw std::invalid_argument("beta must lie in G_{min(n,t)}^[k]");
  if (alpha.t() != t || alpha.k() != k) throw std::invalid_argument("alpha must lie in G_t^[k]");
  const unsigned r = beta.weight();
  if (which == SubmatrixTheorem::per_Pi && alpha.weight() != r) {
    throw std::invalid_argument("alpha and beta must have the same weight");
  }
  RingMatrix sub = bands::theorem_submatrix(k, n, t, weights, beta, alpha);

  SubmatrixEval out;
  out.prefactor = 1;
  for (unsigned i = 1; i <= m; ++i) out.prefactor *= binomial(k, beta.m(i));
  State bpad = pad(beta, t);

  Poly raw;
  if (which == SubmatrixTheorem::rook_K) {
    require_free_of(weights, x);
    out.lhs = oracle::brute_rook(sub, false, x, Var::z(), lim);
    auto K = transfer::build_K(k, t, transfer::scaled_weights(weights, Poly::var(x)));
    const auto& idx = std::get<states::StateIndex>(K.index);
    auto row = exactalg::row_of_power(K.matrix, idx.rank(alpha) - 1, n);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const State& g = idx.states()[j];
      if (dominates(g, bpad)) raw += Poly(dominance_weight(g, bpad)) * row[j];
    }
  } else if (which == SubmatrixTheorem::per_Pi) {
    out.lhs = oracle::permanent_any_shape(sub, lim);
    auto P = transfer::build_Pi(k, t, r, weights);
    const auto& idx = std::get<states::StateIndex>(P.index);
    raw = exactalg::row_of_power(P.matrix, idx.rank(alpha) - 1, n)[idx.rank(bpad) - 1];
  } else {
    out.lhs = oracle::permanent_any_shape(sub, lim);
    auto A = transfer::build_A_graded(k, t, r, weights);
    const auto& idx = std::get<states::StateIndex>(A.index);
    auto row = exactalg::row_of_power(A.matrix, idx.rank(alpha) - 1, n);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const State& g = idx.states()[j];
      if (dominates(g, bpad)) raw += Poly(dominance_weight(g, bpad)) * row[j];
    }
  }
  out.equal = out.lhs * Poly(out.prefactor) == raw;
  if (!exactalg::divide_exact(raw, Poly(out.prefactor), out.rhs)) {
    throw std::domain_error("binomial prefactor does not divide the transfer-matrix side");
  }
  return out;
}

Poly closed_form_two_band_per(unsigned k, unsigned n, const Poly& a0, const Poly& a1) {
  Poly s;
  for (unsigned l = 0; l <= k; ++l) {
    s += Poly(boost::multiprecision::pow(binomial(k, l), n)) * (a0.pow(k - l) * a1.pow(l)).pow(n);
  }
  return Poly(boost::multiprecision::pow(factorial(k), n)) * s;
}

Poly closed_form_gcd(unsigned k, unsigned n, unsigned t, const Poly& a0, const Poly& at) {
  if (n < 1 || t < 1) throw std::invalid_argument("gcd form needs n, t >= 1");
  unsigned d = std::gcd(n, t);
  return closed_form_two_band_per(k, n / d, a0, at).pow(d);
}

Poly closed_form_two_band_rook(unsigned k, unsigned n, const Poly& a0, const Poly& a1, Var x) {
  require_n(n);
  double work = std::pow(static_cast<double>(k + 1), 2.0 * n);
  if (work > 2e7) throw std::length_error("two-band sum too large");
  // Coefficients keyed by (sum l1, sum l2), then assembled.
  std::map<std::pair<unsigned, unsigned>, BigInt> acc;
  std::vector<unsigned> l1(n, 0), l2(n, 0);
  auto next = [&](std::vector<unsigned>& v) {
    for (unsigned i = 0; i < n; ++i) {
      if (v[i] < k) {
        ++v[i];
        return true;
      }
      v[i] = 0;
    }
    return false;
  };
  do {
    do {
      BigInt term = 1;
      for (unsigned i = 0; i < n && term != 0; ++i) {
        unsigned s = l1[i] + l2[i];
        if (s > k) {
          term = 0;
          break;
        }
        term *= binomial(k, l1[i]) * binomial(static_cast<long long>(k) - l1[(i + 1) % n], l2[i]) *
                binomial(k, s) * factorial(s);
      }
      if (term != 0) {
        unsigned s1 = std::accumulate(l1.begin(), l1.end(), 0u), s2 = std::accumulate(l2.begin(), l2.end(), 0u);
        acc[{s1, s2}] += term;
      }
    } while (next(l2));
  } while (next(l1));
  Poly total;
  for (const auto& [key, c] : acc) {
    total += Poly(c) * a0.pow(key.first) * a1.pow(key.second) * Poly::var(x, key.first + key.second);
  }
  return total;
}

GradedEval graded_eval(const BandSpec& spec, unsigned n, Var x, const oracle::Limits& lim) {
  require_family(spec, Family::circulant_x);
  require_n(n);
  if (x != Var::x()) throw std::invalid_argument("the twisted circulant uses the variable x");
  require_free_of(spec.weights, x);
  GradedEval out;
  out.oracle = oracle::brute_permanent(bands::build_kron_band(spec, n), lim);
  Poly sum;
  for (unsigned l = 0; l <= spec.k * spec.t; ++l) {
    auto P = transfer::build_Pi(spec.k, spec.t, l, spec.weights);
    sum += exactalg::trace_power(P.matrix, n) * Poly::var(x, l);
  }
  if (spec.r > 0) {
    // sum_q w_q P^(q-r) = P^-r * sum_q w_q P^q and P^-r (x) I_k is monomial
    RingMatrix shift = bands::twisted_power(n, -static_cast<int>(spec.r));
    Poly prod(1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!shift(i, j).is_zero()) prod *= shift(i, j);
      }
    }
    sum = prod.pow(spec.k) * sum;
  }
  out.transfer = sum;
  out.equal = out.oracle == out.transfer;
  return out;
}

RingMatrix allowed_matrix(const std::vector<int>& S, unsigned n, Family family) {
  require_n(n);
  RingMatrix m(n, n);
  const int N = static_cast<int>(n);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      bool ok = false;
      for (int s : S) {
        if (family == Family::toeplitz ? j - i == s : ((j - i - s) % N + N) % N == 0) ok = true;
      }
      if (ok) m(i, j) = 1;
    }
  }
  return m;
}

CountResult count_restricted(const std::vector<int>& S, unsigned n, Family family, bool complement, Method method) {
  require_n(n);
  if (S.empty()) throw std::invalid_argument("the allowed set S must be nonempty");
  if (family == Family::circulant_x) throw std::invalid_argument("counting uses the toeplitz or circulant family");
  CountResult out;
  const int lo = *std::min_element(S.begin(), S.end());
  const int hi = *std::max_element(S.begin(), S.end());
  if (family == Family::circulant && static_cast<long>(n) < static_cast<long>(hi) - lo + 1) {
    out.warnings.push_back("n < max S - min S + 1: residues of S may collide; counted by the oracle");
    method = Method::oracle;
  }
  auto via_oracle = [&]() {
    RingMatrix a = allowed_matrix(S, n, family);
    oracle::Limits lim;
    lim.numeric_rows = 14;
    if (!complement) return oracle::brute_permanent(a, lim).to_integer();
    return oracle::brute_permanent(bands::complement_matrix(a, Poly(1)), lim).to_integer();
  };
  if (method == Method::oracle) {
    out.method = "oracle";
    out.value = via_oracle();
    return out;
  }
  if (method != Method::transfer) throw std::invalid_argument("counting supports the transfer and oracle methods");
  const unsigned r = static_cast<unsigned>(-std::min(0, lo));
  const unsigned t = static_cast<unsigned>(std::max(0, hi)) + r;
  std::vector<Poly> w(t + 1);
  for (int s : S) w[static_cast<std::size_t>(s + static_cast<int>(r))] = 1;
  auto spec = bands::make_spec(family, 1, r, w);
  out.method = "transfer";
  if (!complement) {
    Poly p = family == Family::toeplitz ? toeplitz_eval(spec, n, Mode::permanent) : circulant_permanent(spec, n);
    out.value = p.to_integer();
    return out;
  }
  Poly rook = family == Family::toeplitz ? toeplitz_eval(spec, n, Mode::rook) : circulant_rook(spec, n);
  BigInt total = 0;
  for (unsigned i = 0; i <= n; ++i) {
    BigInt ri = rook.coefficient(Var::x(), i).to_integer();
    BigInt term = factorial(n - i) * ri;
    if (i % 2) total -= term; else total += term;
  }
  out.value = total;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool middle_weights_zero(const BandSpec& spec) {
  for (unsigned i = 1; i < spec.t; ++i) {
    if (!spec.weights[i].is_zero()) return false;
  }
  return true;
}

Poly closed_form_for(const BandSpec& spec, unsigned n, Mode mode) {
  if (spec.family != Family::circulant || spec.r != 0 || spec.t < 1) {
    throw std::invalid_argument("closed forms cover circulants with r = 0 and t >= 1");
  }
  if (mode == Mode::permanent) {
    if (!middle_weights_zero(spec)) throw std::invalid_argument("closed permanent form needs w_1..w_{t-1} = 0");
    return closed_form_gcd(spec.k, n, spec.t, spec.weights[0], spec.weights[spec.t]);
  }
  if (spec.t != 1) throw std::invalid_argument("closed rook form covers two bands (t = 1) only");
  return closed_form_two_band_rook(spec.k, n, spec.weights[0], spec.weights[1]);
}

}  // namespace

EvalResult evaluate(const EvalRequest& req, const oracle::Limits& lim) {
  const BandSpec& spec = req.spec;
  spec.validate();
  require_n(req.n);
  EvalResult out;
  out.method = req.method;
  if (spec.family == Family::circulant && !bands::bands_distinct(spec, req.n)) {
    out.tags.push_back("identity-not-guaranteed");
  }
  if (req.mode == Mode::rook) require_free_of(spec.weights, Var::x());

  std::optional<Poly> oracle_value;
  auto explicit_oracle = [&]() -> std::optional<Poly> {
    RingMatrix m = bands::build_kron_band(spec, req.n);
    try {
      if (req.mode == Mode::permanent) return oracle::brute_permanent(m, lim);
      return oracle::brute_rook(m, false, Var::x(), Var::z(), lim);
    } catch (const std::length_error&) {
      return std::nullopt;
    }
  };

  switch (req.method) {
    case Method::oracle:
      oracle_value = explicit_oracle();
      if (!oracle_value) throw std::length_error("instance exceeds the oracle size guard");
      out.value = *oracle_value;
      out.checked_against_oracle = true;
      return out;
    case Method::transfer:
      if (spec.family == Family::toeplitz) {
        out.value = toeplitz_eval(spec, req.n, req.mode);
      } else if (spec.family == Family::circulant) {
        out.value = circulant_eval(spec, req.n, req.mode);
      } else {
        if (req.mode == Mode::rook) throw std::invalid_argument("no transfer identity for rook polynomials of P_n(x)");
        GradedEval g = graded_eval(spec, req.n, Var::x(), lim);
        if (!g.equal) throw VerificationError("graded identity failed: " + g.oracle.str() + " vs " + g.transfer.str());
        out.value = g.transfer;
        out.checked_against_oracle = true;
        return out;
      }
      break;
    case Method::wv:
      out.value = spec.family == Family::toeplitz ? toeplitz_eval_wv(spec, req.n, req.mode)
                  : spec.family == Family::circulant
                      ? circulant_eval_wv(spec, req.n, req.mode)
                      : throw std::invalid_argument("the W/V route covers toeplitz and circulant families");
      break;
    case Method::closed_form:
      out.value = closed_form_for(spec, req.n, req.mode);
      break;
  }
  oracle_value = explicit_oracle();
  if (oracle_value) {
    if (!(*oracle_value == out.value)) {
      throw VerificationError(method_name(req.method) + " value " + out.value.str() + " disagrees with oracle " +
                              oracle_value->str());
    }
    out.checked_against_oracle = true;
  }
  return out;
}

}  // namespace bandperm::evaluate
