#include "bandperm/genfun.hpp"

#include <cmath>
#include <stdexcept>

#include "bandperm/transfer.hpp"

namespace bandperm::genfun {

using transfer::State;

GFKind parse_kind(const std::string& s) {
  if (s == "toeplitz_rook" || s == "toeplitz-rook") return GFKind::toeplitz_rook;
  if (s == "circulant_rook" || s == "circulant-rook") return GFKind::circulant_rook;
  if (s == "toeplitz_per" || s == "toeplitz-per") return GFKind::toeplitz_per;
  if (s == "circulant_per" || s == "circulant-per") return GFKind::circulant_per;
  throw std::invalid_argument("unknown generating function '" + s + "'");
}

std::string kind_name(GFKind k) {
  switch (k) {
    case GFKind::toeplitz_rook: return "toeplitz_rook";
    case GFKind::circulant_rook: return "circulant_rook";
    case GFKind::toeplitz_per: return "toeplitz_per";
    case GFKind::circulant_per: return "circulant_per";
  }
  return "?";
}

namespace {

RingMatrix one_minus(const RingMatrix& m, Var y) {
  return RingMatrix::identity(m.rows()) - Poly::var(y) * m;
}

// -y d/dy det(I - yM) over det(I - yM): sum_{n>=1} Tr(M^n) y^n.
RationalGF log_derivative(const RingMatrix& m, Var y) {
  Poly den = exactalg::det_one_minus(m, y);
  return {-Poly::var(y) * den.derivative(y), den, y};
}

State leading_state(unsigned k, unsigned t, unsigned r) {
  std::vector<unsigned> m(t, 0);
  for (unsigned i = 0; i < r; ++i) m[i] = k;
  return State(k, std::move(m));
}

void check_free(const std::vector<Poly>& w, Var v) {
  for (const auto& p : w) {
    if (p.contains(v)) throw std::invalid_argument("weights must not contain " + v.name());
  }
}

}  // namespace

Poly adjugate_entry(const RingMatrix& one_minus_yM, std::size_t i, std::size_t j) {
  Poly c = exactalg::minor_det(one_minus_yM, j + 1, i + 1);
  return (i + j) % 2 ? -c : c;
}

GFResult build_gf(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights, GFKind kind, Var y, Var x) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (r > t) throw std::invalid_argument("r must satisfy 0 <= r <= t");
  if (weights.size() != t + 1) throw std::invalid_argument("expected t+1 weights");
  if (std::pow(static_cast<double>(k + 1), static_cast<double>(t)) > kMaxIndex) {
    throw std::length_error("generating function index (k+1)^t exceeds " + std::to_string(kMaxIndex));
  }
  if (x == y) throw std::invalid_argument("the series variable must differ from the rook marker");
  check_free(weights, y);

  GFResult out;
  switch (kind) {
    case GFKind::circulant_rook: {
      check_free(weights, x);
      auto K = transfer::build_K(k, t, transfer::scaled_weights(weights, Poly::var(x)));
      out.total = log_derivative(K.matrix, y);
      break;
    }
    case GFKind::toeplitz_rook: {
      check_free(weights, x);
      auto K = transfer::build_K(k, t, transfer::scaled_weights(weights, Poly::var(x)));
      const auto& idx = std::get<states::StateIndex>(K.index);
      State s0 = leading_state(k, t, r);
      std::size_t i = idx.rank(s0) - 1;
      RingMatrix a = one_minus(K.matrix, y);
      Poly num;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const State& g = idx.states()[j];
        bool contains = true;
        for (unsigned q = 1; q <= t; ++q) contains = contains && g.m(q) >= s0.m(q);
        if (contains) num += adjugate_entry(a, i, j);
      }
      out.total = {num, exactalg::det(a), y};
      break;
    }
    case GFKind::toeplitz_per: {
      auto P = transfer::build_Pi(k, t, r * k, weights);
      const auto& idx = std::get<states::StateIndex>(P.index);
      std::size_t i = idx.rank(leading_state(k, t, r)) - 1;
      RingMatrix a = one_minus(P.matrix, y);
      out.total = {adjugate_entry(a, i, i), exactalg::det(a), y};
      break;
    }
    case GFKind::circulant_per: {
      Poly num, den(1);
      for (unsigned l = 0; l <= k * t; ++l) {
        auto P = transfer::build_Pi(k, t, l, weights);
        RationalGF g = log_derivative(P.matrix, y);
        num = num * g.den + g.num * den;
        den *= g.den;
        out.per_grade.push_back(std::move(g));
      }
      out.total = {num, den, y};
      break;
    }
  }
  return out;
}

bool same_function(const RationalGF& a, const RationalGF& b) {
  if (a.var != b.var) return false;
  return a.num * b.den == b.num * a.den;
}

SeriesReport series_check(const RationalGF& gf, const std::function<Poly(unsigned)>& direct, unsigned N) {
  if (N < 1) throw std::invalid_argument("series order N must be >= 1");
  auto coeffs = exactalg::rational_series(gf, N);
  SeriesReport rep;
  for (unsigned n = 1; n <= N; ++n) {
    Poly want = direct(n);
    if (!(want == coeffs[n])) {
      rep.ok = false;
      rep.first_mismatch = n;
      rep.expected = std::move(want);
      rep.got = coeffs[n];
      return rep;
    }
  }
  return rep;
}

}  // namespace bandperm::genfun
