#include "bandperm/explicit.hpp"

#include <stdexcept>

namespace bandperm::bands {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Poly x_power(int q, Var x) {
  if (q >= 0) return Poly::var(x, static_cast<unsigned>(q));
  if (x != Var::x()) throw std::invalid_argument("negative powers are only modelled for x (via xinv)");
  return Poly::var(Var::xinv(), static_cast<unsigned>(-q));
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "toeplitz") return Family::toeplitz;
  if (name == "circulant") return Family::circulant;
  if (name == "circulant-x" || name == "circulant_x") return Family::circulant_x;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::toeplitz: return "toeplitz";
    case Family::circulant: return "circulant";
    case Family::circulant_x: return "circulant-x";
  }
  return "?";
}

void BandSpec::validate() const {
  if (k < 1) throw std::invalid_argument("band spec: k must be >= 1");
  if (r > t) throw std::invalid_argument("band spec: r must satisfy 0 <= r <= t");
  if (weights.size() != t + 1) throw std::invalid_argument("band spec: expected t+1 weights");
}

BandSpec make_spec(Family f, unsigned k, unsigned r, std::vector<Poly> weights, bool inverse_var) {
  if (weights.empty()) throw std::invalid_argument("band spec: at least one weight required");
  BandSpec s;
  s.family = f;
  s.k = k;
  s.r = r;
  s.t = static_cast<unsigned>(weights.size() - 1);
  s.weights = std::move(weights);
  s.inverse_var = inverse_var;
  s.validate();
  return s;
}

RingMatrix toeplitz_shift(unsigned n, int i) {
  RingMatrix m(n, n);
  for (int a = 0; a < static_cast<int>(n); ++a) {
    int b = a + i;
    if (b >= 0 && b < static_cast<int>(n)) m(a, b) = 1;
  }
  return m;
}

RingMatrix circulant_power(unsigned n, int s) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  RingMatrix m(n, n);
  int N = static_cast<int>(n);
  for (int a = 0; a < N; ++a) m(a, ((a + s) % N + N) % N) = 1;
  return m;
}

RingMatrix twisted_shift(unsigned n, Var x) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  RingMatrix m(n, n);
  for (unsigned a = 0; a + 1 < n; ++a) m(a, a + 1) = 1;
  m(n - 1, 0) += Poly::var(x);
  return m;
}

RingMatrix twisted_power_formula(unsigned n, int s, Var x) {
  int N = static_cast<int>(n);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (s < -N || s > N) throw std::out_of_range("closed form covers -n <= s <= n");
  RingMatrix m(n, n);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (s >= 0) {
        if (j - i == s) m(i, j) += 1;
        if (i - j == N - s) m(i, j) += Poly::var(x);
      } else {
        if (i - j == -s) m(i, j) += 1;
        if (j - i == N + s) m(i, j) += x_power(-1, x);
      }
    }
  }
  return m;
}

RingMatrix twisted_power(unsigned n, int s, Var x) {
  int N = static_cast<int>(n);
  int q = floor_div(s, N);
  int rem = s - q * N;
  RingMatrix m = twisted_power_formula(n, rem, x);
  if (q == 0) return m;
  return x_power(q, x) * m;
}

bool bands_distinct(const BandSpec& spec, unsigned n) {
  if (spec.family == Family::toeplitz) return true;
  return n >= spec.t + 1;
}

RingMatrix build_band_matrix(const BandSpec& spec, unsigned n, std::vector<std::string>* warnings) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  RingMatrix m(n, n);
  const int r = static_cast<int>(spec.r);
  switch (spec.family) {
    case Family::toeplitz:
      for (unsigned q = 0; q <= spec.t; ++q) {
        int d = static_cast<int>(q) - r;
        for (int a = 0; a < static_cast<int>(n); ++a) {
          int b = a + d;
          if (b >= 0 && b < static_cast<int>(n)) m(a, b) += spec.weights[q];
        }
      }
      break;
    case Family::circulant:
      for (unsigned q = 0; q <= spec.t; ++q) {
        int d = static_cast<int>(q) - r;
        int N = static_cast<int>(n);
        for (int a = 0; a < N; ++a) m(a, ((a + d) % N + N) % N) += spec.weights[q];
      }
      break;
    case Family::circulant_x:
      if (spec.r > 0 && !spec.inverse_var) {
        throw std::invalid_argument("negative powers of P_n(x) need the inverse variable xinv");
      }
      for (unsigned q = 0; q <= spec.t; ++q) {
        m = m + spec.weights[q] * twisted_power(n, static_cast<int>(q) - r);
      }
      break;
  }
  if (warnings && !bands_distinct(spec, n)) {
    warnings->push_back("bands -r..-r+t are not distinct modulo n=" + std::to_string(n) + " (need n >= t+1)");
  }
  return m;
}

RingMatrix kron_with_J(const RingMatrix& m, unsigned k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  RingMatrix out(m.rows() * k, m.cols() * k);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = m(i / k, j / k);
  }
  return out;
}

RingMatrix build_kron_band(const BandSpec& spec, unsigned n, std::vector<std::string>* warnings) {
  return kron_with_J(build_band_matrix(spec, n, warnings), spec.k);
}

RingMatrix select_columns(const RingMatrix& m, const std::vector<std::size_t>& cols) {
  RingMatrix out(m.rows(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] < 1 || cols[c] > m.cols()) throw std::out_of_range("column index out of range");
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, c) = m(i, cols[c] - 1);
  }
  return out;
}

RingMatrix complement_matrix(const RingMatrix& m, const Poly& y) {
  return m.map([&y](const Poly& p) { return y - p; });
}

std::vector<std::size_t> theorem_columns(unsigned k, unsigned n, unsigned t, const states::State& beta,
                                         const states::State& alpha) {
  unsigned m = std::min(n, t);
  if (beta.t() != m) throw std::invalid_argument("beta must have min(n,t) labels");
  if (alpha.t() != t) throw std::invalid_argument("alpha must have t labels");
  std::vector<std::size_t> cols;
  for (unsigned i = 1; i <= m; ++i) cols.insert(cols.end(), k - beta.m(i), static_cast<std::size_t>(k) * i);
  for (std::size_t c = static_cast<std::size_t>(m) * k + 1; c <= static_cast<std::size_t>(n) * k; ++c) {
    cols.push_back(c);
  }
  for (unsigned i = 1; i <= t; ++i) {
    cols.insert(cols.end(), alpha.m(i), static_cast<std::size_t>(n) * k + static_cast<std::size_t>(k) * i);
  }
  return cols;
}

RingMatrix theorem_submatrix(unsigned k, unsigned n, unsigned t, const std::vector<Poly>& weights,
                             const states::State& beta, const states::State& alpha) {
  auto spec = make_spec(Family::toeplitz, k, 0, weights);
  RingMatrix full = build_kron_band(spec, n + t);
  RingMatrix top(static_cast<std::size_t>(n) * k, full.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) {
    for (std::size_t j = 0; j < top.cols(); ++j) top(i, j) = full(i, j);
  }
  return select_columns(top, theorem_columns(k, n, t, beta, alpha));
}

}  // namespace bandperm::bands
