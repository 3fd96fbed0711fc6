#include "bandperm/matrix.hpp"

#include <stdexcept>

namespace bandperm::exactalg {

namespace {

void require_square(const RingMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw std::invalid_argument(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", not square");
  }
}

}  // namespace

RingMatrix::RingMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
}

RingMatrix RingMatrix::from_rows(const std::vector<std::vector<Poly>>& rows) {
  std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
  RingMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RingMatrix RingMatrix::identity(std::size_t n) {
  RingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RingMatrix RingMatrix::transpose() const {
  RingMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RingMatrix RingMatrix::map(const std::function<Poly(const Poly&)>& f) const {
  RingMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = f(entries_[i]);
  return m;
}

RingMatrix RingMatrix::derivative(Var v) const {
  return map([v](const Poly& p) { return p.derivative(v); });
}

RingMatrix RingMatrix::substitute(const std::map<Var, Poly>& values) const {
  return map([&values](const Poly& p) { return p.substitute(values); });
}

RingMatrix RingMatrix::drop(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("drop index out of range");
  RingMatrix m(rows_ - 1, cols_ - 1);
  for (std::size_t a = 0, ra = 0; a < rows_; ++a) {
    if (a == i) continue;
    for (std::size_t b = 0, cb = 0; b < cols_; ++b) {
      if (b == j) continue;
      m(ra, cb++) = (*this)(a, b);
    }
    ++ra;
  }
  return m;
}

bool RingMatrix::contains(Var v) const {
  for (const auto& e : entries_) {
    if (e.contains(v)) return true;
  }
  return false;
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch in addition");
  RingMatrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] += b.entries_[i];
  return m;
}

RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch in subtraction");
  RingMatrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] -= b.entries_[i];
  return m;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in product");
  RingMatrix m(a.rows_, b.cols_);
  // nonzero columns of each row of b
  std::vector<std::vector<std::size_t>> bnz(b.rows_);
  for (std::size_t k = 0; k < b.rows_; ++k) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (!b(k, j).is_zero()) bnz[k].push_back(j);
    }
  }
  std::vector<std::vector<Poly::Term>> scratch(b.cols_);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    touched.clear();
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Poly& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j : bnz[k]) {
        auto& acc = scratch[j];
        if (acc.empty()) touched.push_back(j);
        for (const auto& tx : x.terms()) {
          for (const auto& ty : b(k, j).terms()) acc.push_back({tx.mono * ty.mono, tx.coeff * ty.coeff});
        }
      }
    }
    for (std::size_t j : touched) {
      m(i, j) = Poly::from_terms(std::move(scratch[j]));
      scratch[j].clear();
    }
  }
  return m;
}

RingMatrix operator*(const Poly& s, const RingMatrix& m) {
  return m.map([&s](const Poly& p) { return s * p; });
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

RingMatrix mat_pow(const RingMatrix& m, unsigned n) {
  require_square(m, "mat_pow");
  RingMatrix result = RingMatrix::identity(m.rows());
  RingMatrix base = m;
  bool first = true;
  while (n > 0) {
    if (n & 1u) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Poly trace_power(const RingMatrix& m, unsigned n) {
  require_square(m, "trace_power");
  if (n == 0) return Poly(static_cast<long long>(m.rows()));
  RingMatrix p = mat_pow(m, n - 1);
  Poly t;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      if (!p(i, j).is_zero() && !m(j, i).is_zero()) t += p(i, j) * m(j, i);
    }
  }
  return t;
}

std::vector<Poly> row_of_power(const RingMatrix& m, std::size_t i, unsigned n) {
  require_square(m, "row_of_power");
  if (i >= m.rows()) throw std::out_of_range("row index out of range");
  std::vector<Poly> v(m.rows());
  v[i] = 1;
  for (unsigned s = 0; s < n; ++s) {
    std::vector<Poly> w(m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!m(k, j).is_zero()) w[j] += v[k] * m(k, j);
      }
    }
    v = std::move(w);
  }
  return v;
}

std::vector<Poly> column_of_power(const RingMatrix& m, std::size_t j, unsigned n) {
  return row_of_power(m.transpose(), j, n);
}

Poly trace(const RingMatrix& m) {
  require_square(m, "trace");
  Poly t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Poly det_cofactor(const RingMatrix& m) {
  require_square(m, "det");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Poly d;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Poly c = m(0, j) * det_cofactor(m.drop(0, j));
    if (j % 2) d -= c; else d += c;
  }
  return d;
}

std::vector<Poly> berkowitz_coefficients(const RingMatrix& m) {
  require_square(m, "charpoly");
  std::size_t n = m.rows();
  // p holds the characteristic coefficients of the trailing principal block,
  // highest power first.
  std::vector<Poly> p{Poly(1)};
  for (std::size_t ii = n; ii-- > 0;) {
    std::size_t sz = n - ii - 1;  // order of the trailing block below row ii
    std::vector<Poly> tcol(sz + 2);
    tcol[0] = 1;
    tcol[1] = -m(ii, ii);
    // v = C, then A1*v repeatedly; tcol[j+2] = -R * A1^j * C
    std::vector<Poly> v(sz);
    for (std::size_t a = 0; a < sz; ++a) v[a] = m(ii + 1 + a, ii);
    for (std::size_t j = 0; j < sz; ++j) {
      Poly dot;
      for (std::size_t a = 0; a < sz; ++a) {
        if (!v[a].is_zero() && !m(ii, ii + 1 + a).is_zero()) dot += m(ii, ii + 1 + a) * v[a];
      }
      tcol[j + 2] = -dot;
      if (j + 1 < sz) {
        std::vector<Poly> w(sz);
        for (std::size_t a = 0; a < sz; ++a) {
          for (std::size_t b = 0; b < sz; ++b) {
            const Poly& e = m(ii + 1 + a, ii + 1 + b);
            if (!e.is_zero() && !v[b].is_zero()) w[a] += e * v[b];
          }
        }
        v = std::move(w);
      }
    }
    std::vector<Poly> q(sz + 2);
    for (std::size_t r = 0; r < sz + 2; ++r) {
      for (std::size_t c = 0; c <= std::min(r, sz); ++c) {
        if (!tcol[r - c].is_zero() && !p[c].is_zero()) q[r] += tcol[r - c] * p[c];
      }
    }
    p = std::move(q);
  }
  return p;
}

Poly det_berkowitz(const RingMatrix& m) {
  auto c = berkowitz_coefficients(m);
  return m.rows() % 2 ? -c.back() : c.back();
}

Poly det(const RingMatrix& m) {
  require_square(m, "det");
  return m.rows() < 5 ? det_cofactor(m) : det_berkowitz(m);
}

Poly minor_det(const RingMatrix& m, std::size_t drop_row, std::size_t drop_col) {
  require_square(m, "minor_det");
  if (drop_row < 1 || drop_row > m.rows() || drop_col < 1 || drop_col > m.cols()) {
    throw std::out_of_range("minor_det index out of range");
  }
  return det(m.drop(drop_row - 1, drop_col - 1));
}

Poly charpoly(const RingMatrix& m, Var lambda) {
  require_square(m, "charpoly");
  if (m.contains(lambda)) throw std::invalid_argument("charpoly variable " + lambda.name() + " occurs in the matrix");
  auto c = berkowitz_coefficients(m);
  std::size_t n = m.rows();
  Poly p;
  for (std::size_t i = 0; i <= n; ++i) p += c[i] * Poly::var(lambda, static_cast<unsigned>(n - i));
  return p;
}

Poly det_one_minus(const RingMatrix& m, Var y) {
  require_square(m, "det_one_minus");
  if (m.contains(y)) throw std::invalid_argument("series variable " + y.name() + " occurs in the matrix");
  auto c = berkowitz_coefficients(m);
  Poly p;
  for (std::size_t i = 0; i < c.size(); ++i) p += c[i] * Poly::var(y, static_cast<unsigned>(i));
  return p;
}

std::vector<Poly> rational_series(const RationalGF& gf, unsigned order) {
  Poly d0 = gf.den.coefficient(gf.var, 0);
  if (d0.is_zero()) throw std::domain_error("generating function denominator has zero constant term");
  unsigned dd = gf.den.degree_in(gf.var);
  std::vector<Poly> den(dd + 1);
  for (unsigned i = 0; i <= dd; ++i) den[i] = gf.den.coefficient(gf.var, i);
  std::vector<Poly> c(order + 1);
  for (unsigned j = 0; j <= order; ++j) {
    Poly acc = gf.num.coefficient(gf.var, j);
    for (unsigned i = 1; i <= std::min(j, dd); ++i) {
      if (!den[i].is_zero()) acc -= den[i] * c[j - i];
    }
    if (!divide_exact(acc, d0, c[j])) {
      throw std::domain_error("inexact division expanding generating function at order " + std::to_string(j));
    }
  }
  return c;
}

}  // namespace bandperm::exactalg
