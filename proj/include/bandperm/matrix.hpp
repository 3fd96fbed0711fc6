#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bandperm/poly.hpp"

namespace bandperm::exactalg {

class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RingMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries);
  // Row-major nested list; all rows must have equal length.
  static RingMatrix from_rows(const std::vector<std::vector<Poly>>& rows);
  static RingMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  // 0-based access.
  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Poly>& entries() const { return entries_; }

  RingMatrix transpose() const;
  RingMatrix map(const std::function<Poly(const Poly&)>& f) const;
  RingMatrix derivative(Var v) const;
  RingMatrix substitute(const std::map<Var, Poly>& values) const;
  // Drops row i and column j (0-based).
  RingMatrix drop(std::size_t i, std::size_t j) const;
  bool contains(Var v) const;

  friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator*(const Poly& s, const RingMatrix& m);
  friend bool operator==(const RingMatrix& a, const RingMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> entries_;
};

RingMatrix mat_pow(const RingMatrix& m, unsigned n);
Poly trace(const RingMatrix& m);
// Tr(M^n) from M^(n-1), reading only the diagonal of the last product.
Poly trace_power(const RingMatrix& m, unsigned n);
// Row i / column j (0-based) of M^n by repeated vector products.
std::vector<Poly> row_of_power(const RingMatrix& m, std::size_t i, unsigned n);
std::vector<Poly> column_of_power(const RingMatrix& m, std::size_t j, unsigned n);

// Cofactor expansion below order 5, Berkowitz from order 5 up.
Poly det(const RingMatrix& m);
Poly det_cofactor(const RingMatrix& m);
Poly det_berkowitz(const RingMatrix& m);
// 1-based indices; the determinant of a 0x0 matrix is 1.
Poly minor_det(const RingMatrix& m, std::size_t drop_row, std::size_t drop_col);

// Coefficients c_0..c_n of det(lambda*I - M) = sum_i c_i lambda^(n-i), c_0 = 1.
std::vector<Poly> berkowitz_coefficients(const RingMatrix& m);
Poly charpoly(const RingMatrix& m, Var lambda);
// det(I - y*M) = sum_i c_i y^i, with the c_i of berkowitz_coefficients.
Poly det_one_minus(const RingMatrix& m, Var y);

struct RationalGF {
  Poly num;
  Poly den;
  Var var = Var::y();
};

// Coefficients c_0..c_order of num/den expanded in gf.var.
std::vector<Poly> rational_series(const RationalGF& gf, unsigned order);

}  // namespace bandperm::exactalg
