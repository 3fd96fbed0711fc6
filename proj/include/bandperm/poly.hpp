#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace bandperm::exactalg {

using BigInt = boost::multiprecision::cpp_int;

// Variables are small integer codes. The code order is the variable order used
// by the monomial ordering: a0 < a1 < ... < x < xinv < y < z < (other names,
// in order of first use).
class Var {
 public:
  constexpr Var() = default;
  constexpr explicit Var(std::uint16_t code) : code_(code) {}

  static Var weight(unsigned i);  // a_i
  static Var named(std::string_view name);
  static Var x() { return Var(kX); }
  static Var xinv() { return Var(kXinv); }
  static Var y() { return Var(kY); }
  static Var z() { return Var(kZ); }

  std::uint16_t code() const { return code_; }
  std::string name() const;

  friend constexpr auto operator<=>(Var, Var) = default;

  static constexpr std::uint16_t kMaxWeight = 999;
  static constexpr std::uint16_t kX = 1000;
  static constexpr std::uint16_t kXinv = 1001;
  static constexpr std::uint16_t kY = 1002;
  static constexpr std::uint16_t kZ = 1003;
  static constexpr std::uint16_t kFirstDynamic = 1100;

 private:
  std::uint16_t code_ = 0;
};

// A monomial is a sorted list of (variable, exponent) pairs packed into 32 bits,
// variable code in the high half. x*xinv cancels on construction.
class Monomial {
 public:
  using Packed = std::uint32_t;

  Monomial() = default;
  static Monomial of(Var v, unsigned exponent = 1);

  unsigned degree() const { return degree_; }
  unsigned exponent(Var v) const;
  bool is_one() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Var var_at(std::size_t i) const { return Var(static_cast<std::uint16_t>(entries_[i] >> 16)); }
  unsigned exp_at(std::size_t i) const { return entries_[i] & 0xffffu; }

  // Monomial with v removed entirely.
  Monomial without(Var v) const;
  // Divides when every exponent of d is <= ours.
  bool divisible_by(const Monomial& d) const;
  Monomial quotient(const Monomial& d) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.entries_ == b.entries_;
  }
  // Negative when a precedes b in printing order: lower total degree first,
  // then the larger exponent on the earlier variable first.
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

  std::string str() const;

 private:
  void push(Var v, unsigned e);
  void cancel_inverse_pair();

  boost::container::small_vector<Packed, 6> entries_;
  unsigned degree_ = 0;
};

class Poly {
 public:
  struct Term {
    Monomial mono;
    BigInt coeff;
  };

  Poly() = default;
  Poly(long long c);  // NOLINT(google-explicit-constructor)
  Poly(const BigInt& c);  // NOLINT(google-explicit-constructor)
  static Poly var(Var v, unsigned exponent = 1);
  static Poly var(std::string_view name) { return var(Var::named(name)); }
  static Poly term(const BigInt& c, const Monomial& m);
  // Accepts canonical text plus whitespace, parentheses and unary minus.
  static Poly parse(std::string_view text);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  BigInt constant_term() const;
  // Throws when the polynomial is not constant.
  BigInt to_integer() const;

  unsigned total_degree() const;
  unsigned degree_in(Var v) const;
  // Coefficient of v^d, as a polynomial in the remaining variables.
  Poly coefficient(Var v, unsigned d) const;
  std::vector<Var> variables() const;
  bool contains(Var v) const;

  Poly derivative(Var v) const;
  Poly substitute(Var v, const Poly& value) const;
  Poly substitute(const std::map<Var, Poly>& values) const;
  Poly pow(unsigned e) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b);

  // Builds from an arbitrary term list: sorts, merges like terms, drops zeros.
  static Poly from_terms(std::vector<Term> terms);

  std::string str() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// Exact multivariate division. Returns false when den does not divide num.
bool divide_exact(const Poly& num, const Poly& den, Poly& quotient);

BigInt factorial(unsigned n);
BigInt binomial(long long n, long long k);

}  // namespace bandperm::exactalg
