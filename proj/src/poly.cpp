#include "bandperm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace bandperm::exactalg {

namespace {

struct Registry {
  std::shared_mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint16_t> codes;
};

Registry& registry() {
  static Registry r;
  return r;
}

bool is_weight_name(std::string_view s) {
  if (s.size() < 2 || s[0] != 'a') return false;
  if (s.size() > 4) return false;
  if (s.size() > 2 && s[1] == '0') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

Monomial::Packed pack(Var v, unsigned e) {
  return (static_cast<Monomial::Packed>(v.code()) << 16) | e;
}

}  // namespace

Var Var::weight(unsigned i) {
  if (i > kMaxWeight) throw std::out_of_range("weight index too large");
  return Var(static_cast<std::uint16_t>(i));
}

Var Var::named(std::string_view name) {
  if (name == "x") return x();
  if (name == "xinv") return xinv();
  if (name == "y") return y();
  if (name == "z") return z();
  if (is_weight_name(name)) return weight(static_cast<unsigned>(std::stoul(std::string(name.substr(1)))));
  if (name.empty()) throw std::invalid_argument("empty variable name");
  auto& reg = registry();
  std::string key(name);
  {
    std::shared_lock lock(reg.mu);
    auto it = reg.codes.find(key);
    if (it != reg.codes.end()) return Var(it->second);
  }
  std::unique_lock lock(reg.mu);
  auto it = reg.codes.find(key);
  if (it != reg.codes.end()) return Var(it->second);
  if (reg.names.size() >= 0xffffu - kFirstDynamic) throw std::length_error("too many variables");
  auto code = static_cast<std::uint16_t>(kFirstDynamic + reg.names.size());
  reg.names.push_back(key);
  reg.codes.emplace(key, code);
  return Var(code);
}

std::string Var::name() const {
  if (code_ <= kMaxWeight) return "a" + std::to_string(code_);
  switch (code_) {
    case kX: return "x";
    case kXinv: return "xinv";
    case kY: return "y";
    case kZ: return "z";
    default: break;
  }
  auto& reg = registry();
  std::shared_lock lock(reg.mu);
  std::size_t idx = code_ - kFirstDynamic;
  if (code_ < kFirstDynamic || idx >= reg.names.size()) throw std::logic_error("unknown variable code");
  return reg.names[idx];
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(Var v, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.push(v, exponent);
  return m;
}

void Monomial::push(Var v, unsigned e) {
  if (e > 0xffffu) throw std::overflow_error("exponent too large");
  entries_.push_back(pack(v, e));
  degree_ += e;
}

unsigned Monomial::exponent(Var v) const {
  for (auto p : entries_) {
    if ((p >> 16) == v.code()) return p & 0xffffu;
  }
  return 0;
}

Monomial Monomial::without(Var v) const {
  Monomial m;
  for (auto p : entries_) {
    if ((p >> 16) != v.code()) m.push(Var(static_cast<std::uint16_t>(p >> 16)), p & 0xffffu);
  }
  return m;
}

bool Monomial::divisible_by(const Monomial& d) const {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (exponent(d.var_at(i)) < d.exp_at(i)) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& d) const {
  Monomial m;
  for (std::size_t i = 0; i < size(); ++i) {
    unsigned e = exp_at(i) - d.exponent(var_at(i));
    if (e > 0) m.push(var_at(i), e);
  }
  return m;
}

void Monomial::cancel_inverse_pair() {
  std::size_t ix = entries_.size(), ii = entries_.size();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto c = entries_[i] >> 16;
    if (c == Var::kX) ix = i;
    if (c == Var::kXinv) ii = i;
  }
  if (ix == entries_.size() || ii == entries_.size()) return;
  unsigned ex = entries_[ix] & 0xffffu, ei = entries_[ii] & 0xffffu;
  unsigned m = std::min(ex, ei);
  entries_[ix] = pack(Var::x(), ex - m);
  entries_[ii] = pack(Var::xinv(), ei - m);
  degree_ -= 2 * m;
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(), [](Packed p) { return (p & 0xffffu) == 0; }),
                 entries_.end());
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::size_t i = 0, j = 0;
  bool has_x = false, has_xinv = false;
  while (i < a.size() || j < b.size()) {
    Monomial::Packed p;
    if (j == b.size() || (i < a.size() && (a.entries_[i] >> 16) < (b.entries_[j] >> 16))) {
      p = a.entries_[i++];
    } else if (i == a.size() || (b.entries_[j] >> 16) < (a.entries_[i] >> 16)) {
      p = b.entries_[j++];
    } else {
      unsigned e = (a.entries_[i] & 0xffffu) + (b.entries_[j] & 0xffffu);
      if (e > 0xffffu) throw std::overflow_error("exponent too large");
      p = (a.entries_[i] & 0xffff0000u) | e;
      ++i;
      ++j;
    }
    has_x |= (p >> 16) == Var::kX;
    has_xinv |= (p >> 16) == Var::kXinv;
    m.entries_.push_back(p);
  }
  m.degree_ = a.degree_ + b.degree_;
  if (has_x && has_xinv) m.cancel_inverse_pair();
  return m;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto pa = a.entries_[i], pb = b.entries_[i];
    if (pa == pb) continue;
    auto ca = pa >> 16, cb = pb >> 16;
    if (ca != cb) return ca < cb ? -1 : 1;
    return (pa & 0xffffu) > (pb & 0xffffu) ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::string Monomial::str() const {
  std::string s;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += '*';
    s += var_at(i).name();
    if (exp_at(i) != 1) s += '^' + std::to_string(exp_at(i));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long long c) {
  if (c != 0) terms_.push_back({Monomial(), BigInt(c)});
}

Poly::Poly(const BigInt& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Poly Poly::var(Var v, unsigned exponent) { return term(1, Monomial::of(v, exponent)); }

Poly Poly::term(const BigInt& c, const Monomial& m) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return compare(a.mono, b.mono) < 0; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    BigInt c = std::move(terms_[i].coeff);
    while (j < terms_.size() && terms_[j].mono == terms_[i].mono) c += terms_[j++].coeff;
    if (c != 0) {
      if (out != i) terms_[out].mono = std::move(terms_[i].mono);
      terms_[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

BigInt Poly::constant_term() const {
  if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
  return 0;
}

BigInt Poly::to_integer() const {
  if (!is_constant()) throw std::domain_error("polynomial is not a constant: " + str());
  return constant_term();
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.back().mono.degree(); }

unsigned Poly::degree_in(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

Poly Poly::coefficient(Var v, unsigned d) const {
  Poly p;
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) == d) p.terms_.push_back({t.mono.without(v), t.coeff});
  }
  p.normalize();
  return p;
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> vs;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) vs.push_back(t.mono.var_at(i));
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Poly::contains(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.exponent(v) > 0; });
}

Poly Poly::derivative(Var v) const {
  if (v == Var::xinv()) throw std::invalid_argument("differentiate with respect to x, not xinv");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent(v);
    if (e > 0) {
      out.push_back({t.mono.without(v) * Monomial::of(v, e - 1), t.coeff * e});
    } else if (v == Var::x()) {
      // d/dx xinv^b = -b xinv^(b+1)
      unsigned b = t.mono.exponent(Var::xinv());
      if (b > 0) out.push_back({t.mono * Monomial::of(Var::xinv()), -t.coeff * b});
    }
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute(Var v, const Poly& value) const {
  std::map<Var, Poly> m;
  m.emplace(v, value);
  return substitute(m);
}

Poly Poly::substitute(const std::map<Var, Poly>& values) const {
  auto xit = values.find(Var::x());
  if (xit != values.end() && contains(Var::xinv())) {
    const Poly& xv = xit->second;
    if (!(xv == Poly(1) || xv == Poly(-1))) {
      throw std::domain_error("cannot substitute a non-unit for x in the presence of xinv");
    }
  }
  // cache of value^e per variable
  std::map<std::pair<std::uint16_t, unsigned>, Poly> powers;
  auto power_of = [&](Var v, const Poly& base, unsigned e) -> const Poly& {
    auto key = std::make_pair(v.code(), e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, base.pow(e)).first->second;
  };
  Poly result;
  for (const auto& t : terms_) {
    Monomial rest;
    Poly factor(t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      Var v = t.mono.var_at(i);
      unsigned e = t.mono.exp_at(i);
      auto it = values.find(v);
      if (it != values.end()) {
        factor *= power_of(v, it->second, e);
      } else if (v == Var::xinv() && xit != values.end()) {
        factor *= power_of(v, xit->second, e);  // value is +-1, its own inverse
      } else {
        rest = rest * Monomial::of(v, e);
      }
    }
    if (!rest.is_one()) factor *= term(1, rest);
    result += factor;
  }
  return result;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = compare(terms_[i].mono, o.terms_[j].mono);
    if (c < 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c > 0) {
      out.push_back(o.terms_[j++]);
    } else {
      BigInt s = terms_[i].coeff + o.terms_[j].coeff;
      if (s != 0) out.push_back({std::move(terms_[i].mono), std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator-(Poly a) {
  for (auto& t : a.terms_) t.coeff = -t.coeff;
  return a;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly p;
  if (a.is_constant() || b.is_constant()) {
    const Poly& c = a.is_constant() ? a : b;
    const Poly& o = a.is_constant() ? b : a;
    const BigInt& k = c.terms_[0].coeff;
    p.terms_ = o.terms_;
    for (auto& t : p.terms_) t.coeff *= k;
    return p;
  }
  p.terms_.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) p.terms_.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
  }
  p.normalize();
  return p;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    bool neg = t.coeff < 0;
    if (i == 0) {
      if (neg) s += '-';
    } else {
      s += neg ? " - " : " + ";
    }
    BigInt mag = neg ? BigInt(-t.coeff) : t.coeff;
    if (t.mono.is_one()) {
      s += mag.str();
    } else {
      if (mag != 1) s += mag.str() + '*';
      s += t.mono.str();
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Poly parse_all() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                                std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool neg = false;
      if (accept('-')) {
        neg = true;
      } else if (!accept('+') && !first) {
        break;
      }
      Poly t = term();
      acc += neg ? -t : t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly p = factor();
    while (accept('*')) p *= factor();
    return p;
  }

  Poly factor() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      BigInt e = integer();
      if (e > 0xffff) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Poly::var(Var::named(s_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------

bool divide_exact(const Poly& num, const Poly& den, Poly& quotient) {
  if (den.is_zero()) throw std::domain_error("division by zero polynomial");
  quotient = Poly();
  Poly rem = num;
  const auto& lead_d = den.terms().back();
  std::vector<Poly::Term> q;
  while (!rem.is_zero()) {
    const auto& lead_r = rem.terms().back();
    if (!lead_r.mono.divisible_by(lead_d.mono)) return false;
    BigInt r;
    BigInt c;
    boost::multiprecision::divide_qr(lead_r.coeff, lead_d.coeff, c, r);
    if (r != 0) return false;
    Poly step = Poly::term(c, lead_r.mono.quotient(lead_d.mono));
    q.push_back(step.terms()[0]);
    rem -= step * den;
  }
  quotient = Poly::from_terms(std::move(q));
  return true;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (long long i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

}  // namespace bandperm::exactalg
