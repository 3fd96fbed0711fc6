#include "bandperm/transfer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bandperm::transfer {

using exactalg::BigInt;
using exactalg::binomial;
using exactalg::factorial;
using exactalg::Var;

namespace {

void require_weights(const std::vector<Poly>& w, unsigned t) {
  if (w.size() != t + 1) {
    throw std::invalid_argument("expected " + std::to_string(t + 1) + " weights, got " + std::to_string(w.size()));
  }
}

// w_i^e, cached.
class WeightPowers {
 public:
  WeightPowers(const std::vector<Poly>& w, unsigned max_e) : pw_(w.size()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      pw_[i].push_back(Poly(1));
      for (unsigned e = 1; e <= max_e; ++e) pw_[i].push_back(pw_[i].back() * w[i]);
    }
  }
  const Poly& operator()(std::size_t i, unsigned e) const { return pw_[i].at(e); }

 private:
  std::vector<std::vector<Poly>> pw_;
};

// Calls f(p) for every p with 0 <= p_i <= bound_i, in ascending lexicographic order.
template <class F>
void for_each_box(const std::vector<unsigned>& bound, F&& f) {
  std::vector<unsigned> p(bound.size(), 0);
  for (;;) {
    f(p);
    std::size_t i = bound.size();
    while (i > 0) {
      --i;
      if (p[i] < bound[i]) {
        ++p[i];
        std::fill(p.begin() + static_cast<long>(i) + 1, p.end(), 0u);
        break;
      }
      if (i == 0) return;
    }
    if (bound.empty()) return;
  }
}

// Writes each (row, col) at most once.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : m_(n, n), written_(n * n, 0) {}
  void put(std::size_t i, std::size_t j, Poly value) {
    auto& flag = written_[i * m_.cols() + j];
    if (flag) throw std::logic_error("transfer entry written twice");
    flag = 1;
    m_(i, j) = std::move(value);
  }
  RingMatrix take() { return std::move(m_); }

 private:
  RingMatrix m_;
  std::vector<char> written_;
};

// Common part of the K, Pi and A entries: prod C(l_i,p_i) a_i^{p_i} over i < t.
Poly middle_factor(const State& l, const std::vector<unsigned>& p, const WeightPowers& pw) {
  BigInt c = 1;
  Poly f(1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    c *= binomial(l.mult()[i], p[i]);
    if (p[i]) f *= pw(i + 1, p[i]);
  }
  return Poly(c) * f;
}

State successor_state(const State& l, const std::vector<unsigned>& p, unsigned first) {
  std::vector<unsigned> b(l.t());
  b[0] = first;
  for (std::size_t i = 0; i + 1 < l.t(); ++i) b[i + 1] = l.mult()[i] - p[i];
  return State(l.k(), std::move(b));
}

std::vector<unsigned> box_bound(const State& l) {
  return std::vector<unsigned>(l.mult().begin(), l.mult().end() - 1);
}

unsigned sum(const std::vector<unsigned>& p) {
  unsigned s = 0;
  for (unsigned v : p) s += v;
  return s;
}

}  // namespace

std::vector<Poly> symbolic_weights(unsigned t) {
  std::vector<Poly> w;
  for (unsigned i = 0; i <= t; ++i) w.push_back(Poly::var(Var::weight(i)));
  return w;
}

std::vector<Poly> graded_weights(const std::vector<Poly>& w, Var x) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[i] * Poly::var(x, static_cast<unsigned>(i)));
  return out;
}

std::vector<Poly> scaled_weights(const std::vector<Poly>& w, const Poly& s) {
  std::vector<Poly> out;
  for (const auto& wi : w) out.push_back(wi * s);
  return out;
}

std::vector<std::string> TransferMatrix::labels() const {
  std::vector<std::string> out;
  if (auto* si = std::get_if<StateIndex>(&index)) {
    for (const auto& s : si->states()) out.push_back(s.str());
  } else if (auto* qi = std::get_if<SubsetIndex>(&index)) {
    for (const auto& q : qi->tuples()) out.push_back(SubsetIndex::str(q));
  } else {
    for (const auto& e : std::get<WVIndex>(index).entries) out.push_back(e.str());
  }
  return out;
}

TransferMatrix build_K(unsigned k, unsigned t, const std::vector<Poly>& weights) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_weights(weights, t);
  WeightPowers pw(weights, k);
  auto idx = states::enumerate_states(k, t);
  if (t == 0) {
    Poly e;
    for (unsigned d = 0; d <= k; ++d) e += Poly(factorial(d) * binomial(k, d) * binomial(k, d)) * pw(0, d);
    return {"K", idx, RingMatrix(1, 1, {e}), weights};
  }
  Accumulator acc(idx.size());
  for (std::size_t row = 0; row < idx.size(); ++row) {
    const State& l = idx.states()[row];
    unsigned lt = l.mult().back();
    for_each_box(box_bound(l), [&](const std::vector<unsigned>& p) {
      unsigned sp = sum(p);
      Poly mid = middle_factor(l, p, pw);
      for (unsigned v = sp; v <= k; ++v) {
        Poly inner;
        for (unsigned d = 0; d <= std::min(lt, k - v); ++d) {
          inner += Poly(factorial(d + v) * binomial(k, d + v) * binomial(lt, d)) * pw(t, d);
        }
        Poly e = Poly(binomial(k, v - sp)) * pw(0, v - sp) * mid * inner;
        std::size_t col = idx.rank(successor_state(l, p, k - v + sp)) - 1;
        acc.put(row, col, std::move(e));
      }
    });
  }
  return {"K", idx, acc.take(), weights};
}

TransferMatrix build_Pi(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_weights(weights, t);
  if (r > k * t) throw std::out_of_range("Pi: grade r out of range 0..kt");
  WeightPowers pw(weights, k);
  auto idx = states::enumerate_states(k, t, r);
  if (t == 0) return {"Pi", idx, RingMatrix(1, 1, {Poly(factorial(k)) * pw(0, k)}), weights};
  Accumulator acc(idx.size());
  for (std::size_t row = 0; row < idx.size(); ++row) {
    const State& l = idx.states()[row];
    unsigned lt = l.mult().back();
    for_each_box(box_bound(l), [&](const std::vector<unsigned>& p) {
      unsigned sp = sum(p);
      if (sp > k - lt) return;
      Poly e = Poly(factorial(k) * binomial(k, lt + sp)) * pw(0, k - lt - sp) * middle_factor(l, p, pw) * pw(t, lt);
      std::size_t col = idx.rank(successor_state(l, p, lt + sp)) - 1;
      acc.put(row, col, std::move(e));
    });
  }
  return {"Pi", idx, acc.take(), weights};
}

TransferMatrix build_A_graded(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (t < 1) throw std::invalid_argument("A: t must be >= 1");
  require_weights(weights, t);
  if (r > k * t) throw std::out_of_range("A: grade r out of range 0..kt");
  WeightPowers pw(weights, k);
  auto idx = states::enumerate_states(k, t);
  Accumulator acc(idx.size());
  const int K = static_cast<int>(k);
  for (std::size_t row = 0; row < idx.size(); ++row) {
    const State& l = idx.states()[row];
    const int s = static_cast<int>(l.weight());
    const int lt = static_cast<int>(l.mult().back());
    const int R = static_cast<int>(r);
    for_each_box(box_bound(l), [&](const std::vector<unsigned>& p) {
      const int sp = static_cast<int>(sum(p));
      int lo, hi;
      if (s < R) {
        lo = std::max(sp, s - R + K - lt);
        hi = K - lt;
      } else {
        lo = std::max(sp, K - lt);
        hi = std::min(K, s - R + K - lt);
      }
      if (lo > hi) return;
      Poly mid = middle_factor(l, p, pw);
      for (int v = lo; v <= hi; ++v) {
        Poly e = Poly(binomial(K, v - sp)) * pw(0, static_cast<unsigned>(v - sp)) * mid;
        if (s < R) {
          e *= Poly(factorial(static_cast<unsigned>(lt + v)) * binomial(K, lt + v)) * pw(t, static_cast<unsigned>(lt));
        } else {
          // C(l_t, k-v): which of the pending label-t columns get consumed.
          e *= Poly(factorial(k) * binomial(lt, K - v)) * pw(t, static_cast<unsigned>(K - v));
        }
        std::size_t col = idx.rank(successor_state(l, p, static_cast<unsigned>(K - v + sp))) - 1;
        acc.put(row, col, std::move(e));
      }
    });
  }
  return {"A", idx, acc.take(), weights};
}

TransferMatrix build_D(unsigned r, unsigned t, const std::vector<Poly>& weights) {
  require_weights(weights, t);
  if (r > t) throw std::out_of_range("D: r out of range 0..t");
  SubsetIndex q(r, t);
  if (r == 0) return {"D", q, RingMatrix(1, 1, {weights[0]}), weights};
  RingMatrix m(q.size(), q.size());
  for (std::size_t row = 0; row < q.size(); ++row) {
    const auto& al = q.tuples()[row];
    if (al.back() < t) {
      std::vector<unsigned> succ;
      for (unsigned i : al) succ.push_back(i + 1);
      m(row, q.rank(succ) - 1) += weights[0];
      for (unsigned kk = 1; kk <= r; ++kk) {
        std::vector<unsigned> b{1};
        for (unsigned j = 0; j < r; ++j) {
          if (j != kk - 1) b.push_back(al[j] + 1);
        }
        Poly e = weights[al[kk - 1]];
        m(row, q.rank(b) - 1) += kk % 2 ? -e : e;
      }
    } else {
      std::vector<unsigned> b{1};
      for (unsigned j = 0; j + 1 < r; ++j) b.push_back(al[j] + 1);
      m(row, q.rank(b) - 1) += r % 2 ? -weights[t] : weights[t];
    }
  }
  return {"D", q, std::move(m), weights};
}

// ---------------------------------------------------------------------------
// W / V sets

std::string WVEntry::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ',';
    s += alpha[i] == kSentinel ? std::string("*") : std::to_string(alpha[i]);
  }
  s += '|';
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(beta[i]);
  }
  return s + "]";
}

namespace {

// Slot j = k*s + i with label a and offset l maps to k*(s+a) + l; sentinel
// slots map nowhere. Returns false on a collision.
bool injective_window(unsigned k, const std::vector<int>& alpha, const std::vector<int>& beta) {
  std::vector<long> seen;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == WVEntry::kSentinel) continue;
    long s = static_cast<long>(j / k);
    long v = static_cast<long>(k) * (s + alpha[j]) + beta[j];
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
    seen.push_back(v);
  }
  return true;
}

}  // namespace

std::vector<WVEntry> enumerate_WV(unsigned k, unsigned t, unsigned r, WVVariant variant, unsigned guard) {
  if (k < 1 || t < 1) throw std::invalid_argument("W/V sets need k >= 1 and t >= 1");
  if (r > t) throw std::out_of_range("W/V: r out of range 0..t");
  if (k * t > guard) throw std::length_error("W/V enumeration exceeds size guard k*t <= " + std::to_string(guard));
  std::vector<int> labels;
  for (int a = -static_cast<int>(r); a <= static_cast<int>(t) - static_cast<int>(r); ++a) labels.push_back(a);
  if (variant == WVVariant::W) labels.push_back(WVEntry::kSentinel);
  const unsigned slots = k * t;
  std::vector<WVEntry> out;
  WVEntry cur;
  std::vector<long> used;
  auto rec = [&](auto&& self, unsigned j) -> void {
    if (j == slots) {
      out.push_back(cur);
      return;
    }
    long s = static_cast<long>(j / k);
    int i = static_cast<int>(j % k);
    for (int a : labels) {
      if (a == WVEntry::kSentinel) {
        cur.alpha.push_back(a);
        cur.beta.push_back(i);
        self(self, j + 1);
        cur.alpha.pop_back();
        cur.beta.pop_back();
        continue;
      }
      for (int l = 0; l < static_cast<int>(k); ++l) {
        long v = static_cast<long>(k) * (s + a) + l;
        if (std::find(used.begin(), used.end(), v) != used.end()) continue;
        used.push_back(v);
        cur.alpha.push_back(a);
        cur.beta.push_back(l);
        self(self, j + 1);
        cur.alpha.pop_back();
        cur.beta.pop_back();
        used.pop_back();
      }
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

TransferMatrix build_A_WV(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights, WVVariant variant,
                          unsigned guard) {
  require_weights(weights, t);
  auto entries = enumerate_WV(k, t, r, variant, guard);
  const std::size_t head = static_cast<std::size_t>(k) * (t - 1);
  // Successor candidates grouped by their first k(t-1) slots.
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<std::size_t>> by_prefix;
  for (std::size_t c = 0; c < entries.size(); ++c) {
    const auto& e = entries[c];
    by_prefix[{std::vector<int>(e.alpha.begin(), e.alpha.begin() + static_cast<long>(head)),
               std::vector<int>(e.beta.begin(), e.beta.begin() + static_cast<long>(head))}]
        .push_back(c);
  }
  RingMatrix m(entries.size(), entries.size());
  for (std::size_t row = 0; row < entries.size(); ++row) {
    const auto& e = entries[row];
    std::pair<std::vector<int>, std::vector<int>> key{std::vector<int>(e.alpha.begin() + k, e.alpha.end()),
                                                      std::vector<int>(e.beta.begin() + k, e.beta.end())};
    auto it = by_prefix.find(key);
    if (it == by_prefix.end()) continue;
    Poly w(1);
    for (unsigned j = 0; j < k; ++j) {
      if (e.alpha[j] != WVEntry::kSentinel) w *= weights[static_cast<std::size_t>(e.alpha[j] + static_cast<int>(r))];
    }
    for (std::size_t col : it->second) {
      const auto& f = entries[col];
      std::vector<int> a2 = e.alpha, b2 = e.beta;
      a2.insert(a2.end(), f.alpha.begin() + static_cast<long>(head), f.alpha.end());
      b2.insert(b2.end(), f.beta.begin() + static_cast<long>(head), f.beta.end());
      if (injective_window(k, a2, b2)) m(row, col) = w;
    }
  }
  WVIndex wi{k, t, r, variant, std::move(entries)};
  return {variant == WVVariant::W ? "AW" : "AV", std::move(wi), std::move(m), weights};
}

// ---------------------------------------------------------------------------

ClosedFormDetPer closed_form_det_per(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights) {
  if (k < 1 || t < 1) throw std::invalid_argument("closed forms need k >= 1 and t >= 1");
  require_weights(weights, t);
  if (r < 1 || r > k * t) throw std::out_of_range("closed forms: r out of range 1..kt");
  const Poly& a0 = weights[0];
  const Poly& at = weights[t];
  auto factor = [&](unsigned i) { return Poly(factorial(k) * binomial(k, i)) * a0.pow(k - i) * at.pow(i); };
  ClosedFormDetPer out;
  Poly prod(1);
  for (unsigned i = 0; i <= std::min(k, r); ++i) {
    BigInt e = states::card_graded_alternating(k, t - 1, static_cast<long long>(r) - i);
    if (e > 0) prod *= factor(i).pow(static_cast<unsigned>(e));
  }
  out.per_pi = prod;
  out.det_pi = states::phi_sign(k, t, r) < 0 ? -prod : prod;
  int sign = 1;
  for (unsigned rr = 1; rr <= k * t; ++rr) sign *= states::phi_sign(k, t, rr);
  Poly dk(1);
  auto e = static_cast<unsigned>(boost::multiprecision::pow(BigInt(k + 1), t - 1));
  for (unsigned i = 0; i <= k; ++i) dk *= factor(i).pow(e);
  out.det_k = sign < 0 ? -dk : dk;
  return out;
}

}  // namespace bandperm::transfer
