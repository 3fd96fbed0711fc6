#include "bandperm/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace bandperm::oracle {

using exactalg::BigInt;
using exactalg::binomial;
using exactalg::factorial;

namespace {

void guard(bool ok, const std::string& what) {
  if (!ok) throw std::length_error("oracle size guard: " + what);
}

RingMatrix submatrix(const RingMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  RingMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

std::vector<std::size_t> mask_to_list(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; mask; ++j, mask >>= 1) {
    if (mask & 1u) out.push_back(j);
  }
  return out;
}

Var rook_marker() {
  static const Var v = Var::named("rook_marker");
  return v;
}

}  // namespace

bool is_numeric(const RingMatrix& m) {
  return std::all_of(m.entries().begin(), m.entries().end(), [](const Poly& p) { return p.is_constant(); });
}

Poly permanent_ryser(const RingMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("Ryser needs a square matrix");
  if (!is_numeric(m)) throw std::invalid_argument("Ryser is used for numeric matrices only");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  guard(n < 31, "Ryser order");
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).constant_term();
  }
  std::vector<BigInt> rowsum(n, 0);
  BigInt total = 0;
  std::uint32_t prev = 0;
  for (std::uint32_t g = 1; g < (1u << n); ++g) {
    std::uint32_t gray = g ^ (g >> 1);
    std::uint32_t changed = gray ^ prev;
    std::size_t j = static_cast<std::size_t>(std::countr_zero(changed));
    bool added = (gray & changed) != 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) rowsum[i] += a[i][j]; else rowsum[i] -= a[i][j];
    }
    prev = gray;
    BigInt prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= rowsum[i];
    if (std::popcount(gray) % 2) total -= prod; else total += prod;
  }
  return n % 2 ? Poly(BigInt(-total)) : Poly(total);
}

Poly permanent_injections(const RingMatrix& m) {
  if (m.rows() > m.cols()) throw std::invalid_argument("permanent needs rows <= cols");
  guard(m.cols() < 32, "column count");
  std::unordered_map<std::uint32_t, Poly> layer{{0u, Poly(1)}};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::unordered_map<std::uint32_t, Poly> next;
    for (const auto& [mask, val] : layer) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (mask & (1u << j)) continue;
        const Poly& e = m(i, j);
        if (e.is_zero()) continue;
        next[mask | (1u << j)] += val * e;
      }
    }
    layer = std::move(next);
  }
  Poly total;
  for (const auto& kv : layer) total += kv.second;
  return total;
}

Poly permanent_naive(const RingMatrix& m) {
  if (m.rows() > m.cols()) throw std::invalid_argument("permanent needs rows <= cols");
  std::vector<bool> used(m.cols(), false);
  Poly total;
  auto rec = [&](auto&& self, std::size_t i, const Poly& prod) -> void {
    if (i == m.rows()) {
      total += prod;
      return;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (used[j] || m(i, j).is_zero()) continue;
      used[j] = true;
      self(self, i + 1, prod * m(i, j));
      used[j] = false;
    }
  };
  rec(rec, 0, Poly(1));
  return total;
}

Poly brute_permanent(const RingMatrix& m, const Limits& lim) {
  if (m.rows() > m.cols()) throw std::invalid_argument("brute_permanent needs rows <= cols");
  if (m.rows() == 0) return 1;
  bool numeric = is_numeric(m);
  guard(m.rows() <= (numeric ? lim.numeric_rows : lim.symbolic_rows),
        std::to_string(m.rows()) + " rows exceeds the " + (numeric ? "numeric" : "symbolic") + " limit");
  if (numeric && m.is_square()) return permanent_ryser(m);
  return permanent_injections(m);
}

Poly permanent_any_shape(const RingMatrix& m, const Limits& lim) {
  return m.rows() > m.cols() ? brute_permanent(m.transpose(), lim) : brute_permanent(m, lim);
}

Poly brute_rook(const RingMatrix& m, bool with_cycles, Var x, Var z, const Limits& lim) {
  guard(m.rows() + m.cols() <= lim.rook_rows_plus_cols, "rows + cols for the rook polynomial");
  if (!with_cycles) {
    RingMatrix at = m.rows() > m.cols() ? m.transpose() : m;
    Poly xp = Poly::var(x);
    std::unordered_map<std::uint32_t, Poly> layer{{0u, Poly(1)}};
    for (std::size_t i = 0; i < at.rows(); ++i) {
      auto next = layer;
      for (const auto& [mask, val] : layer) {
        for (std::size_t j = 0; j < at.cols(); ++j) {
          if (mask & (1u << j)) continue;
          const Poly& e = at(i, j);
          if (e.is_zero()) continue;
          next[mask | (1u << j)] += val * e * xp;
        }
      }
      layer = std::move(next);
    }
    Poly total;
    for (const auto& kv : layer) total += kv.second;
    return total;
  }
  if (m.rows() > m.cols()) throw std::invalid_argument("cycle rook polynomial needs rows <= cols");
  const std::size_t rows = m.rows();
  std::vector<long> sigma(rows, -1);
  std::vector<bool> used(m.cols(), false);
  std::vector<Poly::Term> out;
  auto count_cycles = [&]() {
    std::size_t cycles = 0;
    std::vector<bool> seen(rows, false);
    for (std::size_t i = 0; i < rows; ++i) {
      if (sigma[i] < 0 || seen[i]) continue;
      // follow the orbit; it is a cycle only if it comes back to i
      std::size_t cur = i;
      std::vector<std::size_t> path;
      bool closed = false;
      for (;;) {
        path.push_back(cur);
        long nxt = sigma[cur];
        if (nxt < 0 || static_cast<std::size_t>(nxt) >= rows) break;
        if (static_cast<std::size_t>(nxt) == i) {
          closed = true;
          break;
        }
        if (sigma[static_cast<std::size_t>(nxt)] < 0) break;
        cur = static_cast<std::size_t>(nxt);
        if (path.size() > rows) break;
      }
      if (closed) {
        ++cycles;
        for (auto p : path) seen[p] = true;
      }
    }
    return cycles;
  };
  auto rec = [&](auto&& self, std::size_t i, const Poly& prod, unsigned k) -> void {
    if (i == rows) {
      Poly term = prod * Poly::var(x, k) * Poly::var(z, static_cast<unsigned>(count_cycles()));
      for (const auto& t : term.terms()) out.push_back(t);
      return;
    }
    self(self, i + 1, prod, k);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (used[j] || m(i, j).is_zero()) continue;
      used[j] = true;
      sigma[i] = static_cast<long>(j);
      self(self, i + 1, prod * m(i, j), k + 1);
      sigma[i] = -1;
      used[j] = false;
    }
  };
  rec(rec, 0, Poly(1), 0);
  return Poly::from_terms(std::move(out));
}

std::vector<Poly> rook_numbers(const RingMatrix& m, const Limits& lim) {
  Var mark = rook_marker();
  Poly r = brute_rook(m, false, mark, Var::z(), lim);
  std::size_t top = std::min(m.rows(), m.cols());
  std::vector<Poly> out;
  for (std::size_t i = 0; i <= top; ++i) out.push_back(r.coefficient(mark, static_cast<unsigned>(i)));
  return out;
}

PartitionExpansion partition_expand(const RingMatrix& m, const std::vector<std::vector<std::size_t>>& parts, Var x,
                                    const Limits& lim) {
  const std::size_t rows = m.rows(), cols = m.cols();
  guard(cols < 20, "partition expansion column count");
  std::vector<int> owner(rows, -1);
  for (std::size_t c = 0; c < parts.size(); ++c) {
    if (parts[c].empty()) throw std::invalid_argument("partition cell is empty");
    for (std::size_t r : parts[c]) {
      if (r < 1 || r > rows) throw std::invalid_argument("partition row index out of range");
      if (owner[r - 1] >= 0) throw std::invalid_argument("partition cells overlap");
      owner[r - 1] = static_cast<int>(c);
    }
  }
  if (std::any_of(owner.begin(), owner.end(), [](int o) { return o < 0; })) {
    throw std::invalid_argument("partition does not cover every row");
  }
  std::vector<std::vector<std::size_t>> cells;
  for (const auto& p : parts) {
    std::vector<std::size_t> c;
    for (std::size_t r : p) c.push_back(r - 1);
    cells.push_back(std::move(c));
  }
  const std::size_t full = std::min(rows, cols);
  std::vector<Poly::Term> per_terms, rook_terms;
  std::unordered_map<std::uint64_t, Poly> cache;
  auto block_per = [&](std::size_t c, std::uint32_t kmask) -> const Poly& {
    std::uint64_t key = (static_cast<std::uint64_t>(c) << 32) | kmask;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, permanent_any_shape(submatrix(m, cells[c], mask_to_list(kmask)), lim)).first->second;
  };
  auto rec = [&](auto&& self, std::size_t c, std::uint32_t used, const Poly& prod, std::size_t size) -> void {
    if (prod.is_zero()) return;
    if (c == cells.size()) {
      Poly rt = prod * Poly::var(x, static_cast<unsigned>(size));
      for (const auto& t : rt.terms()) rook_terms.push_back(t);
      if (size == full) {
        for (const auto& t : prod.terms()) per_terms.push_back(t);
      }
      return;
    }
    std::uint32_t free = ((1u << cols) - 1) & ~used;
    // every subset of the free columns, the empty set included
    for (std::uint32_t k = free;; k = (k - 1) & free) {
      if (static_cast<std::size_t>(std::popcount(k)) <= cells[c].size()) {
        self(self, c + 1, used | k, prod * block_per(c, k), size + static_cast<std::size_t>(std::popcount(k)));
      }
      if (k == 0) break;
    }
  };
  rec(rec, 0, 0u, Poly(1), 0);
  return {Poly::from_terms(std::move(per_terms)), Poly::from_terms(std::move(rook_terms))};
}

Poly rook_recursion(const RingMatrix& m, const std::vector<std::size_t>& H, Var x, const Limits& lim) {
  const std::size_t rows = m.rows(), cols = m.cols();
  guard(cols < 20, "rook recursion column count");
  std::vector<bool> in_h(rows, false);
  std::vector<std::size_t> h, rest;
  for (std::size_t r : H) {
    if (r < 1 || r > rows || in_h[r - 1]) throw std::invalid_argument("invalid row set H");
    in_h[r - 1] = true;
  }
  for (std::size_t i = 0; i < rows; ++i) (in_h[i] ? h : rest).push_back(i);
  Poly total;
  for (std::uint32_t k = 0; k < (1u << cols); ++k) {
    if (static_cast<std::size_t>(std::popcount(k)) > h.size()) continue;
    auto kc = mask_to_list(k);
    Poly p = permanent_any_shape(submatrix(m, h, kc), lim);
    if (p.is_zero()) continue;
    auto other = mask_to_list(((1u << cols) - 1) & ~k);
    Poly r = brute_rook(submatrix(m, rest, other), false, x, Var::z(), lim);
    total += p * Poly::var(x, static_cast<unsigned>(kc.size())) * r;
  }
  return total;
}

Poly complement_permanent_via_rook(const RingMatrix& m, const Poly& y, const Limits& lim) {
  const std::size_t mm = std::min(m.rows(), m.cols()), nn = std::max(m.rows(), m.cols());
  auto r = rook_numbers(m, lim);
  Poly total;
  for (std::size_t i = 0; i <= mm; ++i) {
    BigInt c = binomial(static_cast<long long>(nn - i), static_cast<long long>(mm - i)) *
               factorial(static_cast<unsigned>(mm - i));
    Poly term = Poly(c) * r[i] * y.pow(static_cast<unsigned>(mm - i));
    if (i % 2) total -= term; else total += term;
  }
  return total;
}

Poly sym_weighted_sum(unsigned k, unsigned t, unsigned n, const std::vector<Poly>& weights, Var x,
                      SymSumVariant variant, const Limits& lim) {
  if (weights.size() != t + 1) throw std::invalid_argument("expected t+1 weights");
  if (k < 1 || n < 1) throw std::invalid_argument("k and n must be >= 1");
  const unsigned N = n * k;
  guard(N <= lim.sym_group_order, "nk too large for the symmetric-group sum");
  if (variant == SymSumVariant::distinct_bands && n < t + 1) {
    throw std::invalid_argument("the distinct-band form needs n >= t+1");
  }
  std::vector<unsigned> sigma(N);
  std::iota(sigma.begin(), sigma.end(), 1u);
  std::vector<Poly::Term> out;
  std::vector<std::vector<std::pair<unsigned, unsigned>>> options(N);  // (alpha, x exponent)
  do {
    for (unsigned i = 1; i <= N; ++i) {
      int d = static_cast<int>((sigma[i - 1] - 1) / k) - static_cast<int>((i - 1) / k);
      auto& opt = options[i - 1];
      opt.clear();
      for (unsigned a = 0; a <= t; ++a) {
        int diff = static_cast<int>(a) - d;
        if (((diff % static_cast<int>(n)) + static_cast<int>(n)) % static_cast<int>(n) != 0) continue;
        bool descent = sigma[i - 1] < i;
        unsigned e = variant == SymSumVariant::general ? (descent && a % n != 0 ? 1u : 0u) + a / n
                                                       : (descent && a != 0 ? 1u : 0u);
        opt.emplace_back(a, e);
      }
    }
    auto rec = [&](auto&& self, unsigned i, const Poly& prod, unsigned e) -> void {
      if (prod.is_zero()) return;
      if (i == N) {
        Poly term = prod * Poly::var(x, e);
        for (const auto& tm : term.terms()) out.push_back(tm);
        return;
      }
      for (const auto& [a, ea] : options[i]) self(self, i + 1, prod * weights[a], e + ea);
    };
    rec(rec, 0, Poly(1), 0);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return Poly::from_terms(std::move(out));
}

}  // namespace bandperm::oracle
