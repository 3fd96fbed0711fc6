#include "bandperm/states.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bandperm::states {

using exactalg::binomial;

State::State(unsigned k, std::vector<unsigned> mult) : k_(k), mult_(std::move(mult)) {
  if (k_ < 1) throw std::invalid_argument("state block size k must be >= 1");
  for (unsigned l : mult_) {
    if (l > k_) throw std::invalid_argument("state multiplicity exceeds k");
  }
}

unsigned State::weight() const { return std::accumulate(mult_.begin(), mult_.end(), 0u); }

unsigned State::min_label() const {
  for (unsigned i = 1; i <= t(); ++i) {
    if (m(i)) return i;
  }
  return 0;
}

unsigned State::max_label() const {
  for (unsigned i = t(); i >= 1; --i) {
    if (m(i)) return i;
  }
  return 0;
}

std::string State::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < mult_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(mult_[i]);
  }
  return s + "]";
}

State State::parse(unsigned k, const std::string& text) {
  std::string body;
  for (char c : text) {
    if (c == '[' || c == ']' || c == '(' || c == ')' || c == ' ') continue;
    body += c;
  }
  std::vector<unsigned> mult;
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("malformed state '" + text + "'");
      }
      mult.push_back(static_cast<unsigned>(std::stoul(item)));
    }
  }
  return State(k, std::move(mult));
}

// ---------------------------------------------------------------------------

StateIndex::StateIndex(unsigned k, unsigned t, std::optional<unsigned> grade, std::vector<State> states)
    : k_(k), t_(t), grade_(grade), states_(std::move(states)) {
  codes_.reserve(states_.size());
  for (const auto& s : states_) codes_.push_back(code(s));
  if (!std::is_sorted(codes_.begin(), codes_.end())) throw std::logic_error("state index not in lexicographic order");
}

std::uint64_t StateIndex::code(const State& s) const {
  std::uint64_t c = 0;
  for (unsigned l : s.mult()) c = c * (k_ + 1) + l;
  return c;
}

const State& StateIndex::unrank(std::size_t rank) const {
  if (rank < 1 || rank > states_.size()) throw std::out_of_range("state rank out of range");
  return states_[rank - 1];
}

std::optional<std::size_t> StateIndex::try_rank(const State& s) const {
  if (s.k() != k_ || s.t() != t_) return std::nullopt;
  auto c = code(s);
  auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
  if (it == codes_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin()) + 1;
}

std::size_t StateIndex::rank(const State& s) const {
  auto r = try_rank(s);
  if (!r) throw std::out_of_range("state " + s.str() + " not in index");
  return *r;
}

namespace {

void enumerate_rec(unsigned k, unsigned t, std::optional<unsigned> r, std::vector<unsigned>& cur, unsigned sum,
                   std::vector<State>& out) {
  unsigned pos = static_cast<unsigned>(cur.size());
  if (pos == t) {
    if (!r || sum == *r) out.emplace_back(k, cur);
    return;
  }
  unsigned left = t - pos - 1;
  for (unsigned l = 0; l <= k; ++l) {
    if (r) {
      if (sum + l > *r) break;
      if (sum + l + left * k < *r) continue;
    }
    cur.push_back(l);
    enumerate_rec(k, t, r, cur, sum + l, out);
    cur.pop_back();
  }
}

}  // namespace

StateIndex enumerate_states(unsigned k, unsigned t, std::optional<unsigned> r, std::size_t cap) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (r && *r > k * t) throw std::out_of_range("grade r out of range 0..kt");
  BigInt size = r ? card_graded(k, t, *r) : boost::multiprecision::pow(BigInt(k + 1), t);
  if (size > cap) throw std::length_error("state index of size " + size.str() + " exceeds cap " + std::to_string(cap));
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(size));
  std::vector<unsigned> cur;
  enumerate_rec(k, t, r, cur, 0, out);
  return StateIndex(k, t, r, std::move(out));
}

BigInt card_graded_alternating(unsigned k, unsigned t, long long r) {
  if (r < 0 || r > static_cast<long long>(k) * t) return 0;
  if (t == 0) return r == 0 ? 1 : 0;
  BigInt s = 0;
  for (long long l = 0; l * (k + 1) <= r; ++l) {
    BigInt term = binomial(t, l) * binomial(t + r - l * (k + 1) - 1, t - 1);
    if (l % 2) s -= term; else s += term;
  }
  return s;
}

BigInt card_graded_recurrence(unsigned k, unsigned t, long long r) {
  if (r < 0 || r > static_cast<long long>(k) * t) return 0;
  // counts[s] = |G_{s,u}| for the current u, grown one coordinate at a time
  std::vector<BigInt> counts{1};
  for (unsigned u = 1; u <= t; ++u) {
    std::vector<BigInt> next(counts.size() + k);
    for (std::size_t s = 0; s < next.size(); ++s) {
      for (unsigned i = 0; i <= k && i <= s; ++i) {
        if (s - i < counts.size()) next[s] += counts[s - i];
      }
    }
    counts = std::move(next);
  }
  return counts[static_cast<std::size_t>(r)];
}

BigInt card_graded(unsigned k, unsigned t, long long r) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (r < 0 || r > static_cast<long long>(k) * t) throw std::out_of_range("grade r out of range 0..kt");
  BigInt a = card_graded_alternating(k, t, r);
  BigInt b = card_graded_recurrence(k, t, r);
  if (a != b) throw std::logic_error("cardinality formulas disagree for |G_{r,t}|");
  return a;
}

MultisetRelation multiset_relation(const State& alpha, const State& gamma) {
  if (alpha.k() != gamma.k() || alpha.t() != gamma.t()) throw std::invalid_argument("states of different (k,t)");
  std::vector<unsigned> d(alpha.t());
  for (unsigned i = 0; i < alpha.t(); ++i) {
    if (gamma.mult()[i] > alpha.mult()[i]) return {false, std::nullopt};
    d[i] = alpha.mult()[i] - gamma.mult()[i];
  }
  return {true, State(alpha.k(), std::move(d))};
}

State shift_down(const State& gamma, unsigned n) {
  for (unsigned i = 1; i <= std::min(n, gamma.t()); ++i) {
    if (gamma.m(i)) throw std::invalid_argument("shift_down: state " + gamma.str() + " has labels <= n");
  }
  std::vector<unsigned> d(gamma.t(), 0);
  for (unsigned i = 1; i + n <= gamma.t(); ++i) d[i - 1] = gamma.m(i + n);
  return State(gamma.k(), std::move(d));
}

State rotate(const State& s) {
  if (s.t() == 0) return s;
  std::vector<unsigned> d(s.t());
  d[0] = s.mult().back();
  for (unsigned i = 1; i < s.t(); ++i) d[i] = s.mult()[i - 1];
  return State(s.k(), std::move(d));
}

std::vector<std::size_t> phi_permutation(unsigned k, unsigned t, unsigned r) {
  if (r < 1 || r > k * t) throw std::out_of_range("phi: r out of range 1..kt");
  auto idx = enumerate_states(k, t, r);
  std::vector<std::size_t> perm(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) perm[i] = idx.rank(rotate(idx.states()[i])) - 1;
  return perm;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return (perm.size() - cycles) % 2 ? -1 : 1;
}

int phi_sign(unsigned k, unsigned t, unsigned r) { return permutation_sign(phi_permutation(k, t, r)); }

// ---------------------------------------------------------------------------

SubsetIndex::SubsetIndex(unsigned r, unsigned t) : r_(r), t_(t) {
  if (r > t) throw std::out_of_range("subset size r exceeds t");
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned next) -> void {
    if (cur.size() == r) {
      tuples_.push_back(cur);
      return;
    }
    for (unsigned v = next; v + (r - cur.size()) <= t + 1; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
}

std::size_t SubsetIndex::rank(const std::vector<unsigned>& tuple) const {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), tuple);
  if (it == tuples_.end() || *it != tuple) throw std::out_of_range("tuple " + str(tuple) + " not in Q index");
  return static_cast<std::size_t>(it - tuples_.begin()) + 1;
}

std::string SubsetIndex::str(const std::vector<unsigned>& tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(tuple[i]);
  }
  return s + ")";
}

}  // namespace bandperm::states
