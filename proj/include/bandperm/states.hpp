#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bandperm/poly.hpp"

namespace bandperm::states {

using exactalg::BigInt;

// Multiset (1^<l_1>, ..., t^<l_t>) with 0 <= l_i <= k, stored as its
// multiplicity tuple.
class State {
 public:
  State() = default;
  State(unsigned k, std::vector<unsigned> mult);

  unsigned k() const { return k_; }
  unsigned t() const { return static_cast<unsigned>(mult_.size()); }
  const std::vector<unsigned>& mult() const { return mult_; }
  // 1-based multiplicity of label i; 0 outside 1..t.
  unsigned m(unsigned i) const { return i >= 1 && i <= t() ? mult_[i - 1] : 0; }
  unsigned weight() const;
  bool is_zero() const { return weight() == 0; }
  // Smallest / largest label present; 0 when empty.
  unsigned min_label() const;
  unsigned max_label() const;

  std::string str() const;  // "[l1,...,lt]"
  static State parse(unsigned k, const std::string& text);

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State& a, const State& b) { return a.mult_ <=> b.mult_; }

 private:
  unsigned k_ = 1;
  std::vector<unsigned> mult_;
};

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// States of G_t^[k] (all weights) or G_{r,t}^[k], in ascending lexicographic
// order. Ranks are 1-based.
class StateIndex {
 public:
  StateIndex() = default;
  StateIndex(unsigned k, unsigned t, std::optional<unsigned> grade, std::vector<State> states);

  unsigned k() const { return k_; }
  unsigned t() const { return t_; }
  std::optional<unsigned> grade() const { return grade_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<State>& states() const { return states_; }
  const State& unrank(std::size_t rank) const;
  std::optional<std::size_t> try_rank(const State& s) const;
  std::size_t rank(const State& s) const;  // throws when absent

 private:
  std::uint64_t code(const State& s) const;

  unsigned k_ = 1;
  unsigned t_ = 0;
  std::optional<unsigned> grade_;
  std::vector<State> states_;
  std::vector<std::uint64_t> codes_;  // sorted, parallel to states_
};

StateIndex enumerate_states(unsigned k, unsigned t, std::optional<unsigned> r = std::nullopt,
                            std::size_t cap = kDefaultStateCap);

// |G_{r,t}^[k]| by the alternating binomial sum, cross-checked against the
// recurrence over the last coordinate. Zero outside 0..kt.
BigInt card_graded(unsigned k, unsigned t, long long r);
BigInt card_graded_alternating(unsigned k, unsigned t, long long r);
BigInt card_graded_recurrence(unsigned k, unsigned t, long long r);

struct MultisetRelation {
  bool contains = false;
  std::optional<State> diff;
};
// Does alpha contain gamma as a multiset; alpha - gamma when it does.
MultisetRelation multiset_relation(const State& alpha, const State& gamma);

// {gamma - n}: requires labels 1..n to be absent.
State shift_down(const State& gamma, unsigned n);

// The rotation (l_1,...,l_t) -> (l_t, l_1, ..., l_{t-1}).
State rotate(const State& s);
// Permutation of 0-based positions in G_{r,t} induced by rotate.
std::vector<std::size_t> phi_permutation(unsigned k, unsigned t, unsigned r);
int phi_sign(unsigned k, unsigned t, unsigned r);
int permutation_sign(const std::vector<std::size_t>& perm);

// Q_{r,t}: increasing r-tuples from {1..t} in lexicographic order.
class SubsetIndex {
 public:
  SubsetIndex(unsigned r, unsigned t);
  unsigned r() const { return r_; }
  unsigned t() const { return t_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<std::vector<unsigned>>& tuples() const { return tuples_; }
  std::size_t rank(const std::vector<unsigned>& tuple) const;  // 1-based
  static std::string str(const std::vector<unsigned>& tuple);

 private:
  unsigned r_, t_;
  std::vector<std::vector<unsigned>> tuples_;
};

}  // namespace bandperm::states
