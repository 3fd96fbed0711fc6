#pragma once

#include <climits>
#include <string>
#include <variant>
#include <vector>

#include "bandperm/matrix.hpp"
#include "bandperm/states.hpp"

namespace bandperm::transfer {

using exactalg::Poly;
using exactalg::RingMatrix;
using states::State;
using states::StateIndex;
using states::SubsetIndex;

// One element of W_{r,t}^[k] / V_{r,t}^[k]: kt band labels and kt offsets.
struct WVEntry {
  static constexpr int kSentinel = INT_MAX;  // the "1/(2k)" label of the W sets
  std::vector<int> alpha;
  std::vector<int> beta;

  std::string str() const;
  friend bool operator==(const WVEntry&, const WVEntry&) = default;
  friend auto operator<=>(const WVEntry&, const WVEntry&) = default;
};

enum class WVVariant { W, V };

struct WVIndex {
  unsigned k = 1, t = 1, r = 0;
  WVVariant variant = WVVariant::V;
  std::vector<WVEntry> entries;
};

struct TransferMatrix {
  std::string kind;  // "K", "Pi", "A", "D", "AW", "AV"
  std::variant<StateIndex, SubsetIndex, WVIndex> index;
  RingMatrix matrix;
  std::vector<Poly> weights;

  std::size_t order() const { return matrix.rows(); }
  std::vector<std::string> labels() const;
};

TransferMatrix build_K(unsigned k, unsigned t, const std::vector<Poly>& weights);
TransferMatrix build_Pi(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights);
TransferMatrix build_A_graded(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights);
TransferMatrix build_D(unsigned r, unsigned t, const std::vector<Poly>& weights);

inline constexpr unsigned kDefaultWVGuard = 8;  // max k*t
std::vector<WVEntry> enumerate_WV(unsigned k, unsigned t, unsigned r, WVVariant variant,
                                  unsigned guard = kDefaultWVGuard);
TransferMatrix build_A_WV(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights, WVVariant variant,
                          unsigned guard = kDefaultWVGuard);

struct ClosedFormDetPer {
  Poly det_pi;
  Poly per_pi;
  Poly det_k;
};
ClosedFormDetPer closed_form_det_per(unsigned k, unsigned t, unsigned r, const std::vector<Poly>& weights);

// Symbolic weights a0..a_t.
std::vector<Poly> symbolic_weights(unsigned t);
// w_i -> w_i * x^i (grading) or w_i * x (rook marking).
std::vector<Poly> graded_weights(const std::vector<Poly>& w, exactalg::Var x);
std::vector<Poly> scaled_weights(const std::vector<Poly>& w, const Poly& s);

}  // namespace bandperm::transfer
