#include "bandperm/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bandperm/evaluate.hpp"
#include "bandperm/genfun.hpp"

namespace bandperm::verify {

using bands::Family;
using evaluate::Mode;
using exactalg::BigInt;
using exactalg::binomial;
using exactalg::Poly;
using exactalg::RingMatrix;
using exactalg::Var;
using states::State;
using states::StateIndex;

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const Cell& c) { return !c.ok; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"zero-pattern", "trace-derivative", "structure", "genfun", "oracle"};
  return names;
}

namespace {

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

class Sink {
 public:
  explicit Sink(std::vector<Cell>& out) : out_(out) {}

  // Runs body against a fresh cell; exceptions fail the cell.
  void run(const std::string& suite, const std::string& label, const std::function<void(Cell&)>& body) {
    Cell c;
    c.suite = suite;
    c.label = label;
    c.ok = true;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = cat("exception: ", e.what());
    }
    out_.push_back(std::move(c));
  }

 private:
  std::vector<Cell>& out_;
};

void expect(Cell& c, bool ok, const std::function<std::string()>& what) {
  ++c.checks;
  if (!ok && c.ok) {
    c.ok = false;
    c.detail = what();
  }
}

void expect_eq(Cell& c, const Poly& got, const Poly& want, const std::string& where) {
  expect(c, got == want, [&] { return cat(where, ": ", got.str(), " != ", want.str()); });
}

std::vector<Poly> random_weights(std::mt19937_64& rng, unsigned t) {
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<Poly> w;
  for (unsigned i = 0; i <= t; ++i) w.push_back(Poly(dist(rng)));
  return w;
}

RingMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<int> dist(-3, 3);
  RingMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
  }
  return a;
}

Poly trace_product(const RingMatrix& a, const RingMatrix& b) {
  Poly t;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero() && !b(j, i).is_zero()) t += a(i, j) * b(j, i);
    }
  }
  return t;
}

// Tr(dM/dv * M^(n-1))
Poly trace_derivative(const RingMatrix& m, Var v, unsigned n) {
  return trace_product(m.derivative(v), exactalg::mat_pow(m, n - 1));
}

oracle::Limits limits_for(const Bounds& b) {
  oracle::Limits lim;
  lim.numeric_rows = std::max<std::size_t>(lim.numeric_rows, b.oracle_size);
  lim.symbolic_rows = std::max<std::size_t>(lim.symbolic_rows, b.oracle_size);
  return lim;
}

BigInt prod_binomial(const State& top, const State& bottom) {
  BigInt c = 1;
  for (unsigned i = 1; i <= top.t(); ++i) c *= binomial(top.m(i), bottom.m(i));
  return c;
}

std::string kt(unsigned k, unsigned t) { return cat("k=", k, " t=", t); }

// ---------------------------------------------------------------------------
// zero patterns and factorizations

void zero_pattern_K_Pi(Sink& sink, unsigned k, unsigned t, unsigned n) {
  auto w = transfer::symbolic_weights(t);
  auto K = transfer::build_K(k, t, w);
  const auto& idx = std::get<StateIndex>(K.index);
  RingMatrix Kn = exactalg::mat_pow(K.matrix, n);
  std::vector<transfer::TransferMatrix> Pi;
  std::vector<RingMatrix> Pn;
  for (unsigned r = 0; r <= k * t; ++r) {
    Pi.push_back(transfer::build_Pi(k, t, r, w));
    Pn.push_back(exactalg::mat_pow(Pi.back().matrix, n));
  }
  auto rank_in = [](const transfer::TransferMatrix& m, const State& s) {
    return std::get<StateIndex>(m.index).rank(s) - 1;
  };

  // (beta, gamma) pairs with max{beta} >= n+1, gamma <= beta, min{gamma} >= n+1
  std::vector<std::pair<State, State>> pairs;
  for (const State& be : idx.states()) {
    if (be.max_label() < n + 1) continue;
    for (const State& g : idx.states()) {
      if (g.is_zero() || g.min_label() < n + 1) continue;
      if (!states::multiset_relation(be, g).contains) continue;
      pairs.emplace_back(be, g);
    }
  }

  const std::string where = cat(kt(k, t), " n=", n);
  sink.run("zero-pattern", cat("K zero ", where), [&](Cell& c) {
    for (const State& al : idx.states()) {
      for (const auto& [be, g] : pairs) {
        if (states::multiset_relation(al, states::shift_down(g, n)).contains) continue;
        expect_eq(c, Kn(idx.rank(al) - 1, idx.rank(be) - 1), Poly(), cat(al.str(), be.str(), g.str()));
      }
    }
  });
  sink.run("zero-pattern", cat("K factor ", where), [&](Cell& c) {
    for (const State& al : idx.states()) {
      for (const auto& [be, g] : pairs) {
        State gm = states::shift_down(g, n);
        auto rel = states::multiset_relation(al, gm);
        if (!rel.contains) continue;
        State bd = *states::multiset_relation(be, g).diff;
        Poly lhs = Kn(idx.rank(al) - 1, idx.rank(be) - 1) * Poly(prod_binomial(be, g));
        Poly rhs = Poly(prod_binomial(al, gm)) * Kn(idx.rank(*rel.diff) - 1, idx.rank(bd) - 1);
        expect_eq(c, lhs, rhs, cat(al.str(), be.str(), g.str()));
      }
    }
  });
  sink.run("zero-pattern", cat("Pi zero ", where), [&](Cell& c) {
    for (const State& al : idx.states()) {
      for (const auto& [be, g] : pairs) {
        if (al.weight() != be.weight()) continue;
        if (states::multiset_relation(al, states::shift_down(g, n)).contains) continue;
        const unsigned r = al.weight();
        expect_eq(c, Pn[r](rank_in(Pi[r], al), rank_in(Pi[r], be)), Poly(), cat(al.str(), be.str(), g.str()));
      }
    }
  });
  sink.run("zero-pattern", cat("Pi factor ", where), [&](Cell& c) {
    for (const State& al : idx.states()) {
      for (const auto& [be, g] : pairs) {
        if (al.weight() != be.weight()) continue;
        State gm = states::shift_down(g, n);
        auto rel = states::multiset_relation(al, gm);
        if (!rel.contains) continue;
        const unsigned r = al.weight(), r2 = r - g.weight();
        State bd = *states::multiset_relation(be, g).diff;
        Poly lhs = Pn[r](rank_in(Pi[r], al), rank_in(Pi[r], be)) * Poly(prod_binomial(be, g));
        Poly rhs = Poly(prod_binomial(al, gm)) * Pn[r2](rank_in(Pi[r2], *rel.diff), rank_in(Pi[r2], bd));
        expect_eq(c, lhs, rhs, cat(al.str(), be.str(), g.str()));
      }
    }
  });
}

using Tuple = std::vector<unsigned>;

void zero_pattern_D(Sink& sink, unsigned t, unsigned n) {
  auto w = transfer::symbolic_weights(t);
  std::vector<states::SubsetIndex> Q;
  std::vector<RingMatrix> Dn;
  for (unsigned r = 0; r <= t; ++r) {
    auto D = transfer::build_D(r, t, w);
    Q.push_back(std::get<states::SubsetIndex>(D.index));
    Dn.push_back(exactalg::mat_pow(D.matrix, n));
  }
  const std::string where = cat("t=", t, " n=", n);
  auto body = [&](Cell& c, bool zero) {
    for (unsigned r = 1; r <= t; ++r) {
      for (const Tuple& al : Q[r].tuples()) {
        std::set<unsigned> aset(al.begin(), al.end());
        for (const Tuple& be : Q[r].tuples()) {
          if (be.back() < n + 1) continue;
          const Poly& v = Dn[r](Q[r].rank(al) - 1, Q[r].rank(be) - 1);
          // gamma: nonempty subsets of beta with min >= n+1
          std::vector<unsigned> high;
          for (unsigned b : be) {
            if (b >= n + 1) high.push_back(b);
          }
          for (unsigned mask = 1; mask < (1u << high.size()); ++mask) {
            std::set<unsigned> g, gm;
            for (std::size_t i = 0; i < high.size(); ++i) {
              if (mask >> i & 1u) {
                g.insert(high[i]);
                gm.insert(high[i] - n);
              }
            }
            bool contained = std::includes(aset.begin(), aset.end(), gm.begin(), gm.end());
            std::string label = cat(Q[r].str(al), Q[r].str(be), " gamma size ", g.size());
            if (zero) {
              if (!contained && r <= t - 1) expect_eq(c, v, Poly(), label);
              continue;
            }
            if (!contained) continue;
            Tuple a2, b2;
            std::set_difference(aset.begin(), aset.end(), gm.begin(), gm.end(), std::back_inserter(a2));
            std::set_difference(be.begin(), be.end(), g.begin(), g.end(), std::back_inserter(b2));
            const unsigned r2 = r - static_cast<unsigned>(g.size());
            // Card{(i,j) in {gamma-n} x ({alpha} \ ({beta-n} cap {alpha})) : i < j}
            std::set<unsigned> rest = aset;
            for (unsigned b : be) {
              if (b > n) rest.erase(b - n);
            }
            std::size_t card = 0;
            for (unsigned i : gm) {
              for (unsigned j : rest) card += i < j;
            }
            Poly v2 = Dn[r2](Q[r2].rank(a2) - 1, Q[r2].rank(b2) - 1);
            expect_eq(c, v, card % 2 ? -v2 : v2, label);
          }
        }
      }
    }
  };
  sink.run("zero-pattern", cat("D zero ", where), [&](Cell& c) { body(c, true); });
  sink.run("zero-pattern", cat("D factor ", where), [&](Cell& c) { body(c, false); });
}

void d_one_vs_pi(Sink& sink, unsigned t) {
  sink.run("zero-pattern", cat("D_1 = Pi_1 signed t=", t), [&](Cell& c) {
    auto w = transfer::symbolic_weights(t);
    auto D = transfer::build_D(1, t, w);
    std::vector<Poly> neg = w;
    for (unsigned i = 1; i <= t; ++i) neg[i] = -w[i];
    auto P = transfer::build_Pi(1, t, 1, neg);
    const auto& idx = std::get<StateIndex>(P.index);
    auto unit = [&](unsigned i) {
      std::vector<unsigned> m(t, 0);
      m[i - 1] = 1;
      return idx.rank(State(1, m)) - 1;
    };
    for (unsigned i = 1; i <= t; ++i) {
      for (unsigned j = 1; j <= t; ++j) {
        expect_eq(c, D.matrix(i - 1, j - 1), P.matrix(unit(i), unit(j)), cat("(", i, ",", j, ")"));
      }
    }
  });
}

void suite_zero_pattern(Sink& sink, const Bounds& b) {
  for (unsigned k = 1; k <= b.max_k; ++k) {
    for (unsigned t = 2; t <= b.max_t; ++t) {
      for (unsigned n = 1; n + 1 <= t; ++n) zero_pattern_K_Pi(sink, k, t, n);
    }
  }
  for (unsigned t = 2; t <= b.max_t + 1; ++t) {
    for (unsigned n = 1; n + 1 <= t; ++n) zero_pattern_D(sink, t, n);
  }
  for (unsigned t = 1; t <= b.max_t + 1; ++t) d_one_vs_pi(sink, t);
}

// ---------------------------------------------------------------------------
// trace derivatives

void suite_trace_derivative(Sink& sink, const Bounds& b) {
  for (unsigned k = 1; k <= b.max_k; ++k) {
    for (unsigned t = 1; t <= b.max_t; ++t) {
      auto w = transfer::symbolic_weights(t);
      auto K = transfer::build_K(k, t, w).matrix;
      std::vector<RingMatrix> P;
      for (unsigned r = 0; r <= k * t; ++r) P.push_back(transfer::build_Pi(k, t, r, w).matrix);
      for (unsigned n = 1; n <= t; ++n) {
        const Var a0 = Var::weight(0), an = Var::weight(n);
        const std::string where = cat(kt(k, t), " n=", n);
        sink.run("trace-derivative", cat("K ", where), [&](Cell& c) {
          expect_eq(c, trace_derivative(K, a0, n), trace_derivative(K, an, n), "K");
        });
        sink.run("trace-derivative", cat("Pi ", where), [&](Cell& c) {
          for (unsigned r = 0; r < k * t; ++r) {
            expect_eq(c, trace_derivative(P[r], a0, n), trace_derivative(P[r + 1], an, n), cat("r=", r));
          }
        });
        sink.run("trace-derivative", cat("Pi summed ", where), [&](Cell& c) {
          Poly lhs, rhs;
          for (const auto& m : P) {
            lhs += trace_derivative(m, a0, n);
            rhs += trace_derivative(m, an, n);
          }
          expect_eq(c, lhs, rhs, "sum over r");
        });
      }
    }
  }
  for (unsigned t = 1; t <= b.max_t + 1; ++t) {
    auto w = transfer::symbolic_weights(t);
    std::vector<RingMatrix> D;
    for (unsigned s = 0; s <= t; ++s) D.push_back(transfer::build_D(s, t, w).matrix);
    for (unsigned n = 1; n <= t; ++n) {
      const Var a0 = Var::weight(0), an = Var::weight(n);
      sink.run("trace-derivative", cat("D t=", t, " n=", n), [&](Cell& c) {
        Poly lhs, rhs;
        for (unsigned s = 0; s <= t; ++s) {
          Poly d0 = trace_derivative(D[s], a0, n), dn = trace_derivative(D[s], an, n);
          if (s < t) expect_eq(c, d0 + trace_derivative(D[s + 1], an, n), Poly(), cat("s=", s));
          lhs += s % 2 ? -d0 : d0;
          rhs += s % 2 ? -dn : dn;
        }
        expect_eq(c, lhs, rhs, "alternating sum");
      });
    }
  }
}

// ---------------------------------------------------------------------------
// structure: grading, charpoly symmetry, closed forms, lemmas

void suite_structure(Sink& sink, const Bounds& b, std::mt19937_64& rng) {
  const Var x = Var::x();
  const Var lambda = Var::named("lambda");
  oracle::Limits lim = limits_for(b);
  for (unsigned k = 1; k <= b.max_k; ++k) {
    for (unsigned t = 1; t <= b.max_t; ++t) {
      auto w = transfer::symbolic_weights(t);
      auto wx = transfer::graded_weights(w, x);
      std::vector<Poly> rev(w.rbegin(), w.rend());
      sink.run("structure", cat("grading ", kt(k, t)), [&](Cell& c) {
        for (unsigned r = 0; r <= k * t; ++r) {
          auto P = transfer::build_Pi(k, t, r, w).matrix;
          auto Px = transfer::build_Pi(k, t, r, wx).matrix;
          for (unsigned n = 1; n <= 3; ++n) {
            expect_eq(c, exactalg::trace_power(Px, n), Poly::var(x, r * n) * exactalg::trace_power(P, n),
                      cat("r=", r, " n=", n));
          }
        }
      });
      sink.run("structure", cat("charpoly symmetry ", kt(k, t)), [&](Cell& c) {
        for (unsigned r = 0; r <= k * t; ++r) {
          auto P = transfer::build_Pi(k, t, r, w).matrix;
          auto Q = transfer::build_Pi(k, t, k * t - r, rev).matrix;
          expect_eq(c, exactalg::charpoly(P, lambda), exactalg::charpoly(Q, lambda), cat("r=", r));
        }
      });
      sink.run("structure", cat("closed det/per ", kt(k, t)), [&](Cell& c) {
        for (unsigned r = 1; r <= k * t; ++r) {
          auto P = transfer::build_Pi(k, t, r, w).matrix;
          auto cf = transfer::closed_form_det_per(k, t, r, w);
          expect_eq(c, cf.det_pi, exactalg::det_berkowitz(P), cat("det r=", r));
          if (P.rows() <= lim.symbolic_rows) {
            expect_eq(c, cf.per_pi, oracle::brute_permanent(P, lim), cat("per r=", r));
          }
        }
        auto K = transfer::build_K(k, t, w).matrix;
        if (K.rows() <= 9) {
          expect_eq(c, transfer::closed_form_det_per(k, t, 1, w).det_k, exactalg::det_berkowitz(K), "det K");
        }
      });
      sink.run("structure", cat("cardinalities ", kt(k, t)), [&](Cell& c) {
        BigInt total = 0;
        for (unsigned r = 0; r <= k * t; ++r) {
          BigInt card = states::card_graded(k, t, r);
          total += card;
          expect(c, card == states::enumerate_states(k, t, r).size(), [&] { return cat("|G_r| r=", r); });
          expect(c, card == states::card_graded(k, t, static_cast<long long>(k * t) - r),
                 [&] { return cat("symmetry r=", r); });
        }
        expect(c, total == boost::multiprecision::pow(BigInt(k + 1), t), [] { return std::string("sum over r"); });
      });
    }
  }

  sink.run("structure", "twisted powers", [&](Cell& c) {
    for (unsigned n = 1; n <= b.max_n + 1; ++n) {
      const int N = static_cast<int>(n);
      RingMatrix P = bands::twisted_shift(n);
      RingMatrix I = RingMatrix::identity(n);
      expect(c, exactalg::mat_pow(P, n) == Poly::var(x) * I, [&] { return cat("P^n n=", n); });
      for (int s = 0; s <= N; ++s) {
        expect(c, bands::twisted_power_formula(n, s) == exactalg::mat_pow(P, s), [&] { return cat("s=", s); });
      }
      for (int m = 1; m <= N; ++m) {
        expect(c, bands::twisted_power_formula(n, -m) * exactalg::mat_pow(P, m) == I,
               [&] { return cat("s=-", m, " n=", n); });
      }
      for (int s = N + 1; s <= 2 * N + 1; ++s) {
        expect(c, bands::twisted_power(n, s) == exactalg::mat_pow(P, s), [&] { return cat("s=", s, " n=", n); });
        expect(c, bands::twisted_power(n, -s) * exactalg::mat_pow(P, s) == I,
               [&] { return cat("s=-", s, " n=", n); });
      }
    }
  });

  sink.run("structure", "partition expansions", [&](Cell& c) {
    std::uniform_int_distribution<unsigned> dim(1, 5);
    const Poly y = Poly::var(Var::y());
    for (unsigned s = 0; s < 4 * b.samples; ++s) {
      const std::size_t m = dim(rng), n = dim(rng);
      RingMatrix a = random_matrix(rng, m, n);
      std::vector<std::size_t> rows(m);
      std::iota(rows.begin(), rows.end(), 1);
      std::shuffle(rows.begin(), rows.end(), rng);
      std::uniform_int_distribution<std::size_t> cells_dist(1, m);
      std::size_t cells = cells_dist(rng);
      std::vector<std::vector<std::size_t>> parts(cells);
      for (std::size_t i = 0; i < m; ++i) parts[i < cells ? i : rng() % cells].push_back(rows[i]);
      const std::string label = cat(m, "x", n, " cells=", cells);
      Poly per = oracle::permanent_any_shape(a, lim);
      Poly rook = oracle::brute_rook(a, false, x, Var::z(), lim);
      auto ex = oracle::partition_expand(a, parts, x, lim);
      expect_eq(c, ex.per, per, cat("per ", label));
      expect_eq(c, ex.rook, rook, cat("rook ", label));
      std::vector<std::size_t> H(parts[0].begin(), parts[0].end());
      expect_eq(c, oracle::rook_recursion(a, H, x, lim), rook, cat("recursion ", label));
      if (m <= n) {
        RingMatrix comp = bands::complement_matrix(a, y);
        expect_eq(c, oracle::complement_permanent_via_rook(a, y, lim), oracle::brute_permanent(comp, lim),
                  cat("complement ", label));
      }
    }
  });

  for (unsigned k = 1; k <= b.max_k; ++k) {
    for (unsigned t = 0; t <= 2; ++t) {
      auto w = transfer::symbolic_weights(t);
      for (unsigned n = 1; n * k <= lim.sym_group_order && n <= b.max_n; ++n) {
        if (n * k > 6) continue;
        sink.run("structure", cat("symmetric-group sum ", kt(k, t), " n=", n), [&](Cell& c) {
          Poly rhs;
          for (unsigned r = 0; r <= k * t; ++r) {
            rhs += exactalg::trace_power(transfer::build_Pi(k, t, r, w).matrix, n) * Poly::var(x, r);
          }
          expect_eq(c, oracle::sym_weighted_sum(k, t, n, w, x, oracle::SymSumVariant::general, lim), rhs, "general");
          if (n >= t + 1) {
            expect_eq(c, oracle::sym_weighted_sum(k, t, n, w, x, oracle::SymSumVariant::distinct_bands, lim), rhs,
                      "distinct bands");
          }
        });
      }
    }
  }

  for (unsigned k = 1; k <= b.max_k; ++k) {
    for (unsigned t = 1; t <= 2; ++t) {
      for (unsigned r = 0; r <= t; ++r) {
        for (unsigned n = 1; n <= 4 && n * k <= lim.symbolic_rows; ++n) {
          if (k > 1 && n * k > 8) continue;
          sink.run("structure", cat("twisted circulant ", kt(k, t), " r=", r, " n=", n), [&](Cell& c) {
            auto spec = bands::make_spec(Family::circulant_x, k, r, transfer::symbolic_weights(t), r > 0);
            auto g = evaluate::graded_eval(spec, n, x, lim);
            expect_eq(c, g.transfer, g.oracle, "graded");
          });
        }
      }
    }
  }

  for (unsigned k = 1; k <= std::min(b.max_k, 2u); ++k) {
    for (unsigned t = 1; t <= 2 && k * t <= 4; ++t) {
      auto w = transfer::symbolic_weights(t);
      for (unsigned n = 1; n <= 3; ++n) {
        sink.run("structure", cat("W/V traces ", kt(k, t), " n=", n), [&](Cell& c) {
          for (unsigned r = 0; r <= t; ++r) {
            auto circ = bands::make_spec(Family::circulant, k, r, w);
            auto circ0 = bands::make_spec(Family::circulant, k, 0, w);
            auto toep = bands::make_spec(Family::toeplitz, k, r, w);
            for (Mode mode : {Mode::permanent, Mode::rook}) {
              std::string lbl = cat("r=", r, " ", evaluate::mode_name(mode));
              Poly wv = evaluate::circulant_eval_wv(circ, n, mode);
              expect_eq(c, wv, evaluate::circulant_eval(circ, n, mode), cat("circulant ", lbl));
              expect_eq(c, wv, evaluate::circulant_eval_wv(circ0, n, mode), cat("r-independence ", lbl));
              expect_eq(c, evaluate::toeplitz_eval_wv(toep, n, mode), evaluate::toeplitz_eval(toep, n, mode),
                        cat("toeplitz ", lbl));
            }
          }
        });
      }
    }
  }
}

// ---------------------------------------------------------------------------
// generating functions

void suite_genfun(Sink& sink, const Bounds& b) {
  using genfun::GFKind;
  const unsigned N = 6;
  const Var y = Var::y(), x = Var::x();
  for (unsigned k = 1; k <= std::min(b.max_k, 2u); ++k) {
    for (unsigned t = 1; t <= std::min(b.max_t, 2u); ++t) {
      auto w = transfer::symbolic_weights(t);
      for (unsigned r = 0; r <= t; ++r) {
        auto toep = bands::make_spec(Family::toeplitz, k, r, w);
        auto circ = bands::make_spec(Family::circulant, k, r, w);
        const std::string where = cat(kt(k, t), " r=", r);
        auto series = [&](Cell& c, GFKind kind, const std::function<Poly(unsigned)>& direct) {
          auto g = genfun::build_gf(k, t, r, w, kind, y, x);
          auto rep = genfun::series_check(g.total, direct, N);
          expect(c, rep.ok, [&] {
            return cat(genfun::kind_name(kind), " n=", *rep.first_mismatch, ": ", rep.got.str(), " != ",
                       rep.expected.str());
          });
          expect_eq(c, g.total.den.constant_term(), Poly(1), "constant term of den");
          return g;
        };
        sink.run("genfun", cat("toeplitz rook ", where), [&](Cell& c) {
          series(c, GFKind::toeplitz_rook, [&](unsigned n) { return evaluate::toeplitz_eval(toep, n, Mode::rook); });
        });
        sink.run("genfun", cat("toeplitz per ", where), [&](Cell& c) {
          series(c, GFKind::toeplitz_per,
                 [&](unsigned n) { return evaluate::toeplitz_eval(toep, n, Mode::permanent); });
        });
        if (r > 0) continue;  // circulant traces do not depend on r
        sink.run("genfun", cat("circulant rook ", where), [&](Cell& c) {
          auto g = series(c, GFKind::circulant_rook, [&](unsigned n) { return evaluate::circulant_rook(circ, n); });
          // det(I - yK) is the reversed characteristic polynomial of K
          auto K = transfer::build_K(k, t, transfer::scaled_weights(w, Poly::var(x))).matrix;
          Poly cp = exactalg::charpoly(K, Var::named("lambda"));
          Poly rev;
          for (unsigned i = 0; i <= K.rows(); ++i) {
            rev += cp.coefficient(Var::named("lambda"), static_cast<unsigned>(K.rows()) - i) * Poly::var(y, i);
          }
          expect_eq(c, g.total.den, rev, "reversed charpoly");
          Poly direct_det = exactalg::det_cofactor(RingMatrix::identity(K.rows()) - Poly::var(y) * K);
          if (K.rows() <= 4) expect_eq(c, g.total.den, direct_det, "cofactor determinant");
        });
        sink.run("genfun", cat("circulant per ", where), [&](Cell& c) {
          auto g = series(c, GFKind::circulant_per, [&](unsigned n) { return evaluate::circulant_permanent(circ, n); });
          for (unsigned l = 0; l < g.per_grade.size(); ++l) {
            auto P = transfer::build_Pi(k, t, l, w).matrix;
            auto rep = genfun::series_check(g.per_grade[l], [&](unsigned n) { return exactalg::trace_power(P, n); }, N);
            expect(c, rep.ok, [&] { return cat("grade ", l, " n=", *rep.first_mismatch); });
          }
        });
      }
    }
  }
  sink.run("genfun", "tridiagonal series", [&](Cell& c) {
    std::vector<Poly> ones{1, 1, 1};
    auto g = genfun::build_gf(1, 2, 1, ones, GFKind::toeplitz_per);
    auto spec = bands::make_spec(Family::toeplitz, 1, 1, ones);
    auto rep = genfun::series_check(
        g.total, [&](unsigned n) { return oracle::brute_permanent(bands::build_kron_band(spec, n)); }, N);
    expect(c, rep.ok, [&] { return cat("n=", *rep.first_mismatch); });
    auto coeffs = exactalg::rational_series(g.total, N);
    const long long fib[] = {1, 1, 2, 3, 5, 8, 13};
    for (unsigned n = 0; n <= N; ++n) expect_eq(c, coeffs[n], Poly(fib[n]), cat("n=", n));
  });
  sink.run("genfun", "perturbed numerator", [&](Cell& c) {
    auto w = transfer::symbolic_weights(1);
    auto spec = bands::make_spec(Family::circulant, 1, 0, w);
    auto g = genfun::build_gf(1, 1, 0, w, GFKind::circulant_per).total;
    auto direct = [&](unsigned n) { return evaluate::circulant_permanent(spec, n); };
    expect(c, genfun::series_check(g, direct, N).ok, [] { return std::string("unperturbed"); });
    g.num += Poly::var(y);
    auto rep = genfun::series_check(g, direct, N);
    expect(c, !rep.ok && rep.first_mismatch == 1u, [] { return std::string("mismatch not reported at n=1"); });
  });
}

// ---------------------------------------------------------------------------
// brute-force agreement

BigInt literal_count(const std::vector<int>& S, unsigned n, bool cyclic, bool complement) {
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  const int N = static_cast<int>(n);
  BigInt count = 0;
  do {
    bool all = true;
    for (int i = 0; i < N && all; ++i) {
      int d = sigma[i] - i;
      bool in = false;
      for (int s : S) in = in || (cyclic ? ((d - s) % N + N) % N == 0 : d == s);
      all = complement ? !in : in;
    }
    if (all) ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

void suite_oracle(Sink& sink, const Bounds& b, std::mt19937_64& rng) {
  oracle::Limits lim = limits_for(b);
  const Var x = Var::x();
  for (unsigned k = 1; k <= b.max_k; ++k) {
    for (unsigned t = 1; t <= std::min(b.max_t, 2u); ++t) {
      for (unsigned r = 0; r <= t; ++r) {
        for (unsigned n = 1; n <= b.max_n && n * k <= b.oracle_size; ++n) {
          std::vector<std::vector<Poly>> sets;
          for (unsigned s = 0; s < b.samples; ++s) sets.push_back(random_weights(rng, t));
          const std::string where = cat(kt(k, t), " r=", r, " n=", n);
          if (n >= t + 1) {
            sink.run("oracle", cat("circulant per ", where), [&](Cell& c) {
              for (const auto& w : sets) {
                auto spec = bands::make_spec(Family::circulant, k, r, w);
                expect_eq(c, evaluate::circulant_permanent(spec, n),
                          oracle::brute_permanent(bands::build_kron_band(spec, n), lim), "per");
              }
            });
            if (n * k <= 7) {
              sink.run("oracle", cat("circulant rook ", where), [&](Cell& c) {
                for (const auto& w : sets) {
                  auto spec = bands::make_spec(Family::circulant, k, r, w);
                  expect_eq(c, evaluate::circulant_rook(spec, n),
                            oracle::brute_rook(bands::build_kron_band(spec, n), false, x, Var::z(), lim), "rook");
                }
              });
            }
          }
          sink.run("oracle", cat("toeplitz per ", where), [&](Cell& c) {
            for (const auto& w : sets) {
              auto spec = bands::make_spec(Family::toeplitz, k, r, w);
              expect_eq(c, evaluate::toeplitz_eval(spec, n, Mode::permanent),
                        oracle::brute_permanent(bands::build_kron_band(spec, n), lim), "per");
            }
          });
          if (n * k <= 7) {
            sink.run("oracle", cat("toeplitz rook ", where), [&](Cell& c) {
              for (const auto& w : sets) {
                auto spec = bands::make_spec(Family::toeplitz, k, r, w);
                expect_eq(c, evaluate::toeplitz_eval(spec, n, Mode::rook),
                          oracle::brute_rook(bands::build_kron_band(spec, n), false, x, Var::z(), lim), "rook");
              }
            });
          }
        }
      }
    }
  }

  // entry identities on the selected submatrices
  oracle::Limits sub_lim = lim;
  sub_lim.symbolic_rows = std::max<std::size_t>(sub_lim.symbolic_rows, 8);
  sub_lim.rook_rows_plus_cols = 24;
  for (unsigned k = 1; k <= std::min(b.max_k, 2u); ++k) {
    for (unsigned t = 1; t <= std::min(b.max_t, 2u); ++t) {
      auto w = transfer::symbolic_weights(t);
      auto alphas = states::enumerate_states(k, t);
      for (unsigned n = 1; n <= std::min(b.max_n, 4u); ++n) {
        auto betas = states::enumerate_states(k, std::min(n, t));
        using evaluate::SubmatrixTheorem;
        for (auto which : {SubmatrixTheorem::rook_K, SubmatrixTheorem::per_Pi, SubmatrixTheorem::per_A}) {
          const char* name = which == SubmatrixTheorem::rook_K ? "rook K" : which == SubmatrixTheorem::per_Pi
                                                                               ? "per Pi"
                                                                               : "per A";
          sink.run("oracle", cat("submatrix ", name, " ", kt(k, t), " n=", n), [&](Cell& c) {
            for (const State& al : alphas.states()) {
              for (const State& be : betas.states()) {
                if (which == SubmatrixTheorem::per_Pi && al.weight() != be.weight()) continue;
                auto e = evaluate::submatrix_eval(k, t, n, w, al, be, which, x, sub_lim);
                expect(c, e.equal, [&] { return cat(al.str(), be.str(), ": ", e.lhs.str(), " vs ", e.rhs.str()); });
              }
            }
          });
        }
      }
    }
  }

  // closed forms
  oracle::Limits wide = lim;
  wide.symbolic_rows = std::max<std::size_t>(wide.symbolic_rows, 12);
  const Poly a0 = Poly::var(Var::weight(0)), a1 = Poly::var(Var::weight(1));
  for (unsigned k = 1; k <= std::max(b.max_k, 3u); ++k) {
    for (unsigned n = 1; n <= 4; ++n) {
      sink.run("oracle", cat("two-band permanent k=", k, " n=", n), [&](Cell& c) {
        auto spec = bands::make_spec(Family::circulant, k, 0, {a0, a1});
        Poly cf = evaluate::closed_form_two_band_per(k, n, a0, a1);
        expect_eq(c, cf, evaluate::circulant_permanent(spec, n), "transfer");
        expect_eq(c, cf, oracle::brute_permanent(bands::build_kron_band(spec, n), wide), "oracle");
      });
    }
  }
  for (auto [n, t] : {std::pair{4u, 2u}, {6u, 3u}, {6u, 2u}}) {
    for (unsigned k = 1; k <= std::min(b.max_k, 2u); ++k) {
      sink.run("oracle", cat("gcd form n=", n, " ", kt(k, t)), [&](Cell& c) {
        std::vector<Poly> w(t + 1);
        w[0] = a0;
        w[t] = Poly::var(Var::weight(t));
        auto spec = bands::make_spec(Family::circulant, k, 0, w);
        Poly cf = evaluate::closed_form_gcd(k, n, t, w[0], w[t]);
        expect_eq(c, cf, evaluate::circulant_permanent(spec, n), "transfer");
        expect_eq(c, cf, oracle::brute_permanent(bands::build_kron_band(spec, n), wide), "oracle");
      });
    }
  }
  for (unsigned k = 1; k <= std::min(b.max_k, 2u); ++k) {
    for (unsigned n = 1; n <= 4; ++n) {
      sink.run("oracle", cat("two-band rook k=", k, " n=", n), [&](Cell& c) {
        auto spec = bands::make_spec(Family::circulant, k, 0, {a0, a1});
        expect_eq(c, evaluate::closed_form_two_band_rook(k, n, a0, a1, x), evaluate::circulant_rook(spec, n),
                  "transfer");
      });
    }
  }

  // forbidden positions
  sink.run("oracle", "derangements", [&](Cell& c) {
    const long long want[] = {1, 2, 9, 44, 265};
    for (unsigned n = 2; n <= 6; ++n) {
      auto res = evaluate::count_restricted({0}, n, Family::circulant, true);
      expect(c, res.value == want[n - 2], [&] { return cat("n=", n, " got ", res.value); });
      expect(c, res.value == literal_count({0}, n, true, true), [&] { return cat("literal n=", n); });
    }
  });
  sink.run("oracle", "menage", [&](Cell& c) {
    const long long want[] = {2, 13, 80};
    for (unsigned n = 4; n <= 6; ++n) {
      auto res = evaluate::count_restricted({0, 1}, n, Family::circulant, true);
      expect(c, res.value == want[n - 4], [&] { return cat("n=", n, " got ", res.value); });
      expect(c, res.value == literal_count({0, 1}, n, true, true), [&] { return cat("literal n=", n); });
    }
  });
  sink.run("oracle", "restricted counts", [&](Cell& c) {
    std::uniform_int_distribution<int> pick(-2, 2);
    for (unsigned s = 0; s < 4 * b.samples; ++s) {
      std::set<int> S;
      for (int i = 0, m = 1 + static_cast<int>(rng() % 3); i < m; ++i) S.insert(pick(rng));
      std::vector<int> set(S.begin(), S.end());
      for (unsigned n = 1; n <= 6; ++n) {
        for (bool cyclic : {false, true}) {
          for (bool complement : {false, true}) {
            auto res = evaluate::count_restricted(set, n, cyclic ? Family::circulant : Family::toeplitz, complement);
            BigInt want = literal_count(set, n, cyclic, complement);
            expect(c, res.value == want, [&] {
              return cat("n=", n, cyclic ? " cyclic" : "", complement ? " complement" : "", " got ", res.value,
                         " want ", want);
            });
          }
        }
      }
    }
  });
  sink.run("oracle", "tridiagonal permanent", [&](Cell& c) {
    auto res = evaluate::count_restricted({-1, 0, 1}, 4, Family::toeplitz, false);
    expect(c, res.value == 5, [&] { return cat("got ", res.value); });
  });
}

}  // namespace

Report run_suite(const std::string& name, const Bounds& bounds) {
  const auto& names = suite_names();
  if (name != "all" && std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  Report rep;
  rep.seed = bounds.seed;
  Sink sink(rep.cells);
  std::mt19937_64 rng(bounds.seed);
  auto want = [&](const char* s) { return name == "all" || name == s; };
  if (want("zero-pattern")) suite_zero_pattern(sink, bounds);
  if (want("trace-derivative")) suite_trace_derivative(sink, bounds);
  if (want("structure")) suite_structure(sink, bounds, rng);
  if (want("genfun")) suite_genfun(sink, bounds);
  if (want("oracle")) suite_oracle(sink, bounds, rng);
  std::stable_sort(rep.cells.begin(), rep.cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.suite, a.label) < std::tie(b.suite, b.label);
  });
  return rep;
}

}  // namespace bandperm::verify
