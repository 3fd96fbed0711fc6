// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "bandperm/evaluate.hpp"
#include "bandperm/genfun.hpp"
#include "bandperm/verify.hpp"

using namespace bandperm;
using bands::Family;
using evaluate::Mode;
using exactalg::BigInt;
using exactalg::Poly;
using exactalg::Var;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what());
  }
  void expect_eq(const Poly& got, const Poly& want, const std::string& where) {
    expect(got == want, [&] { return where + ": " + got.str() + " != " + want.str(); });
  }
};

template <class... A>
std::string cat(const A&... a) {
  std::ostringstream os;
  (os << ... << a);
  return os.str();
}

std::mt19937_64 rng(20261016);

std::vector<Poly> random_weights(unsigned t) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<Poly> w;
  for (unsigned i = 0; i <= t; ++i) w.push_back(d(rng));
  return w;
}

Poly a(unsigned i) { return Poly::var(Var::weight(i)); }

int report(int id, const std::string& name, const std::function<void(Tally&)>& body) {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(cat("exception: ", e.what()));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = t.failures.empty() && t.checks > 0;
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << t.checks << " checks, " << secs
            << " s)\n";
  for (const auto& f : t.failures) std::cout << "    " << f << "\n";
  if (t.checks == 0) std::cout << "    no checks ran\n";
  return ok ? 0 : 1;
}

const oracle::Limits kWide{14, 12, 24, 7};

void circulant_permanents(Tally& T) {
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned t = 1; t <= 2; ++t)
      for (unsigned r = 0; r <= t; ++r)
        for (unsigned n = t + 1; n <= 5 && n * k <= 10; ++n)
          for (int s = 0; s < 5; ++s) {
            auto spec = bands::make_spec(Family::circulant, k, r, random_weights(t));
            auto M = bands::build_kron_band(spec, n);
            T.expect_eq(evaluate::circulant_permanent(spec, n), oracle::permanent_ryser(M),
                        cat("k=", k, " t=", t, " r=", r, " n=", n));
          }
}

void circulant_rooks(Tally& T) {
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned t = 1; t <= 2; ++t)
      for (unsigned r = 0; r <= t; ++r)
        for (unsigned n = t + 1; n <= 5 && n * k <= 7; ++n)
          for (int s = 0; s < 5; ++s) {
            auto spec = bands::make_spec(Family::circulant, k, r, random_weights(t));
            Poly got = evaluate::circulant_rook(spec, n);
            Poly want = oracle::brute_rook(bands::build_kron_band(spec, n), false, Var::x(), Var::z(), kWide);
            for (unsigned d = 0; d <= n * k; ++d) {
              T.expect_eq(got.coefficient(Var::x(), d), want.coefficient(Var::x(), d),
                          cat("k=", k, " t=", t, " r=", r, " n=", n, " x^", d));
            }
          }
}

void toeplitz_and_submatrix(Tally& T) {
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned t = 1; t <= 2; ++t)
      for (unsigned r = 0; r <= t; ++r)
        for (unsigned n = 1; n <= 4; ++n) {
          auto spec = bands::make_spec(Family::toeplitz, k, r, random_weights(t));
          auto M = bands::build_kron_band(spec, n);
          const std::string where = cat("toeplitz k=", k, " t=", t, " r=", r, " n=", n);
          T.expect_eq(evaluate::toeplitz_eval(spec, n, Mode::permanent), oracle::brute_permanent(M, kWide),
                      where + " per");
          T.expect_eq(evaluate::toeplitz_eval(spec, n, Mode::rook),
                      oracle::brute_rook(M, false, Var::x(), Var::z(), kWide), where + " rook");
        }

  using evaluate::SubmatrixTheorem;
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned t = 1; t <= 2; ++t) {
      auto w = transfer::symbolic_weights(t);
      auto alphas = states::enumerate_states(k, t);
      for (unsigned n = 1; n <= 4; ++n) {
        auto betas = states::enumerate_states(k, std::min(n, t));
        for (auto which : {SubmatrixTheorem::rook_K, SubmatrixTheorem::per_Pi, SubmatrixTheorem::per_A})
          for (const auto& al : alphas.states())
            for (const auto& be : betas.states()) {
              if (which == SubmatrixTheorem::per_Pi && al.weight() != be.weight()) continue;
              auto e = evaluate::submatrix_eval(k, t, n, w, al, be, which, Var::x(), kWide);
              // equal is lhs * prod C(k, beta_i) == transfer side, no division
              T.expect(e.equal, [&] {
                return cat("submatrix ", static_cast<int>(which), " k=", k, " t=", t, " n=", n, " ", al.str(), be.str());
              });
            }
      }
    }
}

// Walks all of Sym(n) directly.
BigInt literal_count(const std::vector<int>& S, unsigned n, bool cyclic, bool complement) {
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  const int N = static_cast<int>(n);
  BigInt count = 0;
  do {
    bool all = true;
    for (int i = 0; i < N && all; ++i) {
      bool in = false;
      for (int s : S) in = in || (cyclic ? ((sigma[i] - i - s) % N + N) % N == 0 : sigma[i] - i == s);
      all = complement ? !in : in;
    }
    if (all) ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

void closed_forms(Tally& T) {
  const Poly a0 = a(0), a1 = a(1);
  for (unsigned k = 1; k <= 3; ++k)
    for (unsigned n = 1; n <= 4; ++n) {
      auto spec = bands::make_spec(Family::circulant, k, 0, {a0, a1});
      Poly cf = evaluate::closed_form_two_band_per(k, n, a0, a1);
      T.expect_eq(cf, evaluate::circulant_permanent(spec, n), cat("two-band k=", k, " n=", n, " transfer"));
      T.expect_eq(cf, oracle::brute_permanent(bands::build_kron_band(spec, n), kWide),
                  cat("two-band k=", k, " n=", n, " oracle"));
    }
  for (auto [n, t] : {std::pair{4u, 2u}, {6u, 3u}, {6u, 2u}})
    for (unsigned k = 1; k <= 2; ++k) {
      std::vector<Poly> w(t + 1);
      w[0] = a0;
      w[t] = a(t);
      auto spec = bands::make_spec(Family::circulant, k, 0, w);
      Poly cf = evaluate::closed_form_gcd(k, n, t, a0, a(t));
      T.expect_eq(cf, evaluate::circulant_permanent(spec, n), cat("gcd n=", n, " t=", t, " k=", k, " transfer"));
      T.expect_eq(cf, oracle::brute_permanent(bands::build_kron_band(spec, n), kWide),
                  cat("gcd n=", n, " t=", t, " k=", k, " oracle"));
    }
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned n = 1; n <= 4; ++n) {
      auto spec = bands::make_spec(Family::circulant, k, 0, {a0, a1});
      T.expect_eq(evaluate::closed_form_two_band_rook(k, n, a0, a1), evaluate::circulant_rook(spec, n),
                  cat("two-band rook k=", k, " n=", n));
    }

  auto spot = [&](const std::vector<int>& S, unsigned n, bool cyclic, bool complement, int want, const char* what) {
    BigInt oracle_value = literal_count(S, n, cyclic, complement);
    BigInt got = evaluate::count_restricted(S, n, cyclic ? Family::circulant : Family::toeplitz, complement).value;
    T.expect(oracle_value == want, [&] { return cat(what, " oracle n=", n, " = ", oracle_value); });
    T.expect(got == oracle_value, [&] { return cat(what, " n=", n, " = ", got); });
  };
  spot({0}, 4, true, true, 9, "derangements");
  spot({0, 1}, 4, true, true, 2, "menage");
  spot({0, 1}, 5, true, true, 13, "menage");
  spot({0, 1}, 6, true, true, 80, "menage");
  spot({-1, 0, 1}, 4, false, false, 5, "tridiagonal");
  T.expect_eq(evaluate::toeplitz_eval(bands::make_spec(Family::toeplitz, 1, 1, {1, 1, 1}), 4, Mode::permanent),
              Poly(literal_count({-1, 0, 1}, 4, false, false)), "tridiagonal transfer");
}

void structural(Tally& T) {
  verify::Bounds b;
  b.max_k = 2;
  b.max_t = 3;
  b.max_n = 3;
  for (const char* suite : {"zero-pattern", "trace-derivative", "structure"}) {
    auto rep = verify::run_suite(suite, b);
    for (const auto& c : rep.cells) {
      T.checks += c.checks;
      T.expect(c.ok && c.checks > 0, [&] { return cat(c.suite, ": ", c.label, " ", c.detail); });
    }
  }
}

void generating_functions(Tally& T) {
  using genfun::GFKind;
  const unsigned N = 6;
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned t = 1; t <= 2; ++t) {
      if (states::enumerate_states(k, t).size() > 27) continue;
      for (unsigned r = 0; r <= t; ++r) {
        auto w = random_weights(t);
        auto toep = bands::make_spec(Family::toeplitz, k, r, w);
        auto circ = bands::make_spec(Family::circulant, k, r, w);
        auto check = [&](GFKind kind, const std::function<Poly(unsigned)>& direct) {
          auto g = genfun::build_gf(k, t, r, w, kind);
          auto rep = genfun::series_check(g.total, direct, N);
          T.expect(rep.ok, [&] {
            return cat(genfun::kind_name(kind), " k=", k, " t=", t, " r=", r, " n=", *rep.first_mismatch);
          });
        };
        check(GFKind::toeplitz_per, [&](unsigned n) { return evaluate::toeplitz_eval(toep, n, Mode::permanent); });
        check(GFKind::toeplitz_rook, [&](unsigned n) { return evaluate::toeplitz_eval(toep, n, Mode::rook); });
        check(GFKind::circulant_per, [&](unsigned n) { return evaluate::circulant_eval(circ, n, Mode::permanent); });
        check(GFKind::circulant_rook, [&](unsigned n) { return evaluate::circulant_eval(circ, n, Mode::rook); });
      }
    }
  auto fib = genfun::build_gf(1, 2, 1, {1, 1, 1}, GFKind::toeplitz_per).total;
  auto s = exactalg::rational_series(fib, 6);
  const int want[] = {1, 1, 2, 3, 5, 8, 13};
  for (unsigned n = 1; n <= 6; ++n) T.expect_eq(s[n], Poly(want[n]), cat("fibonacci n=", n));
}

void wv_route(Tally& T) {
  for (unsigned t = 1; t <= 2; ++t) {
    auto w = random_weights(t);
    for (unsigned n = 1; n <= 3; ++n)
      for (Mode mode : {Mode::permanent, Mode::rook}) {
        auto base = evaluate::circulant_eval_wv(bands::make_spec(Family::circulant, 1, 0, w), n, mode);
        for (unsigned r = 0; r <= t; ++r) {
          const std::string where = cat("t=", t, " r=", r, " n=", n, " ", evaluate::mode_name(mode));
          auto circ = bands::make_spec(Family::circulant, 1, r, w);
          auto toep = bands::make_spec(Family::toeplitz, 1, r, w);
          Poly wv = evaluate::circulant_eval_wv(circ, n, mode);
          T.expect_eq(wv, evaluate::circulant_eval(circ, n, mode), "circulant " + where);
          T.expect_eq(wv, base, "r-independence " + where);
          T.expect_eq(evaluate::toeplitz_eval_wv(toep, n, mode), evaluate::toeplitz_eval(toep, n, mode),
                      "toeplitz " + where);
        }
      }
  }
}

void performance(Tally& T) {
  auto spec = bands::make_spec(Family::circulant, 1, 1, random_weights(2));
  for (unsigned n = 3; n <= 5; ++n) {
    T.expect_eq(evaluate::circulant_permanent(spec, n), oracle::permanent_ryser(bands::build_kron_band(spec, n)),
                cat("anchor n=", n));
  }
  auto start = std::chrono::steady_clock::now();
  Poly big = evaluate::circulant_permanent(spec, 30);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  T.expect(secs < 1.0, [&] { return cat("n=30 took ", secs, " s"); });
  // the same number from the series of the generating function
  auto g = genfun::build_gf(1, 2, 1, spec.weights, genfun::GFKind::circulant_per);
  T.expect_eq(exactalg::rational_series(g.total, 30)[30], big, "n=30 series");
}

}  // namespace

int main() {
  int bad = 0;
  bad += report(1, "circulant permanent vs Ryser", circulant_permanents);
  bad += report(2, "circulant rook polynomial vs injections", circulant_rooks);
  bad += report(3, "toeplitz lines and submatrix identities", toeplitz_and_submatrix);
  bad += report(4, "closed forms and spot values", closed_forms);
  bad += report(5, "structural suites", structural);
  bad += report(6, "generating functions", generating_functions);
  bad += report(7, "W/V traces", wv_route);
  bad += report(8, "n=30 circulant permanent under 1 s", performance);
  std::cout << (bad == 0 ? "all criteria passed" : cat(bad, " criteria failed")) << "\n";
  return bad == 0 ? 0 : 1;
}
