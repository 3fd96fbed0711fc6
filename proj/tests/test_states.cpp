#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bandperm/states.hpp"

using namespace bandperm::states;

namespace {
std::vector<std::vector<unsigned>> mults(const StateIndex& idx) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& s : idx.states()) out.push_back(s.mult());
  return out;
}
}  // namespace

TEST_CASE("enumeration order") {
  CHECK(mults(enumerate_states(1, 2)) == std::vector<std::vector<unsigned>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(mults(enumerate_states(2, 2, 2)) == std::vector<std::vector<unsigned>>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(mults(enumerate_states(3, 1, 0)) == std::vector<std::vector<unsigned>>{{0}});
  CHECK(enumerate_states(2, 0).size() == 1);
  CHECK_THROWS(enumerate_states(1, 2, 3));
  CHECK_THROWS_AS(enumerate_states(3, 8, std::nullopt, 1000), std::length_error);
}

TEST_CASE("ranks") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned t = 0; t <= 4; ++t) {
      auto idx = enumerate_states(k, t);
      for (std::size_t r = 1; r <= idx.size(); ++r) CHECK(idx.rank(idx.unrank(r)) == r);
    }
  }
  auto idx = enumerate_states(2, 2, 2);
  CHECK_FALSE(idx.try_rank(State(2, {0, 1})).has_value());
  CHECK_THROWS(idx.rank(State(2, {0, 1})));
  CHECK(State(2, {1, 0, 2}).str() == "[1,0,2]");
  CHECK(State::parse(2, "[1,0,2]") == State(2, {1, 0, 2}));
}

TEST_CASE("cardinalities") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned t = 0; t <= 4; ++t) {
      BigInt total = 0;
      for (unsigned r = 0; r <= k * t; ++r) {
        BigInt c = card_graded(k, t, r);
        total += c;
        CHECK(c == enumerate_states(k, t, r).size());
        CHECK(c == card_graded(k, t, static_cast<long long>(k * t) - r));
        if (t > 0) {
          BigInt rec = 0;
          for (unsigned i = 0; i <= std::min(k, r); ++i) {
            if (r - i <= k * (t - 1)) rec += card_graded(k, t - 1, r - i);
          }
          CHECK(c == rec);
        }
      }
      CHECK(total == boost::multiprecision::pow(BigInt(k + 1), t));
    }
  }
  CHECK(card_graded(2, 2, 2) == 3);
  CHECK(card_graded(1, 5, 2) == 10);
  CHECK(card_graded(3, 4, 0) == 1);
}

TEST_CASE("multiset operations") {
  auto rel = multiset_relation(State(2, {2, 1}), State(2, {1, 1}));
  CHECK(rel.contains);
  CHECK(*rel.diff == State(2, {1, 0}));
  CHECK_FALSE(multiset_relation(State(2, {0, 1}), State(2, {1, 0})).contains);
  CHECK(*multiset_relation(State(1, {1, 1}), State(1, {1, 1})).diff == State(1, {0, 0}));
  CHECK_THROWS(multiset_relation(State(1, {1}), State(1, {1, 0})));

  CHECK(shift_down(State(2, {0, 0, 2}), 2) == State(2, {2, 0, 0}));
  CHECK(shift_down(State(1, {0, 1, 1}), 1) == State(1, {1, 1, 0}));
  CHECK(shift_down(State(1, {0, 0, 0}), 2) == State(1, {0, 0, 0}));
  CHECK_THROWS(shift_down(State(1, {1, 0, 0}), 1));
}

TEST_CASE("rotation sign") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned r = 1; r <= k; ++r) CHECK(phi_sign(k, 1, r) == 1);
  }
  CHECK(phi_sign(1, 2, 1) == -1);
  CHECK(phi_sign(1, 3, 3) == 1);
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned t = 1; t <= 3; ++t) {
      for (unsigned r = 1; r <= k * t; ++r) {
        auto perm = phi_permutation(k, t, r);
        // t rotations bring every state back
        std::vector<std::size_t> p(perm.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
          std::size_t j = i;
          for (unsigned s = 0; s < t; ++s) j = perm[j];
          CHECK(j == i);
        }
        CHECK(phi_sign(k, t, r) == permutation_sign(perm));
      }
    }
  }
  CHECK_THROWS(phi_sign(1, 2, 0));
}

TEST_CASE("subset index") {
  SubsetIndex q(2, 4);
  CHECK(q.size() == 6);
  CHECK(q.tuples().front() == std::vector<unsigned>{1, 2});
  CHECK(q.rank({3, 4}) == 6);
  CHECK(SubsetIndex::str({1, 3}) == "(1,3)");
  CHECK(SubsetIndex(0, 3).size() == 1);
}
