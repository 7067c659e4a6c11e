#include "doctest.h"
#include "oracle.hpp"
#include "pnet/vec.hpp"

using pnet::Int;
using pnet::IntVec;

TEST_CASE("vector arithmetic") {
  IntVec a{1, -2, 3}, b{4, 0, -1};
  CHECK(pnet::dot(a, b) == 1);
  CHECK(pnet::vadd(a, b) == IntVec{5, -2, 2});
  CHECK(pnet::vsub(a, b) == IntVec{-3, -2, 4});
  CHECK(pnet::vneg(a) == IntVec{-1, 2, -3});
  CHECK_THROWS_AS(pnet::dot(a, IntVec{1}), pnet::DimensionError);
  CHECK_THROWS_AS(pnet::vadd(a, IntVec{1, 2}), pnet::DimensionError);
}

TEST_CASE("norms and predicates") {
  CHECK(pnet::norm_inf(IntVec{3, -7, 2}) == 7);
  CHECK(pnet::norm_one(IntVec{3, -7, 2}) == 12);
  CHECK(pnet::norm_inf(IntVec{}) == 0);
  CHECK(pnet::norm_one(IntVec{}) == 0);
  CHECK(pnet::is_zero(IntVec{0, 0}));
  CHECK_FALSE(pnet::is_zero(IntVec{0, 1}));
  CHECK(pnet::is_zero(IntVec{}));
  CHECK(pnet::is_nonneg(IntVec{0, 2}));
  CHECK_FALSE(pnet::is_nonneg(IntVec{0, -1}));
}

TEST_CASE("componentwise orders") {
  CHECK(pnet::leq(IntVec{1, 0}, IntVec{1, 2}));
  CHECK_FALSE(pnet::leq(IntVec{2, 0}, IntVec{1, 2}));
  CHECK_THROWS_AS(pnet::leq(IntVec{1}, IntVec{1, 2}), pnet::DimensionError);

  // sign order is strict about signs: zero only sits below zero
  CHECK(pnet::sleq(IntVec{1, -2}, IntVec{3, -2}));
  CHECK_FALSE(pnet::sleq(IntVec{0, 1}, IntVec{1, 1}));
  CHECK_FALSE(pnet::sleq(IntVec{1, -2}, IntVec{1, 2}));
  CHECK(pnet::sleq(IntVec{0, 0}, IntVec{0, 0}));
  CHECK_THROWS_AS(pnet::sleq(IntVec{1}, IntVec{1, 2}), pnet::DimensionError);

  CHECK(pnet::sgn(Int(-5)) == -1);
  CHECK(pnet::sgn(Int(0)) == 0);
  CHECK(pnet::sgn(Int(9)) == 1);
  CHECK(pnet::sign_vec(IntVec{-3, 0, 2}) == std::vector<int>{-1, 0, 1});
}

TEST_CASE("lex order and canonical sort") {
  CHECK(pnet::lex_less(IntVec{0, 9}, IntVec{1, 0}));
  CHECK_FALSE(pnet::lex_less(IntVec{1, 0}, IntVec{1, 0}));
  std::vector<IntVec> vs{{1, 0}, {0, 1}, {1, 0}, {0, 0}};
  pnet::sort_canonical(vs);
  CHECK(vs == std::vector<IntVec>{{0, 0}, {0, 1}, {1, 0}});
}

TEST_CASE("minimal element filters match the brute filters") {
  std::vector<IntVec> vs{{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 1}};
  CHECK(pnet::min_leq_filter(vs) == std::vector<IntVec>{{0, 1}, {1, 0}});

  auto g = oracle::rng(101);
  for (int it = 0; it < 40; ++it) {
    int d = oracle::uniform(g, 1, 4);
    std::vector<IntVec> set;
    for (int k = oracle::uniform(g, 1, 12); k > 0; --k)
      set.push_back(oracle::random_vec(g, d, 0, 4));
    CHECK(pnet::min_leq_filter(set) == oracle::minimal_leq(set));

    std::vector<IntVec> zset;
    for (int k = oracle::uniform(g, 1, 12); k > 0; --k)
      zset.push_back(oracle::random_vec(g, d, -3, 3));
    CHECK(pnet::min_sleq_filter(zset) == oracle::minimal_sleq(zset));
  }
}

TEST_CASE("projection and complement") {
  IntVec x{5, 6, 7};
  CHECK(pnet::project(x, {0, 2}) == IntVec{5, 7});
  CHECK(pnet::project(x, {}) == IntVec{});
  CHECK_THROWS_AS(pnet::project(x, {3}), pnet::DimensionError);
  CHECK(pnet::complement({1, 3}, 5) == std::vector<int>{0, 2, 4});
  CHECK(pnet::complement({}, 3) == std::vector<int>{0, 1, 2});
  CHECK(pnet::complement({0, 1, 2}, 3) == std::vector<int>{});
}

TEST_CASE("integer helpers") {
  CHECK(pnet::int_pow(3, 4) == 81);
  CHECK(pnet::int_pow(2, 0) == 1);
  CHECK(pnet::int_pow(7, 1) == 7);
  CHECK(pnet::factorial(0) == 1);
  CHECK(pnet::factorial(5) == 120);
  CHECK(pnet::factorial(20) == Int("2432902008176640000"));

  CHECK(pnet::floor_div(Int(7), Int(2)) == 3);
  CHECK(pnet::floor_div(Int(-7), Int(2)) == -4);
  CHECK(pnet::ceil_div(Int(7), Int(2)) == 4);
  CHECK(pnet::ceil_div(Int(-7), Int(2)) == -3);
  CHECK(pnet::floor_mod(Int(-7), Int(3)) == 2);
  CHECK(pnet::floor_mod(Int(6), Int(3)) == 0);

  auto g = oracle::rng(7);
  for (int it = 0; it < 200; ++it) {
    Int a = oracle::uniform(g, -50, 50);
    Int m = oracle::uniform(g, 1, 9);
    Int r = pnet::floor_mod(a, m);
    CHECK(r >= 0);
    CHECK(r < m);
    CHECK((a - r) % m == 0);
    CHECK(pnet::floor_div(a, m) * m + r == a);
  }
}

TEST_CASE("int64 guard rails") {
  CHECK(pnet::checked_add(1, 2) == 3);
  CHECK_THROWS_AS(pnet::checked_add(INT64_MAX, 1), pnet::I64Overflow);
  CHECK_THROWS_AS(pnet::checked_mul(INT64_MAX / 2, 3), pnet::I64Overflow);
  CHECK_THROWS_AS(pnet::checked_sub(INT64_MIN, 1), pnet::I64Overflow);
  CHECK(pnet::fits_i64(Int(INT64_MAX)));
  CHECK_FALSE(pnet::fits_i64(Int(INT64_MAX) + 1));
}
