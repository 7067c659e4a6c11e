#include "doctest.h"
#include "oracle.hpp"
#include "pnet/structural.hpp"
#include "pnet/vec.hpp"

using pnet::IntVec;
using pnet::Net;

TEST_CASE("witnesses on the five-place net") {
  Net n = oracle::net_a1();
  auto w = pnet::conservativeness_witness(n);
  REQUIRE(w.has_value());
  CHECK(*w == oracle::w_a1());
  CHECK(oracle::valid_conservation_witness(n, *w));

  auto b = pnet::structural_boundedness_witness(n);
  REQUIRE(b.has_value());
  CHECK(oracle::valid_bounded_witness(n, *b));

  auto m = pnet::reversibility_witness(n);
  REQUIRE(m.has_value());
  CHECK(*m == IntVec{1, 1, 1, 1});
  CHECK(oracle::valid_reversibility_multiplicities(n, *m));
}

TEST_CASE("the four-place restriction loses conservativeness") {
  Net n = oracle::net_a2();
  CHECK_FALSE(pnet::conservativeness_witness(n).has_value());
  auto m = pnet::reversibility_witness(n);
  REQUIRE(m.has_value());
  CHECK(oracle::valid_reversibility_multiplicities(n, *m));
  // the balance equations force all multiplicities equal
  CHECK(*m == IntVec{1, 1, 1, 1});
}

TEST_CASE("simple structural predicates") {
  Net n = oracle::net_a1();
  CHECK(pnet::is_one_conservative(n));
  CHECK_FALSE(pnet::is_ordinary(n));
  CHECK_FALSE(pnet::is_pp_net(n));
  CHECK_FALSE(pnet::is_strongly_reversible(n));

  Net s(2, "swap");
  s.add_action({"ab", {1, 0}, {0, 1}});
  s.add_action({"ba", {0, 1}, {1, 0}});
  CHECK(pnet::is_ordinary(s));
  CHECK(pnet::is_one_conservative(s));
  CHECK(pnet::is_pp_net(s));
  CHECK(pnet::is_strongly_reversible(s));

  Net t(2, "twist");
  t.add_action({"ab", {1, 0}, {0, 1}});
  CHECK_FALSE(pnet::is_strongly_reversible(t));

  Net u(1, "idle");
  u.add_action({"skip", {1}, {1}});
  CHECK(pnet::is_strongly_reversible(u));  // self-reverse body
  CHECK(pnet::is_pp_net(u));

  Net h(1, "heavy");
  h.add_action({"three", {3}, {3}});
  CHECK(pnet::is_one_conservative(h));
  CHECK_FALSE(pnet::is_pp_net(h));
  CHECK_FALSE(pnet::is_ordinary(h));

  Net e(2, "empty");
  CHECK(pnet::is_ordinary(e));
  CHECK(pnet::is_pp_net(e));
  CHECK(pnet::is_strongly_reversible(e));
}

TEST_CASE("predicates agree with direct loops on random nets") {
  auto g = oracle::rng(1717);
  for (int it = 0; it < 80; ++it) {
    Net n = oracle::random_net(g, oracle::uniform(g, 1, 4),
                               oracle::uniform(g, 0, 5),
                               oracle::uniform(g, 1, 2));
    CHECK(pnet::is_ordinary(n) == oracle::hand_ordinary(n));
    CHECK(pnet::is_one_conservative(n) == oracle::hand_one_conservative(n));
    CHECK(pnet::is_pp_net(n) == oracle::hand_pp(n));
    CHECK(pnet::is_strongly_reversible(n) ==
          oracle::hand_strongly_reversible(n));
  }
}

TEST_CASE("witness soundness on random nets") {
  auto g = oracle::rng(1818);
  int conservative_hits = 0, reversible_hits = 0;
  for (int it = 0; it < 60; ++it) {
    Net n = it % 2 == 0 ? oracle::random_net(g, oracle::uniform(g, 1, 3),
                                             oracle::uniform(g, 1, 4), 3)
                        : oracle::random_conservative_net(
                              g, oracle::uniform(g, 1, 3),
                              oracle::uniform(g, 1, 4), 3);
    auto w = pnet::conservativeness_witness(n);
    if (w) {
      ++conservative_hits;
      CHECK(oracle::valid_conservation_witness(n, *w));
    }
    if (it % 2 == 1) CHECK(w.has_value());  // built against a weight vector

    auto b = pnet::structural_boundedness_witness(n);
    if (b) CHECK(oracle::valid_bounded_witness(n, *b));
    if (w) CHECK(b.has_value());  // conservative nets are bounded

    auto m = pnet::reversibility_witness(n);
    if (m) {
      ++reversible_hits;
      CHECK(oracle::valid_reversibility_multiplicities(n, *m));
    }
  }
  CHECK(conservative_hits >= 30);
  CHECK(reversible_hits > 0);
}

TEST_CASE("completeness of the witness searches on tiny nets") {
  // over all one-action {0,1,2}-nets in two places, witnesses exist exactly
  // when brute search over small weights finds one
  for (int p1 = 0; p1 <= 2; ++p1)
    for (int p2 = 0; p2 <= 2; ++p2)
      for (int q1 = 0; q1 <= 2; ++q1)
        for (int q2 = 0; q2 <= 2; ++q2) {
          Net n(2, "tiny");
          n.add_action({"a",
                        {p1, p2},
                        {q1, q2}});
          bool brute_cons = false, brute_bnd = false;
          for (int w1 = 1; w1 <= 8 && !brute_cons; ++w1)
            for (int w2 = 1; w2 <= 8; ++w2) {
              IntVec w{w1, w2};
              if (oracle::valid_conservation_witness(n, w)) {
                brute_cons = true;
                break;
              }
            }
          for (int w1 = 1; w1 <= 8 && !brute_bnd; ++w1)
            for (int w2 = 1; w2 <= 8; ++w2) {
              IntVec w{w1, w2};
              if (oracle::valid_bounded_witness(n, w)) {
                brute_bnd = true;
                break;
              }
            }
          CHECK(pnet::conservativeness_witness(n).has_value() == brute_cons);
          CHECK(pnet::structural_boundedness_witness(n).has_value() ==
                brute_bnd);
          // single action: reversible iff displacement-free
          CHECK(pnet::reversibility_witness(n).has_value() ==
                (p1 == q1 && p2 == q2));
        }
}

TEST_CASE("classification report is internally consistent") {
  Net n = oracle::net_a1();
  pnet::StructuralReport r = pnet::classify(n);
  CHECK(r.conservative);
  CHECK(r.conservative_witness == oracle::w_a1());
  CHECK(r.one_conservative);
  CHECK(r.structurally_bounded);
  CHECK(r.bounded_witness.has_value());
  CHECK(r.reversible);
  CHECK(r.reversible_multiplicities == IntVec{1, 1, 1, 1});
  CHECK_FALSE(r.ordinary);
  CHECK_FALSE(r.pp_net);
  CHECK_FALSE(r.strongly_reversible);

  auto g = oracle::rng(1919);
  for (int it = 0; it < 30; ++it) {
    Net m = oracle::random_net(g, oracle::uniform(g, 1, 3),
                               oracle::uniform(g, 0, 4), 2);
    pnet::StructuralReport s = pnet::classify(m);
    CHECK(s.conservative == pnet::conservativeness_witness(m).has_value());
    CHECK(s.conservative == s.conservative_witness.has_value());
    CHECK(s.structurally_bounded == s.bounded_witness.has_value());
    CHECK(s.reversible == s.reversible_multiplicities.has_value());
    CHECK(s.one_conservative == pnet::is_one_conservative(m));
    CHECK(s.ordinary == pnet::is_ordinary(m));
    CHECK(s.pp_net == pnet::is_pp_net(m));
    CHECK(s.strongly_reversible == pnet::is_strongly_reversible(m));
    if (s.conservative) {
      CHECK(s.structurally_bounded);
      CHECK(oracle::valid_conservation_witness(m, *s.conservative_witness));
    }
    if (s.strongly_reversible && m.action_count() > 0) CHECK(s.reversible);
  }
}
