#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"
#include "pnet/pns.hpp"
#include "pnet/reach.hpp"
#include "pnet/vec.hpp"

using pnet::Int;
using pnet::IntVec;
using pnet::Net;
using pnet::Pns;
using pnet::PnsConf;

namespace {

Pns a1_pns() {
  Net n = oracle::net_a1();
  pnet::ReachGraph g = pnet::reachability_graph(n, oracle::x0_a1());
  return pnet::build_pns(n, g.nodes, {0, 1, 2, 3});
}

// flip-flop control (places 0,1) over one counter (place 2), with two
// parallel back-edges whose counter effects differ
Net parallel_base() {
  Net n(3, "par");
  n.add_action({"u", {1, 0, 0}, {0, 1, 1}});
  n.add_action({"v", {0, 1, 1}, {1, 0, 0}});
  n.add_action({"w", {0, 1, 2}, {1, 0, 0}});
  return n;
}

Pns parallel_pns() {
  Pns g;
  g.base = parallel_base();
  g.state_dims = {0, 1};
  g.counter_dims = {2};
  g.states = {{0, 1}, {1, 0}};
  g.edges = {{0, 1, 1}, {0, 2, 1}, {1, 0, 0}};
  g.norm = 2;
  return g;
}

// same shape, but both back-edges drop the counter by one
Net balanced_base() {
  Net n(3, "bal");
  n.add_action({"u", {1, 0, 0}, {0, 1, 1}});
  n.add_action({"v", {0, 1, 1}, {1, 0, 0}});
  n.add_action({"w", {0, 1, 2}, {1, 0, 1}});
  return n;
}

Pns balanced_pns() {
  return pnet::build_pns(balanced_base(), {{1, 0, 0}, {0, 1, 1}}, {0, 1});
}

}  // namespace

TEST_CASE("observation of the five-place run through four coordinates") {
  Pns g = a1_pns();
  CHECK(g.state_dims == std::vector<int>{0, 1, 2, 3});
  CHECK(g.counter_dims == std::vector<int>{4});
  CHECK(g.states == std::vector<IntVec>{{0, 1, 0, 1}, {0, 1, 2, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}});
  CHECK(g.edges == std::vector<std::array<int, 3>>{
                       {0, 1, 2}, {1, 2, 0}, {2, 3, 3}, {3, 0, 1}});
  CHECK(g.norm == 2);
  CHECK(g.state_index({0, 1, 2, 0}) == 1);
  CHECK(g.state_index({9, 9, 9, 9}) == -1);
  CHECK(pnet::is_proper(g));

  // the walk closes up, covers everything, and cancels out
  REQUIRE(g.certificate.size() == 4);
  std::set<int> covered(g.certificate.begin(), g.certificate.end());
  CHECK(covered.size() == 4);
  IntVec disp(5, 0);
  for (size_t k = 0; k < g.certificate.size(); ++k) {
    const auto& e = g.edges[g.certificate[k]];
    const auto& f = g.edges[g.certificate[(k + 1) % g.certificate.size()]];
    CHECK(e[2] == f[0]);
    disp = pnet::vadd(disp, g.base.action(e[1]).displacement());
  }
  CHECK(disp == IntVec(5, 0));
}

TEST_CASE("preconditions on the observed marking set") {
  Net n = oracle::net_a1();
  CHECK_THROWS_WITH_AS(pnet::build_pns(n, {oracle::x0_a1()}, {0, 1, 2, 3}),
                       "build_pns: marking set is not closed under firing",
                       pnet::PreconditionError);

  Net chain(2, "chain");
  chain.add_action({"move", {1, 0}, {0, 1}});
  CHECK_THROWS_WITH_AS(pnet::build_pns(chain, {{0, 1}, {1, 0}}, {0, 1}),
                       "build_pns: marking set is not strongly connected",
                       pnet::PreconditionError);

  CHECK_THROWS_AS(pnet::build_pns(n, {}, {0}), pnet::PreconditionError);

  // parallel counter drains of unequal size admit no balanced circulation
  Net par = parallel_base();
  CHECK_THROWS_WITH_AS(pnet::build_pns(par, {{1, 0, 0}, {0, 1, 1}}, {0, 1}),
                       "pns: no zero-displacement covering cycle exists",
                       pnet::Error);
}

TEST_CASE("properness recomputation distrusts the stored pieces") {
  Pns g = a1_pns();
  CHECK(pnet::is_proper(g));
  Pns broken = g;
  broken.states.pop_back();
  CHECK_FALSE(pnet::is_proper(broken));
  CHECK(pnet::is_proper(parallel_pns()));
}

TEST_CASE("restriction to a counter subset") {
  Pns g = balanced_pns();
  REQUIRE(g.states == std::vector<IntVec>{{0, 1}, {1, 0}});
  REQUIRE(g.edges.size() == 3);

  Pns same = pnet::restrict_pns(g, {2});
  CHECK(same.state_dims == g.state_dims);
  CHECK(same.counter_dims == std::vector<int>{2});
  CHECK(same.states == g.states);
  CHECK(same.edges == g.edges);

  Pns none = pnet::restrict_pns(g, {});
  CHECK(none.counter_dims.empty());
  CHECK(none.base.dim() == 2);
  CHECK(none.states == g.states);
  CHECK(pnet::is_proper(none));

  CHECK_THROWS_AS(pnet::restrict_pns(g, {0}), pnet::PreconditionError);
}

TEST_CASE("cycle displacement nets") {
  Pns par = parallel_pns();
  Net sc = pnet::simple_cycle_net(par);
  CHECK(sc.dim() == 1);
  REQUIRE(sc.action_count() == 2);
  CHECK(sc.action(0).name == "c1");
  CHECK(sc.action(0).pre == IntVec{1});
  CHECK(sc.action(0).post == IntVec{0});
  CHECK(sc.action(1).name == "c2");
  CHECK(sc.action(1).pre == IntVec{0});
  CHECK(sc.action(1).post == IntVec{0});
  CHECK(pnet::net_norm(sc) <= pnet::net_norm(par.base) * Int(2));

  CHECK_THROWS_AS(pnet::simple_cycle_net(par, 1), pnet::BudgetError);

  // the single observed loop of the five-place net cancels its counter
  Net sc1 = pnet::simple_cycle_net(a1_pns());
  REQUIRE(sc1.action_count() == 1);
  CHECK(sc1.action(0).pre == IntVec{0});
  CHECK(sc1.action(0).post == IntVec{0});

  // both loops of the balanced variant cancel too
  Net sc2 = pnet::simple_cycle_net(balanced_pns());
  REQUIRE(sc2.action_count() == 1);
  CHECK(sc2.action(0).pre == IntVec{0});
}

TEST_CASE("virtual reachability inside an observed system") {
  Pns g = a1_pns();
  // firing a1 from x0 drops the free counter by one
  CHECK(pnet::pns_virtual_reach(g, PnsConf{3, {2}}, PnsConf{1, {1}}));
  CHECK_FALSE(pnet::pns_virtual_reach(g, PnsConf{3, {2}}, PnsConf{1, {2}}));
  CHECK(pnet::pns_virtual_reach(g, PnsConf{3, {2}}, PnsConf{3, {2}}));

  // every path from the low state to the high one costs one token
  Pns b = balanced_pns();
  Net bsc = pnet::simple_cycle_net(b);
  CHECK(pnet::pns_virtual_reach(b, bsc, PnsConf{0, {5}}, PnsConf{1, {4}}));
  CHECK_FALSE(pnet::pns_virtual_reach(b, bsc, PnsConf{0, {5}}, PnsConf{1, {5}}));

  // the unbalanced loop pair spans all counter gaps
  Pns par = parallel_pns();
  CHECK(pnet::pns_virtual_reach(par, PnsConf{0, {5}}, PnsConf{1, {0}}));
  CHECK(pnet::pns_virtual_reach(par, PnsConf{0, {5}}, PnsConf{1, {7}}));

  CHECK_THROWS_AS(pnet::pns_virtual_reach(par, PnsConf{0, {5}}, PnsConf{9, {0}}),
                  pnet::PreconditionError);
  CHECK_THROWS_AS(pnet::pns_virtual_reach(par, PnsConf{0, {5, 5}}, PnsConf{1, {0}}),
                  pnet::DimensionError);
}

TEST_CASE("candidate extraction over coordinate subsets") {
  Net n = oracle::net_a1();
  pnet::ReachGraph rg = pnet::reachability_graph(n, oracle::x0_a1());

  // every reachable marking has exactly three positive coordinates, so the
  // qualifying counter sets are the subsets of those supports
  auto cands = pnet::extract_candidates(n, rg.nodes, Int(1));
  CHECK(cands.size() == 18);
  CHECK(cands.front().state_dims == std::vector<int>{0, 2});
  CHECK(cands.back().state_dims == std::vector<int>{0, 1, 2, 3, 4});

  bool found = false;
  for (const auto& c : cands) {
    CHECK(std::is_sorted(c.state_dims.begin(), c.state_dims.end()));
    CHECK(c.threshold == 1);
    for (int j : c.pns.counter_dims) CHECK(c.witness_marking[j] >= 1);
    if (c.state_dims == std::vector<int>{0, 1, 2, 3}) {
      found = true;
      CHECK(c.q_norm == 2);
      CHECK(c.witness_marking == IntVec{0, 1, 0, 1, 1});
      CHECK(c.witness.state == 0);
      CHECK(c.witness.counters == IntVec{1});
    }
  }
  CHECK(found);

  // a threshold above the counter ceiling leaves only the vacuous candidate
  auto strict = pnet::extract_candidates(
      n, rg.nodes, [](const Int& q) { return Int(q + 1); });
  REQUIRE(strict.size() == 1);
  CHECK(strict.front().state_dims == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(strict.front().threshold == 3);

  Net wide(13, "wide");
  CHECK_THROWS_AS(pnet::extract_candidates(wide, {IntVec(13, 0)}, Int(0)),
                  pnet::BudgetError);
}

TEST_CASE("low coordinate sets and distances") {
  CHECK(pnet::low_coords({5, 1}, {2, 4}) == std::vector<int>{1});
  CHECK(pnet::low_coords({9, 9}, {2, 4}) == std::vector<int>{});
  CHECK(pnet::low_coords({0, 0}, {2, 4}) == std::vector<int>{0, 1});
  CHECK(pnet::low_coords(IntVec{}, IntVec{}) == std::vector<int>{});
  CHECK_THROWS_AS(pnet::low_coords({1, 2}, {3}), pnet::DimensionError);
  CHECK_THROWS_AS(pnet::low_coords({1, 2}, {4, 3}), pnet::PreconditionError);
  CHECK_THROWS_AS(pnet::low_coords(IntVec(21, 0), IntVec(21, 1)),
                  pnet::BudgetError);

  CHECK(pnet::dif({5, 1}, {0}, {2, 4}) == 4);
  CHECK(pnet::dif({5, 1}, {1}, {2, 4}) == 0);
  CHECK(pnet::dif({9, 9}, {}, {2, 4}) == 0);

  auto g = oracle::rng(2323);
  for (int it = 0; it < 80; ++it) {
    int d = oracle::uniform(g, 1, 4);
    IntVec x = oracle::random_vec(g, d, 0, 6);
    IntVec levels(d);
    Int prev = 0;
    for (int i = 0; i < d; ++i) {
      prev += oracle::uniform(g, 0, 3);
      levels[i] = prev;
    }
    auto low = pnet::low_coords(x, levels);
    CHECK(pnet::dif(x, low, levels) == 0);
  }
}

TEST_CASE("anchored reachability systems") {
  Net even(1, "even");
  even.add_action({"up", {0}, {2}});
  even.add_action({"down", {2}, {0}});

  std::map<std::vector<int>, IntVec> anchors{{{}, {4}}, {{0}, {6}}};
  pnet::LinearSystem s = pnet::anchored_reach_system(even, 2, 10, anchors);
  CHECK(s.dim == 3);
  CHECK(pnet::evaluate(s, {4, 4, 6}));
  CHECK(pnet::evaluate(s, {2, 4, 6}));
  CHECK_FALSE(pnet::evaluate(s, {3, 4, 6}));
  CHECK_FALSE(pnet::evaluate(s, {2, 5, 6}));
  CHECK_FALSE(pnet::evaluate(s, {1, 4, 6}));  // below the floor
  CHECK(pnet::solve_min(s) == IntVec{2, 4, 6});

  // an anchor beyond the pin bound only forces "large"
  std::map<std::vector<int>, IntVec> far{{{}, {4}}, {{0}, {12}}};
  pnet::LinearSystem t = pnet::anchored_reach_system(even, 2, 10, far);
  CHECK(pnet::evaluate(t, {2, 4, 12}));
  CHECK(pnet::evaluate(t, {2, 4, 14}));
  CHECK_FALSE(pnet::evaluate(t, {2, 4, 11}));  // parity breaks
  CHECK_FALSE(pnet::evaluate(t, {2, 4, 10}));  // not above the bound
  CHECK(pnet::solve_min(t) == IntVec{2, 4, 12});

  // pins of opposite parity are jointly unsatisfiable
  std::map<std::vector<int>, IntVec> odd{{{}, {4}}, {{0}, {5}}};
  CHECK(pnet::solve_min(pnet::anchored_reach_system(even, 2, 10, odd)) ==
        std::nullopt);

  CHECK_THROWS_AS(pnet::anchored_reach_system(even, 2, 10, {{{}, {4}}}),
                  pnet::PreconditionError);  // one anchor missing
  Net wide(5, "wide");
  CHECK_THROWS_AS(pnet::anchored_reach_system(wide, 0, 1, {}),
                  pnet::PreconditionError);
}

TEST_CASE("anchor suggestion") {
  Net even(1, "even");
  even.add_action({"up", {0}, {2}});
  even.add_action({"down", {2}, {0}});
  auto a = pnet::suggest_anchor(even, {0}, {}, {4}, 6, 2);
  REQUIRE(a.has_value());
  CHECK(*a == IntVec{4});

  // aiming below the level wants a small value, floor permitting
  auto b = pnet::suggest_anchor(even, {0}, {0}, {4}, 6, 2);
  REQUIRE(b.has_value());
  CHECK(*b == IntVec{2});

  CHECK_THROWS_AS(pnet::suggest_anchor(even, {0}, {}, {4}, 300000, 0),
                  pnet::BudgetError);
}

TEST_CASE("serialization round trip") {
  Pns g = a1_pns();
  std::string js = pnet::pns_to_json(g);
  Pns back = pnet::pns_from_json(js);
  CHECK(back.state_dims == g.state_dims);
  CHECK(back.counter_dims == g.counter_dims);
  CHECK(back.states == g.states);
  CHECK(back.edges == g.edges);
  CHECK(back.certificate == g.certificate);
  CHECK(back.norm == g.norm);
  CHECK(back.base.dim() == g.base.dim());
  CHECK(back.base.action_count() == g.base.action_count());

  nlohmann::json doc = nlohmann::json::parse(js);
  CHECK(doc["I"] == nlohmann::json::array({1, 2, 3, 4}));
  CHECK(doc["J"] == nlohmann::json::array({5}));

  // dropping the stored walk forces a rebuild
  nlohmann::json nocert = doc;
  nocert.erase("certificate");
  Pns rebuilt = pnet::pns_from_json(nocert.dump());
  CHECK(rebuilt.certificate == g.certificate);

  nlohmann::json nonet = doc;
  nonet.erase("net");
  CHECK_THROWS_AS(pnet::pns_from_json(nonet.dump()), pnet::ParseError);

  nlohmann::json shuffled = doc;
  std::swap(shuffled["states"][0], shuffled["states"][1]);
  CHECK_THROWS_AS(pnet::pns_from_json(shuffled.dump()), pnet::ParseError);

  nlohmann::json badedge = doc;
  badedge["edges"][0][1] = "nosuch";
  CHECK_THROWS_AS(pnet::pns_from_json(badedge.dump()), pnet::ParseError);

  nlohmann::json badcert = doc;
  badcert["certificate"] = {1, 2};
  CHECK_THROWS_AS(pnet::pns_from_json(badcert.dump()), pnet::ParseError);
}
