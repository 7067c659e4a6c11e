#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pnet/net.hpp"

namespace pnet {

// Reachability graph with nodes in lexicographic order.
struct ReachGraph {
  int dim = 0;
  std::vector<IntVec> nodes;
  std::vector<std::array<int, 3>> edges;  // (from, action, to), sorted
  int root = 0;

  std::vector<std::vector<std::pair<int, int>>> adjacency() const;  // (action, to)
};

ReachGraph reachability_graph(const Net& net, const IntVec& x0,
                              size_t node_budget = 1'000'000);

// maximal strongly connected sets with no outgoing edge, each sorted,
// listed in lexicographic order of their first marking
std::vector<std::vector<IntVec>> bottom_sccs(const ReachGraph& g);

struct DeadResult {
  bool dead = false;
  std::optional<int> witness_action;  // smallest action enabled nowhere
};
DeadResult is_dead(const Net& net, const IntVec& x, size_t node_budget = 1'000'000);

// every bottom component of the reachability graph enables every action
bool is_live(const Net& net, const IntVec& x, size_t node_budget = 1'000'000);

// some marking within `depth` steps of x is dead
bool is_quasi_dead(const Net& net, const IntVec& x, size_t depth,
                   size_t node_budget = 1'000'000);

// Least-weight live marking of a conservative net, scanning strata
// <x, w> = 0, 1, ..., weight_budget with w the conservativeness witness.
// The witness used is written to *weight_out when given.
std::optional<IntVec> structural_liveness_search(const Net& net,
                                                 unsigned weight_budget = 8,
                                                 size_t node_budget = 1'000'000,
                                                 IntVec* weight_out = nullptr);

std::string to_dot(const ReachGraph& g, const Net& net);

}  // namespace pnet
