#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnet/hilbert.hpp"
#include "pnet/linsys.hpp"
#include "pnet/net.hpp"

namespace pnet {

// A net observed through the coordinates in state_dims: the projections of a
// bottom SCC become an explicit finite control graph, while the remaining
// coordinates (counter_dims) stay numeric.
struct Pns {
  Net base;
  std::vector<int> state_dims;    // ascending, 0-based
  std::vector<int> counter_dims;  // complement of state_dims
  std::vector<IntVec> states;     // lex-sorted, each of size |state_dims|
  std::vector<std::array<int, 3>> edges;  // (from, action, to), ascending
  // closed walk over edge indices that covers every state and every edge and
  // has total displacement zero in the base net; empty iff there are no edges
  std::vector<int> certificate;
  Int norm = 0;  // max of state entries and net_norm(base)

  int state_index(const IntVec& q) const;  // -1 when absent
};

// counters may go negative in virtual runs
struct PnsConf {
  int state = 0;
  IntVec counters;
};

// X must be closed under firing and strongly connected; the zero-displacement
// covering walk is constructed (an error if none exists).
Pns build_pns(const Net& net, const std::vector<IntVec>& X,
              const std::vector<int>& state_dims, const HilbertOptions& opts = {});

// recomputes from scratch whether `states` is closed under the restricted net
// and strongly connected; stored edges are not trusted
bool is_proper(const Pns& g);

// drop the counter coordinates outside `keep` (base-net indices)
Pns restrict_pns(const Pns& g, const std::vector<int>& keep);

// One action per distinct simple-cycle displacement, restricted to the
// counters; pre/post take the negative and positive parts. Parallel edges
// count as distinct cycles.
Net simple_cycle_net(const Pns& g, size_t cycle_budget = 100'000);

// (p,x) reaches (q,y) virtually: some control path p -> q plus a combination
// of cycles closes the counter gap, i.e. (y - x) - disp(path) lies in the
// group spanned by the simple-cycle displacements
bool pns_virtual_reach(const Pns& g, const Net& cycle_net, const PnsConf& from,
                       const PnsConf& to);
bool pns_virtual_reach(const Pns& g, const PnsConf& from, const PnsConf& to);

struct PnsCandidate {
  std::vector<int> state_dims;
  Pns pns;
  Int q_norm = 0;     // largest state entry
  Int threshold = 0;  // counter floor this candidate was tested against
  IntVec witness_marking;  // element of X whose counters all reach the floor
  PnsConf witness;
};

// Brute force over the coordinate subsets: keep those where some element of X
// has every counter at or above the threshold (vacuous for an empty counter
// set). threshold_fn receives the candidate's q_norm.
std::vector<PnsCandidate> extract_candidates(
    const Net& net, const std::vector<IntVec>& X,
    const std::function<Int(const Int&)>& threshold_fn, const HilbertOptions& opts = {});
std::vector<PnsCandidate> extract_candidates(const Net& net,
                                             const std::vector<IntVec>& X,
                                             const Int& threshold,
                                             const HilbertOptions& opts = {});

// The unique maximal position set S with x(i) < levels[|S|] on S and
// x(i) >= levels[|S|+1] off S, where levels is 1-indexed nondecreasing,
// levels[0] = 0 and levels[n+1] = levels[n]. Exhaustive over subsets, with
// the uniqueness asserted.
std::vector<int> low_coords(const IntVec& x, const IntVec& levels);

// how far x is from having low_coords(x) == jprime; 0 iff they match
Int dif(const IntVec& x, const std::vector<int>& jprime, const IntVec& levels);

// Conjunction over all counter subsets: shared x-variables >= floor_c, and
// per subset an own y-block that is virtually reachable from x (via
// cycle_net's displacement group) and pinned to the subset's anchor at
// coordinates <= b0, strictly above b0 elsewhere. Dimension n + n*2^n;
// refuses n > 4.
LinearSystem anchored_reach_system(const Net& cycle_net, const Int& floor_c,
                                   const Int& b0,
                                   const std::map<std::vector<int>, IntVec>& anchors);

// heuristic: scan the box [0, box]^n for the dif-minimizing vector that is
// virtually reachable from x0 and has all coordinates >= floor_c; ties broken
// by (|y|_1, lex). No optimality promise outside the box.
std::optional<IntVec> suggest_anchor(const Net& cycle_net, const IntVec& x0,
                                     const std::vector<int>& jprime,
                                     const IntVec& levels, const Int& box,
                                     const Int& floor_c = 0);

// JSON with the base net embedded in net-file syntax; indices 1-based.
// Parsing rebuilds the covering walk when the file omits it.
std::string pns_to_json(const Pns& g, int indent = 2);
Pns pns_from_json(const std::string& text, const HilbertOptions& opts = {});

}  // namespace pnet
