#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnet/net.hpp"

namespace pnet {

// Commutative semigroup presentation: equation sides are multisets of
// letters, stored as sorted index vectors. The covering question asks
// whether u0 = v0 w holds for some word w.
struct SemigroupPresentation {
  struct Equation {
    std::vector<int> lhs;
    std::vector<int> rhs;
  };

  std::vector<std::string> letters;
  std::vector<Equation> equations;
  int u0 = -1;
  int v0 = -1;

  std::optional<int> letter_index(const std::string& name) const;
};

// Text format: "letters a b c", "eq a = b c", "ask a covers b".
SemigroupPresentation parse_presentation(const std::string& text);
std::string write_presentation(const SemigroupPresentation& p);

// no letter occurs twice on one equation side
bool is_normalized(const SemigroupPresentation& p);

// Splits repeated letters: every occurrence of a letter that repeats on a
// side is replaced by a fresh alias, with an alias = letter equation added.
SemigroupPresentation normalize_presentation(const SemigroupPresentation& p);

// Token-game instance: does e_init reach some marking covering e_cov?
// p_store is set by the stages that balance actions through store places.
struct CoverInstance {
  Net net;
  int p_init = 0;
  int p_cov = 0;
  std::optional<int> p_store;
};

// One place per letter, two mutually reversed actions per equation.
CoverInstance semigroup_to_cover(const SemigroupPresentation& p);

// Doubles the dimension with store places that absorb or supply the token
// surplus of each action; adds shuttle actions moving single tokens around
// the store ring. Output is ordinary, strongly reversible, 1-conservative.
CoverInstance cover_to_scover(const CoverInstance& inst);

// Simulation of a 1-conservative net by a net whose actions move one or two
// tokens: each action becomes a chain of two-token steps threaded through a
// run place and per-action control places.
struct PpSimulation {
  Net net;
  int p_run = 0;
};
PpSimulation conservative_to_pp(const Net& net);

// Applies the two-token simulation and guards it with fresh entry/exit
// places so the covering question survives the translation.
CoverInstance scover_to_ppscover(const CoverInstance& inst);

// Structural-liveness instance built on top of a two-token covering
// instance. The certificate is an action sequence with zero total
// displacement covering the irreversible actions; together with the
// reversed pairs it yields the multiplicity vector in `reversibility`.
struct SlInstance {
  Net net;
  int p_init = 0;
  int p_cov = 0;
  int p_store = 0;
  int p_inc = 0;
  int p_dec = 0;
  int p_decp = 0;
  std::vector<int> certificate;
  IntVec reversibility;

  // one token on p_init, `store` tokens on p_store, nothing else
  IntVec initial_marking(const Int& store) const;
};
SlInstance ppscover_to_sl(const CoverInstance& inst);

// Least store count in [from, to] whose initial marking is live; the
// search reports what it finds without any minimality claim.
std::optional<Int> least_live_store(const SlInstance& inst, const Int& from,
                                    const Int& to,
                                    size_t node_budget = 1'000'000);

// Net-file round trip for instances: distinguished places travel as unit
// markings named init / cov / store.
NetFile instance_to_netfile(const CoverInstance& inst);
CoverInstance instance_from_netfile(const NetFile& file);

}  // namespace pnet
