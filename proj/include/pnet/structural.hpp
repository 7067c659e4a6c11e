#pragma once

#include <optional>

#include "pnet/hilbert.hpp"
#include "pnet/net.hpp"

namespace pnet {

// Positive weight vector w with <disp(a), w> = 0 for every action, found by
// support-covering over the Hilbert basis of the weight cone; nullopt when
// the supports cannot cover all places.
std::optional<IntVec> conservativeness_witness(const Net& net,
                                               const HilbertOptions& opts = {});

// every action moves as many tokens as it consumes
bool is_one_conservative(const Net& net);

// all pre/post entries in {0,1}
bool is_ordinary(const Net& net);

// every action moves 1 or 2 tokens, balanced
bool is_pp_net(const Net& net);

// the action set equals its own reverse
bool is_strongly_reversible(const Net& net);

// Action multiplicities m >= 1 (one per action) with zero total displacement;
// the empty net is reversible with the empty multiplicity vector.
std::optional<IntVec> reversibility_witness(const Net& net,
                                            const HilbertOptions& opts = {});

// Positive w with <disp(a), w> <= 0 for every action.
std::optional<IntVec> structural_boundedness_witness(const Net& net,
                                                     const HilbertOptions& opts = {});

struct StructuralReport {
  bool conservative = false;
  std::optional<IntVec> conservative_witness;
  bool one_conservative = false;
  bool structurally_bounded = false;
  std::optional<IntVec> bounded_witness;
  bool reversible = false;
  std::optional<IntVec> reversible_multiplicities;
  bool ordinary = false;           // all pre/post entries in {0,1}
  bool pp_net = false;             // every action moves 1 or 2 tokens, balanced
  bool strongly_reversible = false;  // the action set equals its own reverse
};

StructuralReport classify(const Net& net, const HilbertOptions& opts = {});

}  // namespace pnet
