#include "pnet/structural.hpp"

#include <algorithm>
#include <set>

#include "pnet/error.hpp"
#include "pnet/vec.hpp"

namespace pnet {

namespace {

// sum of a greedy support-covering subfamily, restricted to the first
// `need` coordinates; nullopt when the union of supports falls short
std::optional<IntVec> covering_sum(const std::vector<IntVec>& basis, int width,
                                   int need) {
  std::vector<bool> covered(need, false);
  int missing = need;
  IntVec sum(width, 0);
  for (const IntVec& b : basis) {
    bool adds = false;
    for (int i = 0; i < need; ++i)
      if (!covered[i] && b[i] > 0) {
        adds = true;
        break;
      }
    if (!adds) continue;
    for (int i = 0; i < need; ++i)
      if (!covered[i] && b[i] > 0) {
        covered[i] = true;
        --missing;
      }
    sum = vadd(sum, b);
    if (missing == 0) break;
  }
  if (missing != 0) return std::nullopt;
  return sum;
}

}  // namespace

std::optional<IntVec> conservativeness_witness(const Net& net,
                                               const HilbertOptions& opts) {
  Matrix m;
  m.rows = net.action_count();
  m.cols = net.dim();
  for (const Action& a : net.actions()) m.a.push_back(a.displacement());
  std::vector<IntVec> basis = hilbert_basis(m, opts);
  return covering_sum(basis, net.dim(), net.dim());
}

bool is_one_conservative(const Net& net) {
  for (const Action& a : net.actions())
    if (norm_one(a.pre) != norm_one(a.post)) return false;
  return true;
}

bool is_ordinary(const Net& net) {
  for (const Action& a : net.actions()) {
    for (const Int& v : a.pre)
      if (v > 1) return false;
    for (const Int& v : a.post)
      if (v > 1) return false;
  }
  return true;
}

bool is_pp_net(const Net& net) {
  for (const Action& a : net.actions()) {
    Int in = norm_one(a.pre), out = norm_one(a.post);
    if (in != out || in < 1 || in > 2) return false;
  }
  return true;
}

bool is_strongly_reversible(const Net& net) {
  std::set<std::pair<IntVec, IntVec>> bodies;
  for (const Action& a : net.actions()) bodies.insert({a.pre, a.post});
  for (const auto& [pre, post] : bodies)
    if (!bodies.count({post, pre})) return false;
  return true;
}

std::optional<IntVec> reversibility_witness(const Net& net,
                                            const HilbertOptions& opts) {
  Matrix m;
  m.rows = net.dim();
  m.cols = net.action_count();
  m.a.assign(net.dim(), IntVec(net.action_count(), 0));
  for (int j = 0; j < net.action_count(); ++j) {
    IntVec d = net.action(j).displacement();
    for (int i = 0; i < net.dim(); ++i) m.a[i][j] = d[i];
  }
  std::vector<IntVec> basis = hilbert_basis(m, opts);
  return covering_sum(basis, net.action_count(), net.action_count());
}

std::optional<IntVec> structural_boundedness_witness(const Net& net,
                                                     const HilbertOptions& opts) {
  int d = net.dim(), k = net.action_count();
  // <disp(a_j), w> + s_j = 0 over (w, s) in N^(d+k)
  Matrix m;
  m.rows = k;
  m.cols = d + k;
  for (int j = 0; j < k; ++j) {
    IntVec row(d + k, 0);
    IntVec disp = net.action(j).displacement();
    for (int i = 0; i < d; ++i) row[i] = disp[i];
    row[d + j] = 1;
    m.a.push_back(std::move(row));
  }
  std::vector<IntVec> basis = hilbert_basis(m, opts);
  std::optional<IntVec> sum = covering_sum(basis, d + k, d);
  if (!sum) return std::nullopt;
  return IntVec(sum->begin(), sum->begin() + d);
}

StructuralReport classify(const Net& net, const HilbertOptions& opts) {
  StructuralReport r;
  r.conservative_witness = conservativeness_witness(net, opts);
  r.conservative = r.conservative_witness.has_value();
  r.one_conservative = is_one_conservative(net);
  r.bounded_witness = structural_boundedness_witness(net, opts);
  r.structurally_bounded = r.bounded_witness.has_value();
  r.reversible_multiplicities = reversibility_witness(net, opts);
  r.reversible = r.reversible_multiplicities.has_value();

  r.ordinary = is_ordinary(net);
  r.pp_net = is_pp_net(net);
  r.strongly_reversible = is_strongly_reversible(net);
  return r;
}

}  // namespace pnet
