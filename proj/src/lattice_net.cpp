#include <algorithm>
#include <utility>

#include "pnet/error.hpp"
#include "pnet/hilbert.hpp"
#include "pnet/lattice.hpp"
#include "pnet/structural.hpp"

namespace pnet {

namespace {

// rewrite an atom over z into one over (x, y) with z = y - x; variables are
// ordered x_1..x_d, y_1..y_d
Formula substitute_diff(const Formula& f, int d) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Not:
      return Formula::negate(substitute_diff(f.children()[0], d));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(substitute_diff(c, d));
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(kids))
                                            : Formula::disj(std::move(kids));
    }
    case Formula::Kind::Atom: {
      const Constraint& c = f.constraint();
      IntVec coeffs(2 * d);
      if (c.kind == CKind::Mod) {
        // -a mod m stays inside the required [0, m) coefficient range
        for (int i = 0; i < d; ++i) {
          coeffs[i] = floor_mod(c.modulus - c.coeffs[i], c.modulus);
          coeffs[d + i] = c.coeffs[i];
        }
        return Formula::atom({CKind::Mod, std::move(coeffs), c.rhs, c.modulus});
      }
      for (int i = 0; i < d; ++i) {
        coeffs[i] = -c.coeffs[i];
        coeffs[d + i] = c.coeffs[i];
      }
      return Formula::atom({c.kind, std::move(coeffs), c.rhs, 0});
    }
  }
  throw Error("substitute_diff: unreachable");
}

Lattice displacement_lattice(const Net& net) {
  Lattice lat{net.dim(), {}};
  for (const Action& a : net.actions()) lat.generators.push_back(a.displacement());
  return lat;
}

}  // namespace

LinearSystem virtual_reach_system(const Net& net, EncodeReport* report,
                                  const Int& residue_budget) {
  if (!reversibility_witness(net))
    throw PreconditionError("virtual_reach_system requires a reversible net");
  LinearSystem group = group_to_linsys(displacement_lattice(net), report, residue_budget);
  LinearSystem out{2 * net.dim(), substitute_diff(group.formula, net.dim())};
  if (report) {
    SystemNorms n = system_norms(out);
    report->norm = n.norm;
    report->mlcm = n.mlcm;
    report->within_bound = std::max(n.norm, n.mlcm) <= report->bound;
  }
  return out;
}

Ternary virtual_reach(const Net& net, const IntVec& x, const IntVec& y,
                      size_t frontier_budget) {
  if (x.size() != static_cast<size_t>(net.dim()) || y.size() != x.size())
    throw DimensionError("virtual_reach: dimension mismatch");
  IntVec diff = vsub(y, x);
  if (is_zero(diff)) return Ternary::True;

  HilbertOptions opts;
  opts.frontier_budget = frontier_budget;
  bool reversible = false;
  try {
    reversible = reversibility_witness(net, opts).has_value();
  } catch (const BudgetError&) {
    // fall through to the monoid test, which may still decide
  }
  if (reversible) {
    return lattice_member(displacement_lattice(net), diff) ? Ternary::True : Ternary::False;
  }

  // membership of diff in the displacement monoid: counts m >= 0 with D m = diff
  Matrix D;
  D.rows = net.dim();
  D.cols = net.action_count();
  D.a.assign(D.rows, IntVec(D.cols, 0));
  for (int j = 0; j < D.cols; ++j) {
    IntVec delta = net.action(j).displacement();
    for (int i = 0; i < D.rows; ++i) D.a[i][j] = delta[i];
  }
  try {
    return min_solutions_eq(D, diff, opts).empty() ? Ternary::False : Ternary::True;
  } catch (const BudgetError&) {
    return Ternary::Unknown;
  }
}

}  // namespace pnet
