#pragma once

#include <optional>
#include <vector>

#include "pnet/linsys.hpp"
#include "pnet/net.hpp"
#include "pnet/vec.hpp"

namespace pnet {

// Integer span of a generator list (a subgroup of Z^dim).
struct Lattice {
  int dim = 0;
  std::vector<IntVec> generators;
};

// Column-style Hermite decomposition of the generator matrix.
//
// basis_rows (r of them, ascending) index a row basis; H is the r x r
// lower-triangular form of the generators restricted to those rows, with
// positive diagonal and 0 <= H[i][j] < H[i][i] for j < i. Every dependent
// row i satisfies den * x(dep_rows[i]) = sum_j dep_num[i][j] * x(basis_rows[j])
// on the lattice, with den/dep_num raw Cramer determinants taken over the
// column basis basis_cols.
struct HnfResult {
  int dim = 0;
  int rank = 0;
  std::vector<int> basis_rows;
  std::vector<int> dep_rows;
  std::vector<IntVec> H;
  Int det = 1;  // |det H| = product of the diagonal
  Int den = 1;
  std::vector<IntVec> dep_num;
  std::vector<int> basis_cols;
};

HnfResult hnf(const Lattice& lat);
bool lattice_member(const HnfResult& h, const IntVec& x);
inline bool lattice_member(const Lattice& lat, const IntVec& x) {
  return lattice_member(hnf(lat), x);
}

int matrix_rank(const std::vector<IntVec>& rows);
// first maximal independent subset, in input order
std::vector<int> greedy_row_basis(const std::vector<IntVec>& rows);
Int determinant(const std::vector<IntVec>& square);

struct EncodeReport {
  Int norm = 0;
  Int mlcm = 1;
  Int bound = 0;
  bool within_bound = true;
  Int residues = 0;  // satisfied residue classes kept in the disjunction
};

// Divisibility-and-equality system whose solutions are exactly the lattice
// points. Residue enumeration over [0, |det H|)^rank is budgeted.
LinearSystem group_to_linsys(const Lattice& lat, EncodeReport* report = nullptr,
                             const Int& residue_budget = Int(10'000'000));

// System over (x, y) in N^d x N^d characterizing y - x in the displacement
// group of a reversible net.
LinearSystem virtual_reach_system(const Net& net, EncodeReport* report = nullptr,
                                  const Int& residue_budget = Int(10'000'000));

enum class Ternary { False, True, Unknown };

// Reversible nets: exact via the displacement lattice. Otherwise decides
// membership of y - x in the displacement monoid; Unknown only on budget
// exhaustion.
Ternary virtual_reach(const Net& net, const IntVec& x, const IntVec& y,
                      size_t frontier_budget = 1'000'000);

}  // namespace pnet
