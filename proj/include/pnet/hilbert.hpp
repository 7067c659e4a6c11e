#pragma once

#include <utility>
#include <vector>

#include "pnet/ints.hpp"

namespace pnet {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<IntVec> a;  // row-major

  static Matrix from_rows(std::vector<IntVec> r);
  IntVec col(int j) const;
};

struct HilbertOptions {
  size_t frontier_budget = 1'000'000;
};

// Minimal nonzero solutions of B x = 0 over the naturals; returned
// lex-sorted. Every solution is a finite sum of returned elements.
std::vector<IntVec> hilbert_basis(const Matrix& B, const HilbertOptions& opts = {});

// min_<= of {y in N^d : C y = c}. Empty means infeasible. c = 0 delegates
// to hilbert_basis (minimal *nonzero* homogeneous solutions).
std::vector<IntVec> min_solutions_eq(const Matrix& C, const IntVec& c,
                                     const HilbertOptions& opts = {});

// min_<= of {y in N^d : C y >= c}; {0} whenever c <= 0
std::vector<IntVec> min_solutions_geq(const Matrix& C, const IntVec& c,
                                      const HilbertOptions& opts = {});

// Sign-order-minimal elements of the monoid generated by `gens` in Z^dim.
// Always contains the zero vector.
std::vector<IntVec> min_sleq_monoid(const std::vector<IntVec>& gens, int dim,
                                    const HilbertOptions& opts = {});

// For y != 0 in the group spanned by `gens`, returns (z, y - z) with z a
// nonzero sign-order-minimal group element below y; (0, 0) for y = 0.
std::pair<IntVec, IntVec> sleq_decompose(const std::vector<IntVec>& gens,
                                         const IntVec& y,
                                         const HilbertOptions& opts = {});

}  // namespace pnet
