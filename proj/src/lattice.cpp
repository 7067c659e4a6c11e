#include "pnet/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>

#include "pnet/bounds.hpp"
#include "pnet/error.hpp"

namespace pnet {

namespace {

// integer row echelon with cross-multiplication, content-normalized rows
struct Echelon {
  struct Row {
    size_t pivot;
    IntVec v;
  };
  std::vector<Row> rows;

  static void normalize(IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, abs(x));
    if (g > 1)
      for (Int& x : v) x /= g;
  }

  // true when the row was independent of the current span
  bool insert(IntVec v) {
    for (const Row& r : rows) {
      if (v[r.pivot] == 0) continue;
      Int a = r.v[r.pivot], b = v[r.pivot];
      for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] * a - r.v[i] * b;
    }
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    normalize(v);
    rows.push_back({p, std::move(v)});
    std::sort(rows.begin(), rows.end(),
              [](const Row& x, const Row& y) { return x.pivot < y.pivot; });
    return true;
  }
};

}  // namespace

int matrix_rank(const std::vector<IntVec>& rows) {
  Echelon e;
  int r = 0;
  for (const IntVec& row : rows)
    if (!row.empty() && e.insert(row)) ++r;
  return r;
}

std::vector<int> greedy_row_basis(const std::vector<IntVec>& rows) {
  Echelon e;
  std::vector<int> basis;
  for (size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty() && e.insert(rows[i])) basis.push_back(static_cast<int>(i));
  return basis;
}

Int determinant(const std::vector<IntVec>& square) {
  size_t n = square.size();
  for (const IntVec& r : square)
    if (r.size() != n) throw DimensionError("determinant: matrix not square");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  std::vector<IntVec> m = square;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// lower-triangular Hermite form of a full-row-rank r x k column list
std::vector<IntVec> hnf_full_rank(std::vector<IntVec> cols, int r) {
  int nc = static_cast<int>(cols.size());
  for (int i = 0; i < r; ++i) {
    for (;;) {
      int best = -1;
      for (int j = i; j < nc; ++j) {
        if (cols[j][i] == 0) continue;
        if (best < 0 || abs(cols[j][i]) < abs(cols[best][i])) best = j;
      }
      if (best < 0) throw Error("hnf: rank drop in full-rank reduction");
      std::swap(cols[i], cols[best]);
      bool remainder_left = false;
      for (int j = i + 1; j < nc; ++j) {
        if (cols[j][i] == 0) continue;
        Int q = cols[j][i] / cols[i][i];
        for (int t = 0; t < r; ++t) cols[j][t] -= q * cols[i][t];
        if (cols[j][i] != 0) remainder_left = true;
      }
      if (!remainder_left) break;
    }
    if (cols[i][i] < 0)
      for (int t = 0; t < r; ++t) cols[i][t] = -cols[i][t];
    for (int j = 0; j < i; ++j) {
      Int q = floor_div(cols[j][i], cols[i][i]);
      if (q != 0)
        for (int t = 0; t < r; ++t) cols[j][t] -= q * cols[i][t];
    }
  }
  cols.resize(r);
  // H stored row-major
  std::vector<IntVec> H(r, IntVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) H[i][j] = cols[j][i];
  return H;
}

std::vector<IntVec> transpose(const std::vector<IntVec>& rows, size_t cols) {
  std::vector<IntVec> t(cols, IntVec(rows.size(), 0));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) t[j][i] = rows[i][j];
  return t;
}

}  // namespace

HnfResult hnf(const Lattice& lat) {
  HnfResult out;
  out.dim = lat.dim;
  size_t d = static_cast<size_t>(lat.dim);
  for (const IntVec& g : lat.generators)
    if (g.size() != d) throw DimensionError("lattice generator length != dim");

  // rows of the generator matrix (one row per coordinate)
  std::vector<IntVec> rows(d, IntVec(lat.generators.size(), 0));
  for (size_t j = 0; j < lat.generators.size(); ++j)
    for (size_t i = 0; i < d; ++i) rows[i][j] = lat.generators[j][i];

  out.basis_rows = lat.generators.empty() ? std::vector<int>{} : greedy_row_basis(rows);
  out.rank = static_cast<int>(out.basis_rows.size());
  {
    std::vector<bool> in_basis(d, false);
    for (int i : out.basis_rows) in_basis[i] = true;
    for (size_t i = 0; i < d; ++i)
      if (!in_basis[i]) out.dep_rows.push_back(static_cast<int>(i));
  }
  int r = out.rank;
  if (r == 0) {
    // zero lattice: every coordinate is a dependent row pinned to 0
    out.den = 1;
    out.dep_num.assign(out.dep_rows.size(), IntVec{});
    return out;
  }

  std::vector<IntVec> basis_mat;  // r x k
  for (int i : out.basis_rows) basis_mat.push_back(rows[i]);

  out.basis_cols = greedy_row_basis(transpose(basis_mat, lat.generators.size()));
  if (static_cast<int>(out.basis_cols.size()) != r)
    throw Error("hnf: column basis size mismatch");

  // H from the basis rows, via column operations
  {
    std::vector<IntVec> cols;
    for (size_t j = 0; j < lat.generators.size(); ++j) {
      IntVec c(r);
      for (int i = 0; i < r; ++i) c[i] = basis_mat[i][j];
      cols.push_back(std::move(c));
    }
    out.H = hnf_full_rank(std::move(cols), r);
    out.det = 1;
    for (int i = 0; i < r; ++i) out.det *= out.H[i][i];
  }

  // Cramer data for dependent rows over the column basis
  std::vector<IntVec> M(r, IntVec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) M[i][j] = basis_mat[i][out.basis_cols[j]];
  out.den = determinant(M);
  if (out.den == 0) throw Error("hnf: singular column-basis minor");
  for (int dep : out.dep_rows) {
    IntVec depRow(r);
    for (int j = 0; j < r; ++j) depRow[j] = rows[dep][out.basis_cols[j]];
    IntVec nums(r);
    for (int j = 0; j < r; ++j) {
      std::vector<IntVec> Mj = M;
      Mj[j] = depRow;
      nums[j] = determinant(Mj);
    }
    out.dep_num.push_back(std::move(nums));
  }
  return out;
}

bool lattice_member(const HnfResult& h, const IntVec& x) {
  if (x.size() != static_cast<size_t>(h.dim))
    throw DimensionError("lattice_member: vector length != dim");
  for (size_t i = 0; i < h.dep_rows.size(); ++i) {
    Int lhs = h.den * x[h.dep_rows[i]];
    Int rhs = 0;
    for (int j = 0; j < h.rank; ++j) rhs += h.dep_num[i][j] * x[h.basis_rows[j]];
    if (lhs != rhs) return false;
  }
  // forward substitution through the triangular form
  IntVec z(h.rank);
  for (int i = 0; i < h.rank; ++i) {
    Int v = x[h.basis_rows[i]];
    for (int j = 0; j < i; ++j) v -= h.H[i][j] * z[j];
    if (v % h.H[i][i] != 0) return false;
    z[i] = v / h.H[i][i];
  }
  return true;
}

namespace {

// Residues b in [0, l)^r whose preimage under H is integral, enumerated
// coordinate by coordinate through the forward substitution so pruning
// happens as early as possible.
void enumerate_residues(const HnfResult& h, const Int& l, IntVec& b, IntVec& z,
                        int i, Int& visited, const Int& budget,
                        std::vector<IntVec>& out) {
  if (i == h.rank) {
    out.push_back(b);
    return;
  }
  for (Int v = 0; v < l; ++v) {
    if (++visited > budget)
      throw BudgetError("group encoding: residue enumeration exceeds budget " +
                        budget.str());
    Int acc = v;
    for (int j = 0; j < i; ++j) acc -= h.H[i][j] * z[j];
    // the substitution must stay integral *and* reach a multiple of l
    // eventually; z entries themselves need no bound because residues of
    // the basis coordinates repeat with period l = |det H|
    if (acc % h.H[i][i] != 0) continue;
    b[i] = v;
    z[i] = acc / h.H[i][i];
    enumerate_residues(h, l, b, z, i + 1, visited, budget, out);
  }
}

}  // namespace

LinearSystem group_to_linsys(const Lattice& lat, EncodeReport* report,
                             const Int& residue_budget) {
  HnfResult h = hnf(lat);
  int d = lat.dim;
  std::vector<Formula> conj;

  // dependent coordinates: den * x_dep - sum(num_j * x_basis_j) = 0
  // (rank 0 leaves the sum empty and den = 1, pinning x_dep to 0)
  for (size_t i = 0; i < h.dep_rows.size(); ++i) {
    IntVec coeffs(d, 0);
    coeffs[h.dep_rows[i]] = h.den;
    for (int j = 0; j < h.rank; ++j) coeffs[h.basis_rows[j]] -= h.dep_num[i][j];
    conj.push_back(Formula::atom({CKind::Eq, std::move(coeffs), 0, 0}));
  }

  Int l = h.det;
  Int residues = 0;
  if (h.rank > 0) {
    if (l == 1) {
      residues = 1;  // the basis coordinates are unconstrained
    } else {
      if (int_pow(l, static_cast<unsigned long>(h.rank)) > residue_budget)
        throw BudgetError("group encoding: residue space " + l.str() + "^" +
                          std::to_string(h.rank) + " exceeds budget");
      std::vector<IntVec> bs;
      IntVec b(h.rank, 0), z(h.rank, 0);
      Int visited = 0;
      enumerate_residues(h, l, b, z, 0, visited, residue_budget, bs);
      residues = static_cast<long>(bs.size());
      std::vector<Formula> disj;
      for (const IntVec& bb : bs) {
        std::vector<Formula> atoms;
        for (int j = 0; j < h.rank; ++j) {
          IntVec coeffs(d, 0);
          coeffs[h.basis_rows[j]] = 1;
          atoms.push_back(Formula::atom({CKind::Mod, std::move(coeffs), bb[j], l}));
        }
        disj.push_back(Formula::conj(std::move(atoms)));
      }
      conj.push_back(Formula::disj(std::move(disj)));
    }
  }

  LinearSystem s{d, Formula::conj(std::move(conj))};
  if (report) {
    SystemNorms n = system_norms(s);
    Int nx = 0;
    for (const IntVec& g : lat.generators) nx = std::max(nx, norm_inf(g));
    report->norm = n.norm;
    report->mlcm = n.mlcm;
    report->bound = bounds::theorem3(static_cast<unsigned>(d), nx);
    report->within_bound = std::max(n.norm, n.mlcm) <= report->bound;
    report->residues = residues;
  }
  return s;
}

}  // namespace pnet
