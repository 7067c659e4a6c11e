#include "pnet/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include "pnet/bounds.hpp"
#include "pnet/error.hpp"
#include "pnet/lattice.hpp"
#include "pnet/vec.hpp"

namespace pnet {

Matrix Matrix::from_rows(std::vector<IntVec> r) {
  Matrix m;
  m.rows = static_cast<int>(r.size());
  m.cols = r.empty() ? 0 : static_cast<int>(r[0].size());
  for (const IntVec& row : r)
    if (row.size() != static_cast<size_t>(m.cols))
      throw DimensionError("matrix rows of unequal length");
  m.a = std::move(r);
  return m;
}

IntVec Matrix::col(int j) const {
  IntVec c(rows);
  for (int i = 0; i < rows; ++i) c[i] = a[i][j];
  return c;
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<int64_t> {
  static int64_t add(int64_t a, int64_t b) { return checked_add(a, b); }
  static int64_t mul(int64_t a, int64_t b) { return checked_mul(a, b); }
  static int64_t from_int(const Int& v) {
    if (!fits_i64(v)) throw I64Overflow{};
    return to_i64(v);
  }
  static Int to_int(int64_t v) { return Int(v); }
};

template <>
struct Arith<Int> {
  static Int add(const Int& a, const Int& b) { return a + b; }
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static Int from_int(const Int& v) { return v; }
  static Int to_int(const Int& v) { return v; }
};

struct VecHash {
  size_t operator()(const std::vector<int64_t>& v) const {
    size_t h = v.size();
    for (int64_t x : v)
      h ^= std::hash<int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

template <class T>
struct LevelSet;

template <>
struct LevelSet<int64_t> {
  std::unordered_set<std::vector<int64_t>, VecHash> s;
  bool insert(const std::vector<int64_t>& v) { return s.insert(v).second; }
  void clear() { s.clear(); }
};

template <>
struct LevelSet<Int> {
  std::set<std::vector<Int>> s;
  bool insert(const std::vector<Int>& v) { return s.insert(v).second; }
  void clear() { s.clear(); }
};

// Completion over the naturals, processed breadth-first by |x|_1 level:
// a popped solution is minimal exactly when no already-found basis element
// lies below it, and a candidate dominating a basis element can never lead
// to a new minimal solution.
template <class T>
std::vector<std::vector<T>> complete(const std::vector<std::vector<T>>& bcols,
                                     int m, int n, size_t budget) {
  using A = Arith<T>;
  struct Cand {
    std::vector<T> x;
    std::vector<T> defect;
  };

  std::vector<std::vector<T>> basis;
  auto dominated = [&](const std::vector<T>& x) {
    for (const auto& b : basis) {
      bool le = true;
      for (int i = 0; i < n; ++i)
        if (b[i] > x[i]) {
          le = false;
          break;
        }
      if (le) return true;
    }
    return false;
  };

  std::vector<Cand> level;
  size_t generated = 0;
  for (int j = 0; j < n; ++j) {
    Cand c;
    c.x.assign(n, T(0));
    c.x[j] = T(1);
    c.defect = bcols[j];
    level.push_back(std::move(c));
    ++generated;
  }

  LevelSet<T> next_seen;
  while (!level.empty()) {
    std::vector<Cand> next;
    next_seen.clear();
    for (const Cand& c : level) {
      bool zero = true;
      for (int i = 0; i < m; ++i)
        if (c.defect[i] != T(0)) {
          zero = false;
          break;
        }
      if (zero) {
        if (!dominated(c.x)) basis.push_back(c.x);
        continue;
      }
      for (int j = 0; j < n; ++j) {
        // extend only toward directions that oppose the current defect
        T ip = T(0);
        for (int i = 0; i < m; ++i) ip = A::add(ip, A::mul(c.defect[i], bcols[j][i]));
        if (!(ip < T(0))) continue;
        Cand nc;
        nc.x = c.x;
        nc.x[j] = A::add(nc.x[j], T(1));
        if (dominated(nc.x)) continue;
        if (!next_seen.insert(nc.x)) continue;
        nc.defect.resize(m);
        for (int i = 0; i < m; ++i) nc.defect[i] = A::add(c.defect[i], bcols[j][i]);
        if (++generated > budget)
          throw BudgetError("hilbert completion: frontier budget " +
                            std::to_string(budget) + " exceeded");
        next.push_back(std::move(nc));
      }
    }
    level = std::move(next);
  }
  return basis;
}

template <class T>
std::vector<IntVec> run_completion(const Matrix& B, size_t budget) {
  using A = Arith<T>;
  int m = B.rows, n = B.cols;
  std::vector<std::vector<T>> bcols(n, std::vector<T>(m));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) bcols[j][i] = A::from_int(B.a[i][j]);
  auto basis = complete<T>(bcols, m, n, budget);
  std::vector<IntVec> out;
  out.reserve(basis.size());
  for (const auto& b : basis) {
    IntVec v(n);
    for (int j = 0; j < n; ++j) v[j] = A::to_int(b[j]);
    out.push_back(std::move(v));
  }
  return out;
}

Int row_norm1(const Matrix& B) {
  Int m = 0;
  for (const IntVec& row : B.a) m = std::max(m, norm_one(row));
  return m;
}

}  // namespace

std::vector<IntVec> hilbert_basis(const Matrix& B, const HilbertOptions& opts) {
  if (B.cols == 0) return {};
  std::vector<IntVec> basis;
  try {
    basis = run_completion<int64_t>(B, opts.frontier_budget);
  } catch (const I64Overflow&) {
    basis = run_completion<Int>(B, opts.frontier_budget);
  }
  basis = min_leq_filter(std::move(basis));
  sort_canonical(basis);

  Int bound = bounds::pottier(row_norm1(B), static_cast<unsigned>(matrix_rank(B.a)));
  for (const IntVec& x : basis)
    if (norm_one(x) > bound)
      throw Error("hilbert basis element exceeds its norm bound");
  return basis;
}

std::vector<IntVec> min_solutions_eq(const Matrix& C, const IntVec& c,
                                     const HilbertOptions& opts) {
  if (c.size() != static_cast<size_t>(C.rows))
    throw DimensionError("min_solutions_eq: rhs length != rows");
  if (is_zero(c)) return hilbert_basis(C, opts);

  // homogenize: solutions of C y = c are the t = 1 slices of [C | -c]
  Matrix B;
  B.rows = C.rows;
  B.cols = C.cols + 1;
  for (int i = 0; i < C.rows; ++i) {
    IntVec row = C.a[i];
    row.push_back(-c[i]);
    B.a.push_back(std::move(row));
  }
  std::vector<IntVec> basis = hilbert_basis(B, opts);
  std::vector<IntVec> out;
  for (const IntVec& x : basis) {
    if (x[C.cols] != 1) continue;
    out.emplace_back(x.begin(), x.begin() + C.cols);
  }
  sort_canonical(out);

  std::vector<int> J = greedy_row_basis(C.a);
  Int normCJ = 0, cJ1 = 0;
  for (int i : J) {
    normCJ = std::max(normCJ, norm_inf(C.a[i]));
    cJ1 += abs(c[i]);
  }
  Int bound = bounds::lemma4(cJ1, C.cols, normCJ, static_cast<unsigned>(J.size()));
  for (const IntVec& x : out)
    if (norm_one(x) > bound)
      throw Error("minimal equation solution exceeds its norm bound");
  return out;
}

std::vector<IntVec> min_solutions_geq(const Matrix& C, const IntVec& c,
                                      const HilbertOptions& opts) {
  if (c.size() != static_cast<size_t>(C.rows))
    throw DimensionError("min_solutions_geq: rhs length != rows");
  bool nonpos = true;
  for (const Int& v : c)
    if (v > 0) {
      nonpos = false;
      break;
    }
  if (nonpos) return {IntVec(C.cols, 0)};

  // slack variables: C z - s = c
  Matrix B;
  B.rows = C.rows;
  B.cols = C.cols + C.rows;
  for (int i = 0; i < C.rows; ++i) {
    IntVec row = C.a[i];
    row.resize(C.cols + C.rows, 0);
    row[C.cols + i] = -1;
    B.a.push_back(std::move(row));
  }
  std::vector<IntVec> lifted = min_solutions_eq(B, c, opts);
  std::vector<IntVec> out;
  for (const IntVec& zs : lifted) out.emplace_back(zs.begin(), zs.begin() + C.cols);
  out = min_leq_filter(std::move(out));

  Int s = norm_inf(c);
  for (const IntVec& row : C.a) s = std::max(s, norm_inf(row));
  Int bound = bounds::lemma5(C.cols, s, static_cast<unsigned>(matrix_rank(C.a)));
  for (const IntVec& x : out)
    if (norm_one(x) > bound)
      throw Error("minimal inequality solution exceeds its norm bound");
  return out;
}

namespace {

// all sums of between 1 and `take` elements of `xs` (with repetition),
// visited through a combination tree
void multiset_sums(const std::vector<IntVec>& xs, size_t from, int take,
                   IntVec& acc, bool nonempty, size_t& visited, size_t budget,
                   const std::function<void(const IntVec&)>& emit) {
  if (nonempty) emit(acc);
  if (take == 0) return;
  for (size_t j = from; j < xs.size(); ++j) {
    if (++visited > budget)
      throw BudgetError("sign-minimal extraction: combination budget exceeded");
    IntVec saved = acc;
    acc = vadd(acc, xs[j]);
    multiset_sums(xs, j, take - 1, acc, true, visited, budget, emit);
    acc = std::move(saved);
  }
}

}  // namespace

std::vector<IntVec> min_sleq_monoid(const std::vector<IntVec>& gens, int dim,
                                    const HilbertOptions& opts) {
  for (const IntVec& g : gens)
    if (g.size() != static_cast<size_t>(dim))
      throw DimensionError("min_sleq_monoid: generator length != dim");
  int k = static_cast<int>(gens.size());

  std::vector<IntVec> candidates;
  candidates.push_back(IntVec(dim, 0));

  // one completion per sign vector s: solutions of D_{-s} x' + C x'' = 0
  // capture monoid elements whose support pattern is compatible with s
  std::vector<int> s(dim, -1);
  for (;;) {
    bool allzero = true;
    for (int v : s)
      if (v != 0) allzero = false;
    if (!allzero) {
      Matrix B;
      B.rows = dim;
      B.cols = dim + k;
      for (int i = 0; i < dim; ++i) {
        IntVec row(dim + k, 0);
        row[i] = -s[i];
        for (int j = 0; j < k; ++j) row[dim + j] = gens[j][i];
        B.a.push_back(std::move(row));
      }
      std::vector<IntVec> X = hilbert_basis(B, opts);
      size_t visited = 0;
      IntVec acc(dim + k, 0);
      multiset_sums(X, 0, dim, acc, false, visited, opts.frontier_budget,
                    [&](const IntVec& sum) {
                      IntVec z(dim);
                      bool sign_ok = true;
                      for (int i = 0; i < dim; ++i) {
                        z[i] = Int(s[i]) * sum[i];
                        if (sgn(z[i]) != s[i]) sign_ok = false;
                      }
                      if (sign_ok) candidates.push_back(std::move(z));
                    });
    }
    int i = 0;
    while (i < dim && s[i] == 1) s[i++] = -1;
    if (i == dim) break;
    ++s[i];
  }

  std::vector<IntVec> out = min_sleq_filter(std::move(candidates));
  sort_canonical(out);

  Int na = 0;
  for (const IntVec& g : gens) na = std::max(na, norm_inf(g));
  Int bound = bounds::lemma3(static_cast<unsigned>(dim), na);
  for (const IntVec& x : out)
    if (norm_inf(x) > bound)
      throw Error("sign-minimal element exceeds its norm bound");
  return out;
}

std::pair<IntVec, IntVec> sleq_decompose(const std::vector<IntVec>& gens,
                                         const IntVec& y,
                                         const HilbertOptions& opts) {
  Lattice lat{static_cast<int>(y.size()), gens};
  if (!lattice_member(lat, y))
    throw MembershipError("sleq_decompose: vector outside the generated group");
  if (is_zero(y)) return {IntVec(y.size(), 0), IntVec(y.size(), 0)};

  std::vector<IntVec> symmetric = gens;
  for (const IntVec& g : gens) symmetric.push_back(vneg(g));
  std::vector<IntVec> mins = min_sleq_monoid(symmetric, static_cast<int>(y.size()), opts);
  for (const IntVec& z : mins) {
    if (is_zero(z)) continue;
    if (sleq(z, y)) return {z, vsub(y, z)};
  }
  throw Error("sleq_decompose: no sign-minimal element below a group member");
}

}  // namespace pnet
