#pragma once

#include <algorithm>
#include <vector>

#include "pnet/error.hpp"
#include "pnet/ints.hpp"

namespace pnet {

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: dimension mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec vadd(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionError("vadd: dimension mismatch");
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec vsub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionError("vsub: dimension mismatch");
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec vneg(const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

// max-norm; empty vector has norm 0
inline Int norm_inf(const IntVec& a) {
  Int m = 0;
  for (const Int& v : a) m = std::max(m, abs(v));
  return m;
}

inline Int norm_one(const IntVec& a) {
  Int s = 0;
  for (const Int& v : a) s += abs(v);
  return s;
}

inline bool is_zero(const IntVec& a) {
  for (const Int& v : a)
    if (v != 0) return false;
  return true;
}

inline bool is_nonneg(const IntVec& a) {
  for (const Int& v : a)
    if (v < 0) return false;
  return true;
}

// pointwise x <= y
inline bool leq(const IntVec& x, const IntVec& y) {
  if (x.size() != y.size()) throw DimensionError("leq: dimension mismatch");
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

inline int sgn(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline std::vector<int> sign_vec(const IntVec& x) {
  std::vector<int> s(x.size());
  for (size_t i = 0; i < x.size(); ++i) s[i] = sgn(x[i]);
  return s;
}

// sign-preserving componentwise order: same sign everywhere and |x(i)| <= |y(i)|
inline bool sleq(const IntVec& x, const IntVec& y) {
  if (x.size() != y.size()) throw DimensionError("sleq: dimension mismatch");
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != sgn(y[i])) return false;
    if (abs(x[i]) > abs(y[i])) return false;
  }
  return true;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void sort_canonical(std::vector<IntVec>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// keep the pointwise-minimal elements of a set
inline std::vector<IntVec> min_leq_filter(std::vector<IntVec> vs) {
  sort_canonical(vs);
  std::vector<IntVec> out;
  for (const IntVec& v : vs) {
    bool dominated = false;
    for (const IntVec& u : vs) {
      if (&u != &v && leq(u, v) && u != v) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(v);
  }
  return out;
}

// keep the sign-order-minimal elements of a set
inline std::vector<IntVec> min_sleq_filter(std::vector<IntVec> vs) {
  sort_canonical(vs);
  std::vector<IntVec> out;
  for (const IntVec& v : vs) {
    bool dominated = false;
    for (const IntVec& u : vs) {
      if (&u != &v && u != v && sleq(u, v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(v);
  }
  return out;
}

// project x onto index set I (0-based, ascending)
inline IntVec project(const IntVec& x, const std::vector<int>& I) {
  IntVec r;
  r.reserve(I.size());
  for (int i : I) {
    if (i < 0 || static_cast<size_t>(i) >= x.size())
      throw DimensionError("project: index out of range");
    r.push_back(x[i]);
  }
  return r;
}

inline std::vector<int> complement(const std::vector<int>& I, int d) {
  std::vector<int> J;
  size_t k = 0;
  for (int i = 0; i < d; ++i) {
    if (k < I.size() && I[k] == i) {
      ++k;
    } else {
      J.push_back(i);
    }
  }
  return J;
}

}  // namespace pnet
