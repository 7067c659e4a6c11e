#pragma once

#include <functional>
#include <map>
#include <string>

#include "pnet/ints.hpp"

namespace pnet::bounds {

// Hook for formulas parameterized by an external resource-bound function.
// Arguments are positional: f/f1/fvr take (m, d), p takes (d).
using Plugin = std::function<Int(const IntVec&)>;

// Parameter names per id:
//   pottier        B1, r
//   lemma3         d, A
//   lemma4         c1, d, C, r
//   lemma5         d, M, r
//   lemma6         d, S
//   theorem2       d, S, mlcm
//   theorem3       d, X
//   f_scc          m, d
//   rackoff_g      m, d            (sequence g(m,0..d))
//   f_dead         m, d
//   lambda_extract m, d            (plugin f; sequence lambda_1..lambda_d)
//   lambda_s37     A, G, d, len, Cvr  (plugins f1, fvr; sequence lambda_1..lambda_len)
//   b0             lambda, norm
//   rb_envelope    c, m, d (plugin p) or c, m, pd
struct BoundFormula {
  std::string id;
  std::map<std::string, Int> params;
  std::map<std::string, Plugin> plugins;
};

// Registers a plugin. The two-argument hooks must behave like resource
// bounds: m <= p(m,d) and nondecreasing in both arguments, checked on
// a small sample grid.
void add_plugin(BoundFormula& f, const std::string& name, Plugin p);

struct BoundResult {
  bool is_sequence = false;
  Int value;
  IntVec sequence;
};

BoundResult eval_bound(const BoundFormula& f);

// lambda given as (lambda_1..lambda_d); lambda_0 = 1 is implied
bool check_m_adapted(const IntVec& lambda, const Int& m);

// Convenience wrappers around eval_bound.
Int pottier(const Int& b1, unsigned r);
Int lemma3(unsigned d, const Int& a);
Int lemma4(const Int& c1, unsigned d, const Int& c, unsigned r);
Int lemma5(unsigned d, const Int& m, unsigned r);
Int lemma6(unsigned d, const Int& s);
Int theorem2(unsigned d, const Int& s, const Int& mlcm);
Int theorem3(unsigned d, const Int& x);
Int f_scc(const Int& m, unsigned d);
IntVec rackoff_g(const Int& m, unsigned d);
Int f_dead(const Int& m, unsigned d);
IntVec lambda_extract(const Int& m, unsigned d, Plugin f);
IntVec lambda_s37(const Int& a, const Int& g, unsigned d, unsigned len, const Int& cvr,
                  Plugin f1, Plugin fvr);
Int b0(const Int& lambda, const Int& norm);

}  // namespace pnet::bounds
