#include "pnet/bounds.hpp"

#include <utility>

#include "pnet/error.hpp"

namespace pnet::bounds {

namespace {

const Int& need(const BoundFormula& f, const char* name) {
  auto it = f.params.find(name);
  if (it == f.params.end())
    throw PreconditionError("bound " + f.id + ": missing parameter " + name);
  if (it->second < 0)
    throw PreconditionError("bound " + f.id + ": parameter " + name + " must be nonnegative");
  return it->second;
}

unsigned need_u(const BoundFormula& f, const char* name) {
  const Int& v = need(f, name);
  if (v > 1u << 20)
    throw PreconditionError("bound " + f.id + ": parameter " + name + " too large");
  return static_cast<unsigned>(to_i64(v));
}

const Plugin& need_plugin(const BoundFormula& f, const char* name) {
  auto it = f.plugins.find(name);
  if (it == f.plugins.end())
    throw PreconditionError("bound " + f.id + ": missing plugin " + name);
  return it->second;
}

IntVec rackoff_seq(const Int& m, unsigned d) {
  IntVec g(d + 1);
  g[0] = 0;
  for (unsigned i = 0; i < d; ++i) g[i + 1] = int_pow(m + m * g[i], i + 1) + g[i];
  return g;
}

}  // namespace

void add_plugin(BoundFormula& f, const std::string& name, Plugin p) {
  if (name == "f" || name == "f1" || name == "fvr") {
    static const int64_t grid[] = {0, 1, 2, 3, 7};
    for (int64_t m : grid) {
      for (int64_t d : grid) {
        Int v = p({Int(m), Int(d)});
        if (v < m)
          throw PreconditionError("plugin " + name + " violates m <= f(m,d) at m=" +
                                  std::to_string(m) + ", d=" + std::to_string(d));
        for (int64_t m2 : grid) {
          for (int64_t d2 : grid) {
            if (m2 < m || d2 < d) continue;
            if (p({Int(m2), Int(d2)}) < v)
              throw PreconditionError("plugin " + name + " is not nondecreasing");
          }
        }
      }
    }
  }
  f.plugins[name] = std::move(p);
}

BoundResult eval_bound(const BoundFormula& f) {
  BoundResult r;
  const std::string& id = f.id;
  if (id == "pottier") {
    r.value = int_pow(1 + need(f, "B1"), need_u(f, "r"));
  } else if (id == "lemma3") {
    unsigned d = need_u(f, "d");
    const Int& a = need(f, "A");
    r.value = Int(d) * int_pow(2 + int_pow(1 + 2 * a, d) * a, d);
  } else if (id == "lemma4") {
    unsigned d = need_u(f, "d");
    r.value = need(f, "c1") * int_pow(2 + Int(d) * need(f, "C"), need_u(f, "r"));
  } else if (id == "lemma5") {
    unsigned d = need_u(f, "d");
    r.value = int_pow(2 + Int(d) * need(f, "M"), 2ul * need_u(f, "r") + 1);
  } else if (id == "lemma6") {
    unsigned d = need_u(f, "d");
    r.value = int_pow(2 + d + Int(d) * need(f, "S"), 2ul * d + 1);
  } else if (id == "theorem2") {
    unsigned d = need_u(f, "d");
    r.value =
        need(f, "mlcm") * (Int(d) + int_pow(2 + d + Int(d) * Int(d) * need(f, "S"), 2ul * d + 1));
  } else if (id == "theorem3") {
    unsigned d = need_u(f, "d");
    r.value = factorial(d) * int_pow(need(f, "X"), d);
  } else if (id == "f_scc") {
    const Int& m = need(f, "m");
    r.value = m * int_pow(1 + m, need_u(f, "d"));
  } else if (id == "rackoff_g") {
    r.is_sequence = true;
    r.sequence = rackoff_seq(need(f, "m"), need_u(f, "d"));
  } else if (id == "f_dead") {
    const Int& m = need(f, "m");
    IntVec g = rackoff_seq(m, need_u(f, "d"));
    r.value = m + m * g.back();
  } else if (id == "lambda_extract") {
    const Int& m = need(f, "m");
    unsigned d = need_u(f, "d");
    const Plugin& fp = need_plugin(f, "f");
    r.is_sequence = true;
    if (d == 0) return r;
    r.sequence.resize(d);
    r.sequence[0] = fp({m, Int(d)});
    for (unsigned i = 1; i < d; ++i)
      r.sequence[i] = fp({r.sequence[i - 1], Int(d)}) + m * i * int_pow(r.sequence[i - 1], i);
  } else if (id == "lambda_s37") {
    const Int& a = need(f, "A");
    const Int& g = need(f, "G");
    unsigned d = need_u(f, "d");
    unsigned len = need_u(f, "len");
    BoundFormula fd{"f_dead", {{"m", a}, {"d", Int(d)}}, {}};
    Int base = eval_bound(fd).value;
    base = std::max(base, need(f, "Cvr"));
    Int f1 = need_plugin(f, "f1")({g, Int(d)});
    Int fvr = need_plugin(f, "fvr")({g, Int(d)});
    r.is_sequence = true;
    r.sequence.resize(len);
    Int prev = 0;
    for (unsigned i = 0; i < len; ++i) {
      r.sequence[i] = base + a * (f1 + fvr * prev);
      prev = r.sequence[i];
    }
  } else if (id == "b0") {
    r.value = need(f, "lambda") + need(f, "norm");
  } else if (id == "rb_envelope") {
    Int pd;
    if (f.plugins.count("p")) {
      pd = f.plugins.at("p")({need(f, "d")});
    } else {
      pd = need(f, "pd");
    }
    if (pd < 0 || pd > 24) throw BudgetError("rb_envelope: exponent 2^" + pd.str() + " too large");
    Int e = int_pow(2, static_cast<unsigned long>(to_i64(pd)));
    r.value = int_pow(need(f, "c") + need(f, "m"), static_cast<unsigned long>(to_i64(e)));
  } else {
    throw PreconditionError("unknown bound id: " + id);
  }
  return r;
}

bool check_m_adapted(const IntVec& lambda, const Int& m) {
  Int prev = 1;
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < prev + m * int_pow(prev, static_cast<unsigned long>(i))) return false;
    prev = lambda[i];
  }
  return true;
}

Int pottier(const Int& b1, unsigned r) {
  return eval_bound({"pottier", {{"B1", b1}, {"r", Int(r)}}, {}}).value;
}

Int lemma3(unsigned d, const Int& a) {
  return eval_bound({"lemma3", {{"d", Int(d)}, {"A", a}}, {}}).value;
}

Int lemma4(const Int& c1, unsigned d, const Int& c, unsigned r) {
  return eval_bound({"lemma4", {{"c1", c1}, {"d", Int(d)}, {"C", c}, {"r", Int(r)}}, {}}).value;
}

Int lemma5(unsigned d, const Int& m, unsigned r) {
  return eval_bound({"lemma5", {{"d", Int(d)}, {"M", m}, {"r", Int(r)}}, {}}).value;
}

Int lemma6(unsigned d, const Int& s) {
  return eval_bound({"lemma6", {{"d", Int(d)}, {"S", s}}, {}}).value;
}

Int theorem2(unsigned d, const Int& s, const Int& mlcm) {
  return eval_bound({"theorem2", {{"d", Int(d)}, {"S", s}, {"mlcm", mlcm}}, {}}).value;
}

Int theorem3(unsigned d, const Int& x) {
  return eval_bound({"theorem3", {{"d", Int(d)}, {"X", x}}, {}}).value;
}

Int f_scc(const Int& m, unsigned d) {
  return eval_bound({"f_scc", {{"m", m}, {"d", Int(d)}}, {}}).value;
}

IntVec rackoff_g(const Int& m, unsigned d) {
  return eval_bound({"rackoff_g", {{"m", m}, {"d", Int(d)}}, {}}).sequence;
}

Int f_dead(const Int& m, unsigned d) {
  return eval_bound({"f_dead", {{"m", m}, {"d", Int(d)}}, {}}).value;
}

IntVec lambda_extract(const Int& m, unsigned d, Plugin f) {
  BoundFormula bf{"lambda_extract", {{"m", m}, {"d", Int(d)}}, {}};
  add_plugin(bf, "f", std::move(f));
  return eval_bound(bf).sequence;
}

IntVec lambda_s37(const Int& a, const Int& g, unsigned d, unsigned len, const Int& cvr,
                  Plugin f1, Plugin fvr) {
  BoundFormula bf{
      "lambda_s37",
      {{"A", a}, {"G", g}, {"d", Int(d)}, {"len", Int(len)}, {"Cvr", cvr}},
      {}};
  add_plugin(bf, "f1", std::move(f1));
  add_plugin(bf, "fvr", std::move(fvr));
  return eval_bound(bf).sequence;
}

Int b0(const Int& lambda, const Int& norm) {
  return eval_bound({"b0", {{"lambda", lambda}, {"norm", norm}}, {}}).value;
}

}  // namespace pnet::bounds
