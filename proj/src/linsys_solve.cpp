#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pnet/bounds.hpp"
#include "pnet/error.hpp"
#include "pnet/hilbert.hpp"
#include "pnet/linsys.hpp"
#include "pnet/vec.hpp"

namespace pnet {

std::vector<std::vector<Constraint>> to_dnf_geq(const LinearSystem& s, size_t dnf_budget) {
  using Disjuncts = std::vector<std::vector<Constraint>>;

  auto geq = [](IntVec a, Int c) { return Constraint{CKind::Geq, std::move(a), std::move(c), 0}; };

  std::function<Disjuncts(const Formula&, bool)> rec = [&](const Formula& f,
                                                           bool neg) -> Disjuncts {
    switch (f.kind()) {
      case Formula::Kind::True:
        return neg ? Disjuncts{} : Disjuncts{{}};
      case Formula::Kind::False:
        return neg ? Disjuncts{{}} : Disjuncts{};
      case Formula::Kind::Not:
        return rec(f.children()[0], !neg);
      case Formula::Kind::Atom: {
        const Constraint& c = f.constraint();
        if (c.kind == CKind::Mod)
          throw PreconditionError("to_dnf_geq: divisibility constraint present");
        if (c.kind == CKind::Geq) {
          if (!neg) return {{c}};
          return {{geq(vneg(c.coeffs), -c.rhs + 1)}};
        }
        // equality
        if (!neg) return {{geq(c.coeffs, c.rhs), geq(vneg(c.coeffs), -c.rhs)}};
        return {{geq(c.coeffs, c.rhs + 1)}, {geq(vneg(c.coeffs), -c.rhs + 1)}};
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        bool conjunctive = (f.kind() == Formula::Kind::And) != neg;
        Disjuncts acc;
        if (conjunctive) {
          acc = {{}};
          for (const Formula& child : f.children()) {
            Disjuncts cd = rec(child, neg);
            Disjuncts next;
            if (acc.size() * cd.size() > dnf_budget)
              throw BudgetError("to_dnf_geq: disjunct count exceeds budget " +
                                std::to_string(dnf_budget));
            for (const auto& a : acc) {
              for (const auto& b : cd) {
                std::vector<Constraint> merged = a;
                merged.insert(merged.end(), b.begin(), b.end());
                next.push_back(std::move(merged));
              }
            }
            acc = std::move(next);
          }
        } else {
          for (const Formula& child : f.children()) {
            Disjuncts cd = rec(child, neg);
            if (acc.size() + cd.size() > dnf_budget)
              throw BudgetError("to_dnf_geq: disjunct count exceeds budget " +
                                std::to_string(dnf_budget));
            for (auto& d : cd) acc.push_back(std::move(d));
          }
        }
        return acc;
      }
    }
    throw Error("to_dnf_geq: unreachable");
  };
  return rec(s.formula, false);
}

namespace {

struct CompiledAtom {
  CKind kind;
  std::vector<int64_t> coeffs;
  int64_t rhs = 0;
  int64_t modulus = 0;
};

// int64 images of all atoms plus the largest ring radius they stay exact for
struct Compiled {
  std::unordered_map<const Constraint*, int> index;
  std::vector<CompiledAtom> atoms;
  Int ring_limit;  // rings k <= ring_limit evaluate without overflow

  explicit Compiled(const LinearSystem& s) {
    ring_limit = Int(1) << 61;
    collect(s.formula);
  }

  void collect(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        const Constraint* c = &f.constraint();
        if (index.count(c)) return;
        CompiledAtom a;
        a.kind = c->kind;
        Int row1 = 0;
        bool fits = true;
        for (const Int& v : c->coeffs) {
          row1 += abs(v);
          if (!fits_i64(v)) fits = false;
        }
        if (!fits || !fits_i64(c->rhs) || !fits_i64(c->modulus) || !fits_i64(row1)) {
          ring_limit = -1;
          return;
        }
        for (const Int& v : c->coeffs) a.coeffs.push_back(to_i64(v));
        a.rhs = to_i64(c->rhs);
        a.modulus = to_i64(c->modulus);
        // |<alpha,x>| <= row1 * k on the ring |x|_1 = k
        if (row1 > 0) ring_limit = std::min(ring_limit, ((Int(1) << 61) - abs(c->rhs)) / row1);
        index.emplace(c, static_cast<int>(atoms.size()));
        atoms.push_back(std::move(a));
        return;
      }
      case Formula::Kind::Not:
      case Formula::Kind::And:
      case Formula::Kind::Or:
        for (const Formula& child : f.children()) collect(child);
        return;
      default:
        return;
    }
  }
};

bool eval_i64(const Formula& f, const Compiled& comp, const std::vector<int64_t>& x) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Not:
      return !eval_i64(f.children()[0], comp, x);
    case Formula::Kind::And:
      for (const Formula& c : f.children())
        if (!eval_i64(c, comp, x)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& c : f.children())
        if (eval_i64(c, comp, x)) return true;
      return false;
    case Formula::Kind::Atom: {
      const CompiledAtom& a = comp.atoms[comp.index.at(&f.constraint())];
      int64_t v = 0;
      for (size_t i = 0; i < x.size(); ++i) v += a.coeffs[i] * x[i];
      switch (a.kind) {
        case CKind::Eq:
          return v == a.rhs;
        case CKind::Geq:
          return v >= a.rhs;
        case CKind::Mod:
          return ((v - a.rhs) % a.modulus + a.modulus) % a.modulus == 0;
      }
    }
  }
  throw Error("eval_i64: unreachable");
}

struct ScanExhausted {};

// lexicographic walk of the ring |x|_1 = rem over coordinates i..d-1;
// the first satisfying point of a ring is its canonical representative
template <class T, class Eval>
bool scan_ring(std::vector<T>& x, size_t i, int64_t rem, size_t& budget, const Eval& eval,
               std::vector<T>& hit) {
  if (i + 1 == x.size()) {
    for (int64_t v : {-rem, rem}) {
      x[i] = T(v);
      if (budget == 0) throw ScanExhausted{};
      --budget;
      if (eval(x)) {
        hit = x;
        return true;
      }
      if (rem == 0) break;
    }
    return false;
  }
  for (int64_t v = -rem; v <= rem; ++v) {
    x[i] = T(v);
    if (scan_ring(x, i + 1, rem - (v < 0 ? -v : v), budget, eval, hit)) return true;
  }
  return false;
}

// complete over the scanned rings: a hit is the global (|x|_1, lex) minimum
std::optional<IntVec> scan_phase(const LinearSystem& s, size_t budget) {
  const size_t d = static_cast<size_t>(s.dim);
  Compiled comp(s);
  try {
    for (int64_t k = 0;; ++k) {
      if (Int(k) <= comp.ring_limit) {
        std::vector<int64_t> x(d, 0), hit;
        auto eval = [&](const std::vector<int64_t>& p) { return eval_i64(s.formula, comp, p); };
        if (scan_ring(x, 0, k, budget, eval, hit)) {
          IntVec out(d);
          for (size_t i = 0; i < d; ++i) out[i] = hit[i];
          return out;
        }
      } else {
        IntVec x(d, Int(0)), hit;
        auto eval = [&](const IntVec& p) { return evaluate(s, p); };
        if (scan_ring(x, 0, k, budget, eval, hit)) return hit;
      }
    }
  } catch (const ScanExhausted&) {
    return std::nullopt;
  }
}

struct Candidate {
  Int norm;
  IntVec x;
};

void consider(std::optional<Candidate>& best, Candidate c) {
  if (!best || c.norm < best->norm || (c.norm == best->norm && lex_less(c.x, best->x)))
    best = std::move(c);
}

// exact: residue classes x = b + l*y, orthant split, then componentwise-minimal
// nonnegative solutions of the resulting inequality systems
std::optional<IntVec> complete_phase(const LinearSystem& s, const SolveOptions& opts) {
  const int d = s.dim;
  SystemNorms n = system_norms(s);
  const Int l = n.mlcm;
  if (int_pow(l, static_cast<unsigned long>(d)) > opts.residue_budget)
    throw BudgetError("solve_min: residue space " + l.str() + "^" + std::to_string(d) +
                      " exceeds budget " + opts.residue_budget.str());
  if (d > 24)
    throw BudgetError("solve_min: orthant split 2^" + std::to_string(d) + " exceeds budget");

  HilbertOptions hopts;
  hopts.frontier_budget = opts.frontier_budget;
  std::optional<Candidate> best;

  IntVec b(d, Int(0));
  while (true) {
    LinearSystem sb = residue_reduce(s, b);
    for (const std::vector<Constraint>& disjunct : to_dnf_geq(sb, opts.dnf_budget)) {
      for (uint32_t mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> sv(d);
        IntVec r(d), t(d);
        for (int i = 0; i < d; ++i) {
          sv[i] = (mask >> i & 1) ? -1 : 1;
          r[i] = floor_mod(Int(sv[i]) * b[i], l);
          t[i] = (Int(sv[i]) * r[i] - b[i]) / l;
        }
        Matrix M;
        M.rows = static_cast<int>(disjunct.size());
        M.cols = d;
        IntVec rhs;
        for (const Constraint& c : disjunct) {
          IntVec row(d);
          for (int i = 0; i < d; ++i) row[i] = c.coeffs[i] * sv[i];
          rhs.push_back(c.rhs - dot(c.coeffs, t));
          M.a.push_back(std::move(row));
        }
        for (const IntVec& u : min_solutions_geq(M, rhs, hopts)) {
          IntVec x(d);
          Int norm = 0;
          for (int i = 0; i < d; ++i) {
            Int z = r[i] + l * u[i];
            norm += z;
            x[i] = Int(sv[i]) * z;
          }
          consider(best, {std::move(norm), std::move(x)});
        }
      }
    }
    int i = 0;
    while (i < d && b[i] == l - 1) b[i++] = 0;
    if (i == d) break;
    ++b[i];
  }
  if (!best) return std::nullopt;
  return best->x;
}

}  // namespace

std::optional<IntVec> solve_min(const LinearSystem& s, const SolveOptions& opts) {
  if (s.dim == 0) {
    if (evaluate(s, IntVec{})) return IntVec{};
    return std::nullopt;
  }
  // cheap pass over small rings first; a hit there is already canonical
  size_t fast_budget = std::min<size_t>(opts.scan_point_budget, 200'000);
  if (auto hit = scan_phase(s, fast_budget)) return hit;
  try {
    return complete_phase(s, opts);
  } catch (const BudgetError&) {
    if (opts.scan_point_budget > fast_budget)
      if (auto hit = scan_phase(s, opts.scan_point_budget)) return hit;
    throw;
  }
}

MinNormReport check_min_norm_bound(const LinearSystem& s, const SolveOptions& opts) {
  MinNormReport r;
  SystemNorms n = system_norms(s);
  r.bound = bounds::theorem2(static_cast<unsigned>(s.dim), n.norm, n.mlcm);
  std::optional<IntVec> x = solve_min(s, opts);
  if (!x) {
    r.satisfiable = false;
    r.within_bound = true;  // vacuous
    return r;
  }
  r.satisfiable = true;
  r.min_norm = norm_one(*x);
  r.witness = std::move(x);
  r.within_bound = r.min_norm <= r.bound;
  return r;
}

}  // namespace pnet
