#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnet/ints.hpp"

namespace pnet {

enum class CKind { Eq, Geq, Mod };

// <coeffs, x> = rhs | <coeffs, x> >= rhs | <coeffs, x> == rhs (mod modulus).
// Divisibility atoms keep coeffs and rhs reduced into [0, modulus).
struct Constraint {
  CKind kind = CKind::Eq;
  IntVec coeffs;
  Int rhs = 0;
  Int modulus = 0;  // >= 1 for Mod, unused otherwise

  void validate() const;
};

class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  Formula() : kind_(Kind::True) {}

  static Formula tru() { return Formula(); }
  static Formula fls() {
    Formula f;
    f.kind_ = Kind::False;
    return f;
  }
  static Formula atom(Constraint c);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);

  Kind kind() const { return kind_; }
  const Constraint& constraint() const { return *atom_; }
  const std::vector<Formula>& children() const { return children_; }

 private:
  Kind kind_;
  std::shared_ptr<const Constraint> atom_;
  std::vector<Formula> children_;
};

struct LinearSystem {
  int dim = 0;
  Formula formula = Formula::tru();
};

bool evaluate(const LinearSystem& s, const IntVec& x);

// (largest |coefficient| or |rhs| over eq/geq atoms, lcm of moduli or 1)
struct SystemNorms {
  Int norm;
  Int mlcm;
};
SystemNorms system_norms(const LinearSystem& s);

// solution-set image under x = b + l*y, l = mlcm(s), b in [0,l)^d:
// divisibility atoms become constants, eq/geq atoms rewrite over y
LinearSystem residue_reduce(const LinearSystem& s, const IntVec& b);

std::string to_sexpr(const LinearSystem& s);
LinearSystem parse_sexpr(const std::string& text);

struct SolveOptions {
  Int residue_budget = 10'000'000;   // refuse when l^d exceeds this
  size_t dnf_budget = 65536;         // disjunct count cap
  size_t scan_point_budget = 4'000'000;
  size_t frontier_budget = 1'000'000;
};

// least |x|_1 solution over Z^d (ties broken lexicographically);
// nullopt when unsatisfiable
std::optional<IntVec> solve_min(const LinearSystem& s, const SolveOptions& opts = {});

struct MinNormReport {
  bool satisfiable = false;
  std::optional<IntVec> witness;
  Int min_norm = 0;
  Int bound = 0;
  bool within_bound = true;  // vacuously true when unsatisfiable
};
MinNormReport check_min_norm_bound(const LinearSystem& s, const SolveOptions& opts = {});

// conjunctions of geq atoms, one vector per disjunct; requires a
// divisibility-free formula (eq atoms are split into two geq atoms)
std::vector<std::vector<Constraint>> to_dnf_geq(const LinearSystem& s,
                                                size_t dnf_budget = 65536);

}  // namespace pnet
