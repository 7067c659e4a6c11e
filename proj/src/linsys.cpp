#include "pnet/linsys.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>

#include "pnet/error.hpp"
#include "pnet/vec.hpp"

namespace pnet {

void Constraint::validate() const {
  if (kind == CKind::Mod) {
    if (modulus < 1) throw Error("divisibility atom with modulus < 1");
    for (const Int& a : coeffs)
      if (a < 0 || a >= modulus)
        throw Error("divisibility atom coefficient outside [0, modulus)");
    if (rhs < 0 || rhs >= modulus)
      throw Error("divisibility atom rhs outside [0, modulus)");
  }
}

Formula Formula::atom(Constraint c) {
  c.validate();
  Formula f;
  f.kind_ = Kind::Atom;
  f.atom_ = std::make_shared<const Constraint>(std::move(c));
  return f;
}

Formula Formula::negate(Formula f) {
  Formula g;
  g.kind_ = Kind::Not;
  g.children_.push_back(std::move(f));
  return g;
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return tru();
  if (fs.size() == 1) return std::move(fs[0]);
  Formula g;
  g.kind_ = Kind::And;
  g.children_ = std::move(fs);
  return g;
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return fls();
  if (fs.size() == 1) return std::move(fs[0]);
  Formula g;
  g.kind_ = Kind::Or;
  g.children_ = std::move(fs);
  return g;
}

namespace {

bool eval_atom(const Constraint& c, const IntVec& x) {
  Int v = dot(c.coeffs, x);
  switch (c.kind) {
    case CKind::Eq:
      return v == c.rhs;
    case CKind::Geq:
      return v >= c.rhs;
    case CKind::Mod:
      return floor_mod(v - c.rhs, c.modulus) == 0;
  }
  return false;
}

bool eval_rec(const Formula& f, const IntVec& x) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom:
      return eval_atom(f.constraint(), x);
    case Formula::Kind::Not:
      return !eval_rec(f.children()[0], x);
    case Formula::Kind::And:
      for (const Formula& g : f.children())
        if (!eval_rec(g, x)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& g : f.children())
        if (eval_rec(g, x)) return true;
      return false;
  }
  return false;
}

void check_dim(const Formula& f, int dim) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.constraint().coeffs.size() != static_cast<size_t>(dim))
        throw DimensionError("atom coefficient length != system dimension");
      break;
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const Formula& g : f.children()) check_dim(g, dim);
      break;
    default:
      break;
  }
}

}  // namespace

bool evaluate(const LinearSystem& s, const IntVec& x) {
  if (x.size() != static_cast<size_t>(s.dim))
    throw DimensionError("evaluate: point length != system dimension");
  check_dim(s.formula, s.dim);
  return eval_rec(s.formula, x);
}

namespace {

void norms_rec(const Formula& f, Int& norm, Int& mlcm) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Constraint& c = f.constraint();
      if (c.kind == CKind::Mod) {
        mlcm = boost::multiprecision::lcm(mlcm, c.modulus);
      } else {
        norm = std::max({norm, norm_inf(c.coeffs), abs(c.rhs)});
      }
      break;
    }
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const Formula& g : f.children()) norms_rec(g, norm, mlcm);
      break;
    default:
      break;
  }
}

}  // namespace

SystemNorms system_norms(const LinearSystem& s) {
  SystemNorms r{0, 1};
  norms_rec(s.formula, r.norm, r.mlcm);
  return r;
}

namespace {

Formula residue_rec(const Formula& f, const IntVec& b, const Int& l) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom: {
      const Constraint& c = f.constraint();
      Int base = dot(c.coeffs, b);
      switch (c.kind) {
        case CKind::Mod:
          return floor_mod(base - c.rhs, c.modulus) == 0 ? Formula::tru()
                                                         : Formula::fls();
        case CKind::Eq: {
          Int num = c.rhs - base;
          if (num % l != 0) return Formula::fls();
          IntVec cf(c.coeffs.size());
          for (size_t i = 0; i < cf.size(); ++i) cf[i] = c.coeffs[i];
          return Formula::atom({CKind::Eq, std::move(cf), num / l, 0});
        }
        case CKind::Geq: {
          IntVec cf(c.coeffs.size());
          for (size_t i = 0; i < cf.size(); ++i) cf[i] = c.coeffs[i];
          return Formula::atom({CKind::Geq, std::move(cf), ceil_div(c.rhs - base, l), 0});
        }
      }
      return Formula::fls();
    }
    case Formula::Kind::Not:
      return Formula::negate(residue_rec(f.children()[0], b, l));
    case Formula::Kind::And: {
      std::vector<Formula> out;
      for (const Formula& g : f.children()) out.push_back(residue_rec(g, b, l));
      return Formula::conj(std::move(out));
    }
    case Formula::Kind::Or: {
      std::vector<Formula> out;
      for (const Formula& g : f.children()) out.push_back(residue_rec(g, b, l));
      return Formula::disj(std::move(out));
    }
  }
  return Formula::fls();
}

}  // namespace

LinearSystem residue_reduce(const LinearSystem& s, const IntVec& b) {
  if (b.size() != static_cast<size_t>(s.dim))
    throw DimensionError("residue_reduce: residue length != dimension");
  Int l = system_norms(s).mlcm;
  for (const Int& v : b)
    if (v < 0 || v >= l)
      throw PreconditionError("residue_reduce: residue entry outside [0, mlcm)");
  return {s.dim, residue_rec(s.formula, b, l)};
}

namespace {

void sexpr_rec(const Formula& f, std::ostream& os) {
  switch (f.kind()) {
    case Formula::Kind::True:
      os << "true";
      return;
    case Formula::Kind::False:
      os << "false";
      return;
    case Formula::Kind::Atom: {
      const Constraint& c = f.constraint();
      os << "(" << (c.kind == CKind::Eq ? "eq" : c.kind == CKind::Geq ? "geq" : "mod");
      os << " (";
      for (size_t i = 0; i < c.coeffs.size(); ++i) {
        if (i) os << " ";
        os << c.coeffs[i];
      }
      os << ") " << c.rhs;
      if (c.kind == CKind::Mod) os << " " << c.modulus;
      os << ")";
      return;
    }
    case Formula::Kind::Not:
      os << "(not ";
      sexpr_rec(f.children()[0], os);
      os << ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      os << (f.kind() == Formula::Kind::And ? "(and" : "(or");
      for (const Formula& g : f.children()) {
        os << " ";
        sexpr_rec(g, os);
      }
      os << ")";
      return;
    }
  }
}

struct SexprParser {
  const std::string& text;
  size_t pos = 0;
  std::optional<int> dim;

  explicit SexprParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size()) {
      if (isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("s-expression, offset " + std::to_string(pos) + ": " + msg);
  }

  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) fail("expected token");
    return text.substr(start, pos - start);
  }

  Int integer() {
    std::string w = word();
    size_t i = (w[0] == '-' || w[0] == '+') ? 1 : 0;
    if (i == w.size()) fail("expected integer, got '" + w + "'");
    for (; i < w.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(w[i])))
        fail("expected integer, got '" + w + "'");
    return Int(w);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  IntVec vec() {
    expect('(');
    IntVec v;
    while (!peek(')')) v.push_back(integer());
    expect(')');
    if (dim && static_cast<size_t>(*dim) != v.size())
      fail("atoms disagree on dimension");
    dim = static_cast<int>(v.size());
    return v;
  }

  Formula formula() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] != '(') {
      std::string w = word();
      if (w == "true") return Formula::tru();
      if (w == "false") return Formula::fls();
      fail("expected formula, got '" + w + "'");
    }
    expect('(');
    std::string head = word();
    if (head == "eq" || head == "geq") {
      Constraint c;
      c.kind = head == "eq" ? CKind::Eq : CKind::Geq;
      c.coeffs = vec();
      c.rhs = integer();
      expect(')');
      return Formula::atom(std::move(c));
    }
    if (head == "mod") {
      Constraint c;
      c.kind = CKind::Mod;
      c.coeffs = vec();
      c.rhs = integer();
      c.modulus = integer();
      expect(')');
      try {
        return Formula::atom(std::move(c));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (head == "not") {
      Formula f = formula();
      expect(')');
      return Formula::negate(std::move(f));
    }
    if (head == "and" || head == "or") {
      std::vector<Formula> fs;
      while (!peek(')')) fs.push_back(formula());
      expect(')');
      return head == "and" ? Formula::conj(std::move(fs)) : Formula::disj(std::move(fs));
    }
    fail("unknown operator '" + head + "'");
  }
};

}  // namespace

std::string to_sexpr(const LinearSystem& s) {
  std::ostringstream os;
  sexpr_rec(s.formula, os);
  return os.str();
}

LinearSystem parse_sexpr(const std::string& text) {
  SexprParser p(text);
  Formula f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return {p.dim.value_or(0), std::move(f)};
}

}  // namespace pnet
