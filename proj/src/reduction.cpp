#include "pnet/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "pnet/error.hpp"
#include "pnet/reach.hpp"
#include "pnet/structural.hpp"

namespace pnet {

namespace {

std::vector<std::string> tokens_of_line(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

IntVec unit(int dim, int i) {
  IntVec v(dim, 0);
  v[i] = 1;
  return v;
}

std::vector<int> support(const IntVec& v) {
  std::vector<int> s;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0) s.push_back(static_cast<int>(i));
  return s;
}

std::vector<std::string> names_or_default(const Net& net) {
  if (net.has_place_names()) return net.place_names();
  std::vector<std::string> names;
  for (int i = 0; i < net.dim(); ++i) names.push_back("p" + std::to_string(i + 1));
  return names;
}

void require_classes(const Net& net, bool one_conservative, bool pp,
                     const std::string& stage) {
  if (!is_ordinary(net))
    throw PreconditionError(stage + ": input net must be ordinary");
  if (!is_strongly_reversible(net))
    throw PreconditionError(stage + ": input net must be strongly reversible");
  if (one_conservative && !is_one_conservative(net))
    throw PreconditionError(stage + ": input net must be 1-conservative");
  if (pp && !is_pp_net(net))
    throw PreconditionError(stage + ": input actions must move 1 or 2 tokens");
}

}  // namespace

std::optional<int> SemigroupPresentation::letter_index(
    const std::string& name) const {
  for (size_t i = 0; i < letters.size(); ++i)
    if (letters[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

SemigroupPresentation parse_presentation(const std::string& text) {
  SemigroupPresentation p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool asked = false;

  auto lookup = [&](const std::string& tok) {
    auto idx = p.letter_index(tok);
    if (!idx)
      throw ParseError("line " + std::to_string(lineno) +
                       ": undeclared letter '" + tok + "'");
    return *idx;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of_line(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "letters") {
      for (size_t k = 1; k < toks.size(); ++k) {
        if (toks[k] == "=")
          throw ParseError("line " + std::to_string(lineno) +
                           ": '=' cannot be a letter");
        if (p.letter_index(toks[k]))
          throw ParseError("line " + std::to_string(lineno) +
                           ": duplicate letter '" + toks[k] + "'");
        p.letters.push_back(toks[k]);
      }
    } else if (kw == "eq") {
      auto sep = std::find(toks.begin() + 1, toks.end(), "=");
      if (sep == toks.end())
        throw ParseError("line " + std::to_string(lineno) +
                         ": eq <word> = <word>");
      if (std::find(sep + 1, toks.end(), "=") != toks.end())
        throw ParseError("line " + std::to_string(lineno) +
                         ": more than one '='");
      SemigroupPresentation::Equation e;
      for (auto it = toks.begin() + 1; it != sep; ++it)
        e.lhs.push_back(lookup(*it));
      for (auto it = sep + 1; it != toks.end(); ++it)
        e.rhs.push_back(lookup(*it));
      std::sort(e.lhs.begin(), e.lhs.end());
      std::sort(e.rhs.begin(), e.rhs.end());
      p.equations.push_back(std::move(e));
    } else if (kw == "ask") {
      if (toks.size() != 4 || toks[2] != "covers")
        throw ParseError("line " + std::to_string(lineno) +
                         ": ask <letter> covers <letter>");
      if (asked)
        throw ParseError("line " + std::to_string(lineno) +
                         ": duplicate ask line");
      p.u0 = lookup(toks[1]);
      p.v0 = lookup(toks[3]);
      asked = true;
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": unknown keyword '" + kw + "'");
    }
  }
  if (!asked) throw ParseError("missing ask line");
  return p;
}

std::string write_presentation(const SemigroupPresentation& p) {
  std::ostringstream os;
  os << "letters";
  for (const std::string& l : p.letters) os << " " << l;
  os << "\n";
  for (const auto& e : p.equations) {
    os << "eq";
    for (int l : e.lhs) os << " " << p.letters.at(l);
    os << " =";
    for (int l : e.rhs) os << " " << p.letters.at(l);
    os << "\n";
  }
  os << "ask " << p.letters.at(p.u0) << " covers " << p.letters.at(p.v0)
     << "\n";
  return os.str();
}

bool is_normalized(const SemigroupPresentation& p) {
  for (const auto& e : p.equations)
    for (const auto* side : {&e.lhs, &e.rhs}) {
      std::vector<int> s = *side;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    }
  return true;
}

SemigroupPresentation normalize_presentation(const SemigroupPresentation& p) {
  SemigroupPresentation out;
  out.letters = p.letters;
  out.u0 = p.u0;
  out.v0 = p.v0;

  std::set<std::string> used(out.letters.begin(), out.letters.end());
  std::map<std::string, int> counter;
  std::vector<SemigroupPresentation::Equation> aliases;

  auto alias_of = [&](int letter) {
    const std::string& base = p.letters.at(letter);
    int& n = counter[base];
    std::string name;
    do {
      name = base + ":" + std::to_string(++n);
    } while (used.count(name));
    used.insert(name);
    out.letters.push_back(name);
    int idx = static_cast<int>(out.letters.size()) - 1;
    aliases.push_back({{idx}, {letter}});
    return idx;
  };

  auto split = [&](const std::vector<int>& side) {
    std::map<int, int> mult;
    for (int l : side) ++mult[l];
    std::vector<int> ns;
    for (const auto& [l, m] : mult) {
      if (m == 1) {
        ns.push_back(l);
      } else {
        for (int t = 0; t < m; ++t) ns.push_back(alias_of(l));
      }
    }
    std::sort(ns.begin(), ns.end());
    return ns;
  };

  for (const auto& e : p.equations)
    out.equations.push_back({split(e.lhs), split(e.rhs)});
  for (auto& e : aliases) out.equations.push_back(std::move(e));
  return out;
}

CoverInstance semigroup_to_cover(const SemigroupPresentation& p) {
  int d = static_cast<int>(p.letters.size());
  if (d == 0) throw PreconditionError("presentation has no letters");
  if (p.u0 < 0 || p.u0 >= d || p.v0 < 0 || p.v0 >= d)
    throw PreconditionError("presentation has no ask pair");
  if (!is_normalized(p))
    throw PreconditionError(
        "a letter repeats on one equation side; normalize first");

  Net net(d, "cover");
  net.set_place_names(p.letters);
  auto chi = [&](const std::vector<int>& side) {
    IntVec v(d, 0);
    for (int l : side) v[l] = 1;
    return v;
  };
  for (size_t i = 0; i < p.equations.size(); ++i) {
    IntVec u = chi(p.equations[i].lhs), v = chi(p.equations[i].rhs);
    std::string name = "eq" + std::to_string(i + 1);
    net.add_action({name, u, v});
    if (u != v) net.add_action({name + "R", v, u});
  }
  return {std::move(net), p.u0, p.v0, std::nullopt};
}

CoverInstance cover_to_scover(const CoverInstance& inst) {
  const Net& in = inst.net;
  int d = in.dim();
  if (d == 0) throw PreconditionError("scover: input net has no places");
  if (inst.p_init < 0 || inst.p_init >= d || inst.p_cov < 0 ||
      inst.p_cov >= d)
    throw PreconditionError("scover: distinguished places out of range");
  require_classes(in, false, false, "scover");

  Net out(2 * d, "scover");
  std::vector<std::string> names = names_or_default(in);
  for (int i = 1; i <= d; ++i) names.push_back("store:" + std::to_string(i));
  out.set_place_names(std::move(names));

  for (const Action& a : in.actions()) {
    IntVec pre(2 * d, 0), post(2 * d, 0);
    for (int i = 0; i < d; ++i) {
      pre[i] = a.pre[i];
      post[i] = a.post[i];
    }
    Int k = norm_one(a.pre) - norm_one(a.post);
    if (k >= 0) {
      for (int t = 0; t < static_cast<int>(k); ++t) post[d + t] = 1;
    } else {
      for (int t = 0; t < static_cast<int>(-k); ++t) pre[d + t] = 1;
    }
    out.add_action({a.name, std::move(pre), std::move(post)});
  }

  // single tokens circulate freely around the store ring
  std::set<std::pair<int, int>> seen;
  auto shuttle = [&](const std::string& name, int i, int j) {
    if (seen.insert({i, j}).second)
      out.add_action({name, unit(2 * d, i), unit(2 * d, j)});
  };
  shuttle("wrap", d, 2 * d - 1);
  shuttle("wrapR", 2 * d - 1, d);
  for (int i = 1; i <= d - 1; ++i) {
    shuttle("shunt:" + std::to_string(i), d + i - 1, d + i);
    shuttle("shunt:" + std::to_string(i) + "R", d + i, d + i - 1);
  }

  if (!is_one_conservative(out) || !is_ordinary(out) ||
      !is_strongly_reversible(out))
    throw Error("scover: store balancing broke a class invariant");
  return {std::move(out), inst.p_init, inst.p_cov, d};
}

PpSimulation conservative_to_pp(const Net& in) {
  require_classes(in, true, false, "pp");
  int d = in.dim();
  int n = in.action_count();
  for (const Action& a : in.actions())
    if (norm_one(a.pre) == 0)
      throw PreconditionError("pp: action '" + a.name + "' moves no tokens");

  // match every action with its reverse, each used once; the first of a
  // pair lends its name to the simulation chain
  std::vector<bool> done(n, false);
  std::vector<int> fwd;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    const Action& a = in.action(i);
    int rev = -1;
    for (int j = i; j < n; ++j) {
      if (!done[j] && in.action(j).pre == a.post &&
          in.action(j).post == a.pre) {
        rev = j;
        break;
      }
    }
    if (rev < 0)
      throw PreconditionError("pp: action '" + a.name +
                              "' has no unpaired reverse");
    done[i] = done[rev] = true;
    fwd.push_back(i);
  }

  int total_ctrl = 0;
  for (int i : fwd)
    total_ctrl += std::max(0, static_cast<int>(norm_one(in.action(i).pre)) - 1);

  int dim = d + 1 + total_ctrl;
  int p_run = d;
  Net out(dim, in.name() + "-pp");
  std::vector<std::string> names = names_or_default(in);
  names.push_back("run");
  for (int i : fwd) {
    int k = static_cast<int>(norm_one(in.action(i).pre));
    for (int j = 1; j <= k - 1; ++j)
      names.push_back("ctrl:" + in.action(i).name + ":" + std::to_string(j));
  }
  out.set_place_names(std::move(names));

  int ctrl = d + 1;
  for (int fi : fwd) {
    const Action& f = in.action(fi);
    std::vector<int> from = support(f.pre), to = support(f.post);
    int k = static_cast<int>(from.size());
    std::vector<int> chain(k + 1, p_run);
    for (int j = 1; j <= k - 1; ++j) chain[j] = ctrl++;
    for (int j = 1; j <= k; ++j) {
      IntVec pre = vadd(unit(dim, from[j - 1]), unit(dim, chain[j - 1]));
      IntVec post = vadd(unit(dim, to[j - 1]), unit(dim, chain[j]));
      std::string name = f.name + ":" + std::to_string(j);
      out.add_action({name, pre, post});
      if (pre != post) out.add_action({name + "R", post, pre});
    }
  }

  if (!is_pp_net(out) || !is_ordinary(out) || !is_strongly_reversible(out))
    throw Error("pp: simulation broke a class invariant");
  return {std::move(out), p_run};
}

CoverInstance scover_to_ppscover(const CoverInstance& inst) {
  if (!inst.p_store)
    throw PreconditionError("ppscover: input instance has no store place");
  PpSimulation sim = conservative_to_pp(inst.net);
  int d1 = sim.net.dim();
  int store = *inst.p_store;

  Net out(d1 + 2, "ppscover");
  std::vector<std::string> names = sim.net.place_names();
  names.push_back("init'");
  names.push_back("cov'");
  out.set_place_names(std::move(names));

  for (const Action& a : sim.net.actions()) {
    IntVec pre = a.pre, post = a.post;
    pre.resize(d1 + 2, 0);
    post.resize(d1 + 2, 0);
    out.add_action({a.name, std::move(pre), std::move(post)});
  }
  int dim = d1 + 2, pinit2 = d1, pcov2 = d1 + 1;
  IntVec enter_pre = vadd(unit(dim, pinit2), unit(dim, store));
  IntVec enter_post = vadd(unit(dim, inst.p_init), unit(dim, sim.p_run));
  IntVec exit_pre = vadd(unit(dim, inst.p_cov), unit(dim, sim.p_run));
  IntVec exit_post = vadd(unit(dim, pcov2), unit(dim, store));
  out.add_action({"enter", enter_pre, enter_post});
  out.add_action({"enterR", enter_post, enter_pre});
  out.add_action({"exit", exit_pre, exit_post});
  out.add_action({"exitR", exit_post, exit_pre});

  if (!is_pp_net(out) || !is_ordinary(out) || !is_strongly_reversible(out))
    throw Error("ppscover: guard actions broke a class invariant");
  return {std::move(out), pinit2, pcov2, store};
}

SlInstance ppscover_to_sl(const CoverInstance& inst) {
  const Net& in = inst.net;
  int d = in.dim();
  if (!inst.p_store)
    throw PreconditionError("sl: input instance has no store place");
  int store = *inst.p_store;
  if (inst.p_init < 0 || inst.p_init >= d || inst.p_cov < 0 ||
      inst.p_cov >= d || store < 0 || store >= d)
    throw PreconditionError("sl: distinguished places out of range");
  if (inst.p_init == inst.p_cov || inst.p_init == store ||
      inst.p_cov == store)
    throw PreconditionError("sl: init, cov and store places must be distinct");
  require_classes(in, true, true, "sl");

  std::map<std::pair<IntVec, IntVec>, int> bodies;
  for (const Action& a : in.actions()) {
    ++bodies[{a.pre, a.post}];
    if (a.name.rfind("sl:", 0) == 0)
      throw PreconditionError("sl: input action name '" + a.name +
                              "' collides with the added actions");
  }
  for (const auto& [body, count] : bodies) {
    auto it = bodies.find({body.second, body.first});
    if (it == bodies.end() || it->second != count)
      throw PreconditionError("sl: action multiset is not closed under reversal");
  }

  int dim = d + 3, p_inc = d, p_dec = d + 1, p_decp = d + 2;
  Net out(dim, "sl");
  std::vector<std::string> names = names_or_default(in);
  names.push_back("inc");
  names.push_back("dec");
  names.push_back("dec'");
  out.set_place_names(names);

  // place tags for the added action names; indices when names repeat
  std::set<std::string> distinct(names.begin(), names.end());
  auto tag = [&](int p) {
    if (distinct.size() == names.size()) return names[p];
    return "p" + std::to_string(p + 1);
  };

  for (const Action& a : in.actions()) {
    IntVec pre = a.pre, post = a.post;
    pre.resize(dim, 0);
    post.resize(dim, 0);
    out.add_action({a.name, std::move(pre), std::move(post)});
  }

  out.add_action({"sl:cov", vadd(unit(dim, inst.p_cov), unit(dim, store)),
                  vadd(unit(dim, p_inc), unit(dim, p_dec))});
  for (int p = 0; p < d; ++p) {
    if (p == store) continue;
    out.add_action({"sl:inc:" + tag(p),
                    vadd(unit(dim, p_inc), unit(dim, store)),
                    vadd(unit(dim, p_inc), unit(dim, p))});
    out.add_action({"sl:dec:" + tag(p),
                    vadd(unit(dim, p_dec), unit(dim, p)),
                    vadd(unit(dim, p_dec), unit(dim, store))});
  }
  out.add_action({"sl:a1", unit(dim, p_inc), unit(dim, p_dec)});
  out.add_action({"sl:a2", unit(dim, p_dec), unit(dim, p_decp)});
  out.add_action({"sl:a2R", unit(dim, p_decp), unit(dim, p_dec)});
  out.add_action({"sl:a3", vadd(unit(dim, p_dec), unit(dim, p_decp)),
                  vadd(unit(dim, p_dec), unit(dim, store))});
  out.add_action({"sl:init", unit(dim, p_dec), unit(dim, inst.p_init)});
  out.add_action({"sl:initR", unit(dim, inst.p_init), unit(dim, p_dec)});

  SlInstance sl;
  sl.p_init = inst.p_init;
  sl.p_cov = inst.p_cov;
  sl.p_store = store;
  sl.p_inc = p_inc;
  sl.p_dec = p_dec;
  sl.p_decp = p_decp;

  auto idx = [&](const std::string& name) { return *out.action_index(name); };
  int a2 = idx("sl:a2"), a3 = idx("sl:a3");
  int inccov = idx("sl:inc:" + tag(inst.p_cov));
  sl.certificate = {idx("sl:cov"), idx("sl:a1"), a3, a2, a2, a3, inccov};
  if (!is_zero(displacement_of_sequence(out, sl.certificate)))
    throw Error("sl: certificate displacement is not zero");

  sl.reversibility.assign(out.action_count(), 1);
  sl.reversibility[a2] += 2;
  sl.reversibility[a3] += 1;
  sl.reversibility[inccov] += 1;
  IntVec total(dim, 0);
  for (int j = 0; j < out.action_count(); ++j) {
    IntVec disp = out.action(j).displacement();
    for (int i = 0; i < dim; ++i) total[i] += sl.reversibility[j] * disp[i];
  }
  if (!is_zero(total)) throw Error("sl: multiplicity vector is not balanced");

  if (!is_pp_net(out) || !is_ordinary(out))
    throw Error("sl: added actions broke a class invariant");
  if (is_strongly_reversible(out))
    throw Error("sl: output unexpectedly strongly reversible");

  sl.net = std::move(out);
  return sl;
}

IntVec SlInstance::initial_marking(const Int& store) const {
  if (store < 0) throw PreconditionError("negative store count");
  IntVec x(net.dim(), 0);
  x[p_init] = 1;
  x[p_store] = store;
  return x;
}

std::optional<Int> least_live_store(const SlInstance& inst, const Int& from,
                                    const Int& to, size_t node_budget) {
  for (Int s = std::max<Int>(from, 0); s <= to; ++s)
    if (is_live(inst.net, inst.initial_marking(s), node_budget)) return s;
  return std::nullopt;
}

NetFile instance_to_netfile(const CoverInstance& inst) {
  NetFile f;
  f.net = inst.net;
  int dim = inst.net.dim();
  f.markings.emplace_back("init", unit(dim, inst.p_init));
  f.markings.emplace_back("cov", unit(dim, inst.p_cov));
  if (inst.p_store) f.markings.emplace_back("store", unit(dim, *inst.p_store));
  return f;
}

CoverInstance instance_from_netfile(const NetFile& file) {
  auto place_of = [&](const std::string& name) -> std::optional<int> {
    for (const auto& [n, v] : file.markings) {
      if (n != name) continue;
      if (norm_one(v) != 1)
        throw ParseError("marking '" + name +
                         "' must put a single token on one place");
      return support(v).at(0);
    }
    return std::nullopt;
  };
  CoverInstance inst;
  inst.net = file.net;
  auto init = place_of("init"), cov = place_of("cov");
  if (!init || !cov)
    throw ParseError("instance file needs unit markings 'init' and 'cov'");
  inst.p_init = *init;
  inst.p_cov = *cov;
  inst.p_store = place_of("store");
  return inst;
}

}  // namespace pnet
