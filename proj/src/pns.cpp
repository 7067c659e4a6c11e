#include "pnet/pns.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "json.hpp"
#include "pnet/error.hpp"
#include "pnet/lattice.hpp"
#include "pnet/structural.hpp"
#include "pnet/vec.hpp"

namespace pnet {

namespace {

using Edge = std::array<int, 3>;

std::vector<std::vector<int>> out_adjacency(int nstates, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> out(nstates);
  for (size_t e = 0; e < edges.size(); ++e) out[edges[e][0]].push_back(static_cast<int>(e));
  return out;
}

bool strongly_connected(int nstates, const std::vector<Edge>& edges) {
  if (nstates <= 1) return true;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::vector<int>> adj(nstates);
    for (const Edge& e : edges) {
      if (dir == 0)
        adj[e[0]].push_back(e[2]);
      else
        adj[e[2]].push_back(e[0]);
    }
    std::vector<char> seen(nstates, 0);
    std::vector<int> todo{0};
    seen[0] = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int w : adj[v])
        if (!seen[w]) seen[w] = 1, todo.push_back(w);
    }
    for (char s : seen)
      if (!s) return false;
  }
  return true;
}

void verify_certificate(const Net& base, const std::vector<IntVec>& states,
                        const std::vector<Edge>& edges, const std::vector<int>& cert) {
  if (edges.empty()) {
    if (!cert.empty()) throw Error("pns: nonempty walk over an empty edge set");
    if (states.size() > 1) throw Error("pns: control graph is not strongly connected");
    return;
  }
  if (cert.empty()) throw Error("pns: covering walk missing");
  std::vector<char> sseen(states.size(), 0), eseen(edges.size(), 0);
  IntVec disp(base.dim(), 0);
  for (size_t k = 0; k < cert.size(); ++k) {
    int e = cert[k];
    if (e < 0 || e >= static_cast<int>(edges.size()))
      throw Error("pns: walk edge index out of range");
    int nxt = cert[(k + 1) % cert.size()];
    if (edges[e][2] != edges[nxt][0]) throw Error("pns: walk is not a closed path");
    eseen[e] = 1;
    sseen[edges[e][0]] = 1;
    sseen[edges[e][2]] = 1;
    disp = vadd(disp, base.action(edges[e][1]).displacement());
  }
  for (char s : sseen)
    if (!s) throw Error("pns: walk misses a state");
  for (char s : eseen)
    if (!s) throw Error("pns: walk misses an edge");
  if (!is_zero(disp)) throw Error("pns: walk displacement is not zero");
}

// A closed walk covering all states and edges with zero displacement exists
// iff the edges carry a strictly positive circulation whose weighted
// displacements cancel; solve for one and lay it out as an Euler circuit.
std::vector<int> covering_walk(const Net& base, const std::vector<IntVec>& states,
                               const std::vector<Edge>& edges, const HilbertOptions& opts) {
  int ns = static_cast<int>(states.size());
  int ne = static_cast<int>(edges.size());
  if (ne == 0) {
    if (ns > 1) throw Error("pns: control graph is not strongly connected");
    return {};
  }
  if (!strongly_connected(ns, edges))
    throw Error("pns: control graph is not strongly connected");

  std::vector<IntVec> deltas;
  deltas.reserve(ne);
  for (const Edge& e : edges) deltas.push_back(base.action(e[1]).displacement());

  std::vector<IntVec> rows;
  for (int s = 0; s < ns; ++s) {
    IntVec r(ne, 0);
    for (int e = 0; e < ne; ++e) {
      if (edges[e][2] == s) r[e] += 1;
      if (edges[e][0] == s) r[e] -= 1;
    }
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < base.dim(); ++i) {
    IntVec r(ne);
    for (int e = 0; e < ne; ++e) r[e] = deltas[e][i];
    rows.push_back(std::move(r));
  }

  IntVec c;
  for (const IntVec& r : rows) {
    Int s = 0;
    for (const Int& v : r) s += v;
    c.push_back(-s);
  }

  IntVec mult(ne, 1);  // circulation = 1 + minimal correction
  if (!is_zero(c)) {
    auto sols = min_solutions_eq(Matrix::from_rows(std::move(rows)), c, opts);
    if (sols.empty()) throw Error("pns: no zero-displacement covering cycle exists");
    for (int e = 0; e < ne; ++e) mult[e] += sols[0][e];
  }

  Int total = 0;
  for (const Int& v : mult) total += v;
  if (total > 1'000'000) throw BudgetError("pns: covering walk exceeds 1000000 steps");

  auto out = out_adjacency(ns, edges);
  std::vector<long long> rem(ne);
  for (int e = 0; e < ne; ++e) rem[e] = to_i64(mult[e]);
  std::vector<size_t> ptr(ns, 0);
  std::vector<std::pair<int, int>> stack{{0, -1}};
  std::vector<int> circuit;
  while (!stack.empty()) {
    auto [v, ein] = stack.back();
    size_t& p = ptr[v];
    while (p < out[v].size() && rem[out[v][p]] == 0) ++p;
    if (p < out[v].size()) {
      int e = out[v][p];
      --rem[e];
      stack.emplace_back(edges[e][2], e);
    } else {
      if (ein >= 0) circuit.push_back(ein);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (Int(circuit.size()) != total) throw Error("pns: covering walk construction failed");
  verify_certificate(base, states, edges, circuit);
  return circuit;
}

std::vector<int> checked_dims(const std::vector<int>& dims, int d, const char* who) {
  std::vector<int> out = dims;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != dims.size()) throw PreconditionError(std::string(who) + ": duplicate index");
  for (int i : out)
    if (i < 0 || i >= d) throw PreconditionError(std::string(who) + ": index out of range");
  return out;
}

void check_bottom_scc(const Net& net, const std::vector<IntVec>& X) {
  if (X.empty()) throw PreconditionError("build_pns: empty marking set");
  for (const IntVec& x : X) {
    if (x.size() != static_cast<size_t>(net.dim()))
      throw DimensionError("build_pns: marking length != places");
    if (!is_nonneg(x)) throw PreconditionError("build_pns: negative marking entry");
  }
  auto find = [&](const IntVec& v) {
    auto it = std::lower_bound(X.begin(), X.end(), v, lex_less);
    return (it != X.end() && *it == v) ? static_cast<int>(it - X.begin()) : -1;
  };
  std::vector<Edge> edges;
  for (size_t i = 0; i < X.size(); ++i) {
    for (int a = 0; a < net.action_count(); ++a) {
      auto succ = step(net, X[i], a);
      if (!succ) continue;
      int j = find(*succ);
      if (j < 0)
        throw PreconditionError("build_pns: marking set is not closed under firing");
      edges.push_back({static_cast<int>(i), a, j});
    }
  }
  if (!strongly_connected(static_cast<int>(X.size()), edges))
    throw PreconditionError("build_pns: marking set is not strongly connected");
}

Lattice cycle_lattice(const Net& cycle_net) {
  Lattice lat;
  lat.dim = cycle_net.dim();
  for (const Action& a : cycle_net.actions()) lat.generators.push_back(a.displacement());
  return lat;
}

// level sequence with the boundary stipulations: index 0 is 0, indices past
// the end repeat the last level
Int level_at(const IntVec& levels, size_t k) {
  if (k == 0) return 0;
  if (k <= levels.size()) return levels[k - 1];
  return levels.empty() ? Int(0) : levels.back();
}

void check_levels(const IntVec& levels) {
  for (size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0) throw PreconditionError("levels must be nonnegative");
    if (i > 0 && levels[i] < levels[i - 1])
      throw PreconditionError("levels must be nondecreasing");
  }
}

Formula remap_formula(const Formula& f, int new_dim, const std::vector<int>& where) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return Formula::tru();
    case K::False:
      return Formula::fls();
    case K::Atom: {
      const Constraint& c = f.constraint();
      Constraint out;
      out.kind = c.kind;
      out.rhs = c.rhs;
      out.modulus = c.modulus;
      out.coeffs.assign(new_dim, 0);
      for (size_t i = 0; i < c.coeffs.size(); ++i) out.coeffs[where[i]] = c.coeffs[i];
      return Formula::atom(std::move(out));
    }
    case K::Not:
      return Formula::negate(remap_formula(f.children()[0], new_dim, where));
    case K::And:
    case K::Or: {
      std::vector<Formula> ch;
      ch.reserve(f.children().size());
      for (const Formula& g : f.children()) ch.push_back(remap_formula(g, new_dim, where));
      return f.kind() == K::And ? Formula::conj(std::move(ch)) : Formula::disj(std::move(ch));
    }
  }
  throw Error("remap_formula: bad kind");
}

nlohmann::json int_json(const Int& v) {
  if (fits_i64(v)) return nlohmann::json(to_i64(v));
  return nlohmann::json(v.str());
}

Int json_int(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(std::string("pns json: expected integer for ") + what);
}

}  // namespace

int Pns::state_index(const IntVec& q) const {
  auto it = std::lower_bound(states.begin(), states.end(), q, lex_less);
  if (it != states.end() && *it == q) return static_cast<int>(it - states.begin());
  return -1;
}

Pns build_pns(const Net& net, const std::vector<IntVec>& X0,
              const std::vector<int>& state_dims, const HilbertOptions& opts) {
  std::vector<IntVec> X = X0;
  sort_canonical(X);
  check_bottom_scc(net, X);

  Pns g;
  g.base = net;
  g.state_dims = checked_dims(state_dims, net.dim(), "build_pns");
  g.counter_dims = complement(g.state_dims, net.dim());

  for (const IntVec& x : X) g.states.push_back(project(x, g.state_dims));
  sort_canonical(g.states);

  Net restricted = restrict_net(net, g.state_dims);
  for (size_t p = 0; p < g.states.size(); ++p) {
    for (int a = 0; a < net.action_count(); ++a) {
      auto succ = step(restricted, g.states[p], a);
      if (!succ) continue;
      int q = g.state_index(*succ);
      if (q >= 0) g.edges.push_back({static_cast<int>(p), a, q});
    }
  }
  g.certificate = covering_walk(net, g.states, g.edges, opts);

  g.norm = net_norm(net);
  for (const IntVec& q : g.states) g.norm = std::max(g.norm, norm_inf(q));
  return g;
}

bool is_proper(const Pns& g) {
  Net restricted = restrict_net(g.base, g.state_dims);
  std::vector<IntVec> Q = g.states;
  sort_canonical(Q);
  auto find = [&](const IntVec& v) {
    auto it = std::lower_bound(Q.begin(), Q.end(), v, lex_less);
    return (it != Q.end() && *it == v) ? static_cast<int>(it - Q.begin()) : -1;
  };
  std::vector<Edge> edges;
  for (size_t p = 0; p < Q.size(); ++p) {
    if (Q[p].size() != g.state_dims.size()) return false;
    for (int a = 0; a < restricted.action_count(); ++a) {
      auto succ = step(restricted, Q[p], a);
      if (!succ) continue;
      int q = find(*succ);
      if (q < 0) return false;  // a step escapes the state set
      edges.push_back({static_cast<int>(p), a, q});
    }
  }
  return strongly_connected(static_cast<int>(Q.size()), edges);
}

Pns restrict_pns(const Pns& g, const std::vector<int>& keep) {
  std::vector<int> kept = checked_dims(keep, g.base.dim(), "restrict_pns");
  for (int i : kept)
    if (!std::binary_search(g.counter_dims.begin(), g.counter_dims.end(), i))
      throw PreconditionError("restrict_pns: index is not a counter");

  std::vector<int> dims = g.state_dims;
  dims.insert(dims.end(), kept.begin(), kept.end());
  std::sort(dims.begin(), dims.end());

  auto position = [&](int i) {
    return static_cast<int>(std::lower_bound(dims.begin(), dims.end(), i) - dims.begin());
  };
  Pns out;
  out.base = restrict_net(g.base, dims);
  for (int i : g.state_dims) out.state_dims.push_back(position(i));
  for (int i : kept) out.counter_dims.push_back(position(i));
  out.states = g.states;
  out.edges = g.edges;
  out.certificate = g.certificate;
  verify_certificate(out.base, out.states, out.edges, out.certificate);
  out.norm = net_norm(out.base);
  for (const IntVec& q : out.states) out.norm = std::max(out.norm, norm_inf(q));
  return out;
}

Net simple_cycle_net(const Pns& g, size_t cycle_budget) {
  int ns = static_cast<int>(g.states.size());
  auto out = out_adjacency(ns, g.edges);
  std::vector<IntVec> deltas;
  for (const Edge& e : g.edges)
    deltas.push_back(project(g.base.action(e[1]).displacement(), g.counter_dims));

  // one pass per anchor state: enumerate the simple cycles whose least state
  // is the anchor, so every cycle is seen exactly once up to rotation
  std::set<IntVec> displacements;
  size_t steps = 0;
  IntVec acc(g.counter_dims.size(), 0);
  std::vector<char> on_path(ns, 0);
  for (int anchor = 0; anchor < ns; ++anchor) {
    std::vector<std::pair<int, size_t>> frames{{anchor, 0}};
    while (!frames.empty()) {
      auto& [u, k] = frames.back();
      if (k >= out[u].size()) {
        if (frames.size() > 1) {
          int e = out[frames[frames.size() - 2].first][frames[frames.size() - 2].second - 1];
          acc = vsub(acc, deltas[e]);
          on_path[u] = 0;
        }
        frames.pop_back();
        continue;
      }
      int e = out[u][k++];
      if (++steps > cycle_budget)
        throw BudgetError("simple cycle enumeration budget exceeded");
      int v = g.edges[e][2];
      if (v < anchor) continue;
      if (v == anchor) {
        displacements.insert(vadd(acc, deltas[e]));
        if (displacements.size() > cycle_budget)
          throw BudgetError("simple cycle enumeration budget exceeded");
      } else if (!on_path[v]) {
        on_path[v] = 1;
        acc = vadd(acc, deltas[e]);
        frames.emplace_back(v, 0);
      }
    }
  }

  Net asc(static_cast<int>(g.counter_dims.size()), g.base.name() + "_sc");
  int k = 0;
  for (const IntVec& z : displacements) {
    IntVec pre(z.size()), post(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
      pre[i] = z[i] < 0 ? -z[i] : Int(0);
      post[i] = z[i] > 0 ? z[i] : Int(0);
    }
    asc.add_action({"c" + std::to_string(++k), std::move(pre), std::move(post)});
  }
  if (net_norm(asc) > net_norm(g.base) * ns)
    throw Error("pns: simple-cycle net norm exceeds the |Q| * base-norm bound");
  return asc;
}

bool pns_virtual_reach(const Pns& g, const Net& cycle_net, const PnsConf& from,
                       const PnsConf& to) {
  int ns = static_cast<int>(g.states.size());
  if (from.state < 0 || from.state >= ns || to.state < 0 || to.state >= ns)
    throw PreconditionError("pns_virtual_reach: state index out of range");
  if (from.counters.size() != g.counter_dims.size() ||
      to.counters.size() != g.counter_dims.size())
    throw DimensionError("pns_virtual_reach: counter length mismatch");

  IntVec path_disp(g.counter_dims.size(), 0);
  if (from.state != to.state) {
    auto out = out_adjacency(ns, g.edges);
    std::vector<int> via(ns, -1);  // edge taken into each state
    std::vector<int> todo{from.state};
    std::vector<char> seen(ns, 0);
    seen[from.state] = 1;
    for (size_t h = 0; h < todo.size(); ++h) {
      for (int e : out[todo[h]]) {
        int v = g.edges[e][2];
        if (seen[v]) continue;
        seen[v] = 1;
        via[v] = e;
        todo.push_back(v);
      }
    }
    if (!seen[to.state]) throw Error("pns_virtual_reach: control states not connected");
    for (int v = to.state; v != from.state; v = g.edges[via[v]][0])
      path_disp = vadd(path_disp,
                       project(g.base.action(g.edges[via[v]][1]).displacement(),
                               g.counter_dims));
  }
  IntVec diff = vsub(vsub(to.counters, from.counters), path_disp);
  return lattice_member(cycle_lattice(cycle_net), diff);
}

bool pns_virtual_reach(const Pns& g, const PnsConf& from, const PnsConf& to) {
  return pns_virtual_reach(g, simple_cycle_net(g), from, to);
}

std::vector<PnsCandidate> extract_candidates(
    const Net& net, const std::vector<IntVec>& X,
    const std::function<Int(const Int&)>& threshold_fn, const HilbertOptions& opts) {
  int d = net.dim();
  if (d > 12) throw BudgetError("extract_candidates: too many places for subset enumeration");
  std::vector<IntVec> sorted = X;
  sort_canonical(sorted);

  std::vector<PnsCandidate> cands;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<int> dims;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) dims.push_back(i);
    Pns g = build_pns(net, sorted, dims, opts);
    Int q_norm = 0;
    for (const IntVec& q : g.states) q_norm = std::max(q_norm, norm_inf(q));
    Int c = threshold_fn(q_norm);
    const IntVec* witness = nullptr;
    for (const IntVec& x : sorted) {
      bool ok = true;
      for (int j : g.counter_dims)
        if (x[j] < c) {
          ok = false;
          break;
        }
      if (ok) {
        witness = &x;
        break;
      }
    }
    if (!witness) continue;
    PnsCandidate cand;
    cand.state_dims = dims;
    cand.q_norm = q_norm;
    cand.threshold = c;
    cand.witness_marking = *witness;
    cand.witness.state = g.state_index(project(*witness, g.state_dims));
    cand.witness.counters = project(*witness, g.counter_dims);
    cand.pns = std::move(g);
    cands.push_back(std::move(cand));
  }
  std::sort(cands.begin(), cands.end(), [](const PnsCandidate& a, const PnsCandidate& b) {
    if (a.state_dims.size() != b.state_dims.size())
      return a.state_dims.size() < b.state_dims.size();
    return a.state_dims < b.state_dims;
  });
  return cands;
}

std::vector<PnsCandidate> extract_candidates(const Net& net, const std::vector<IntVec>& X,
                                             const Int& threshold,
                                             const HilbertOptions& opts) {
  return extract_candidates(
      net, X, [&](const Int&) { return threshold; }, opts);
}

std::vector<int> low_coords(const IntVec& x, const IntVec& levels) {
  size_t n = x.size();
  if (levels.size() != n) throw DimensionError("low_coords: levels length mismatch");
  check_levels(levels);
  if (n > 20) throw BudgetError("low_coords: subset enumeration over more than 20 coordinates");

  std::vector<unsigned> qualifying;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    size_t size = static_cast<size_t>(__builtin_popcount(mask));
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      if (mask & (1u << i))
        ok = x[i] < level_at(levels, size);
      else
        ok = x[i] >= level_at(levels, size + 1);
    }
    if (ok) qualifying.push_back(mask);
  }
  std::vector<unsigned> maximal;
  for (unsigned m : qualifying) {
    bool dominated = false;
    for (unsigned o : qualifying)
      if (o != m && (o & m) == m) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(m);
  }
  if (maximal.size() != 1)
    throw Error(maximal.empty() ? "low_coords: no qualifying set"
                                : "low_coords: maximal qualifying set is not unique");
  std::vector<int> out;
  for (size_t i = 0; i < n; ++i)
    if (maximal[0] & (1u << i)) out.push_back(static_cast<int>(i));
  return out;
}

Int dif(const IntVec& x, const std::vector<int>& jprime, const IntVec& levels) {
  size_t n = x.size();
  if (levels.size() != n) throw DimensionError("dif: levels length mismatch");
  check_levels(levels);
  std::vector<int> jp = checked_dims(jprime, static_cast<int>(n), "dif");

  size_t size = jp.size();
  Int lo = level_at(levels, size);
  Int hi = level_at(levels, size + 1);
  Int best = 0;
  std::vector<char> in(n, 0);
  for (int i : jp) in[i] = 1;
  for (size_t i = 0; i < n; ++i) {
    if (in[i]) {
      if (x[i] >= lo) best = std::max(best, x[i] - (lo - 1));
    } else {
      if (x[i] < hi) best = std::max(best, hi - x[i]);
    }
  }
  return best;
}

LinearSystem anchored_reach_system(const Net& cycle_net, const Int& floor_c,
                                   const Int& b0,
                                   const std::map<std::vector<int>, IntVec>& anchors) {
  int n = cycle_net.dim();
  if (n > 4)
    throw PreconditionError(
        "anchored_reach_system: more than 4 counters refused (dimension n + n*2^n)");
  if (floor_c < 0 || b0 < 0)
    throw PreconditionError("anchored_reach_system: negative floor or pin bound");

  LinearSystem vrs = virtual_reach_system(cycle_net);
  unsigned subsets = 1u << n;
  int dim = n + n * static_cast<int>(subsets);

  std::vector<Formula> parts;
  for (int i = 0; i < n; ++i) {
    Constraint c;
    c.kind = CKind::Geq;
    c.coeffs.assign(dim, 0);
    c.coeffs[i] = 1;
    c.rhs = floor_c;
    parts.push_back(Formula::atom(std::move(c)));
  }

  for (unsigned mask = 0; mask < subsets; ++mask) {
    std::vector<int> key;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) key.push_back(i);
    auto it = anchors.find(key);
    if (it == anchors.end())
      throw PreconditionError("anchored_reach_system: missing anchor for a subset");
    const IntVec& anchor = it->second;
    if (anchor.size() != static_cast<size_t>(n))
      throw DimensionError("anchored_reach_system: anchor length mismatch");
    if (!is_nonneg(anchor))
      throw PreconditionError("anchored_reach_system: negative anchor entry");

    int block = n + static_cast<int>(mask) * n;
    std::vector<int> where(2 * n);
    for (int i = 0; i < n; ++i) {
      where[i] = i;
      where[n + i] = block + i;
    }
    parts.push_back(remap_formula(vrs.formula, dim, where));
    for (int i = 0; i < n; ++i) {
      Constraint c;
      c.coeffs.assign(dim, 0);
      c.coeffs[block + i] = 1;
      if (anchor[i] <= b0) {
        c.kind = CKind::Eq;
        c.rhs = anchor[i];
      } else {
        c.kind = CKind::Geq;
        c.rhs = b0 + 1;
      }
      parts.push_back(Formula::atom(std::move(c)));
    }
  }
  return {dim, Formula::conj(std::move(parts))};
}

std::optional<IntVec> suggest_anchor(const Net& cycle_net, const IntVec& x0,
                                     const std::vector<int>& jprime,
                                     const IntVec& levels, const Int& box,
                                     const Int& floor_c) {
  size_t n = static_cast<size_t>(cycle_net.dim());
  if (x0.size() != n) throw DimensionError("suggest_anchor: start length mismatch");
  if (box < 0) throw PreconditionError("suggest_anchor: negative box");
  if (int_pow(box + 1, static_cast<unsigned long>(n)) > 200'000)
    throw BudgetError("suggest_anchor: box enumeration too large");

  std::optional<HnfResult> group;
  if (reversibility_witness(cycle_net)) group = hnf(cycle_lattice(cycle_net));

  std::optional<IntVec> best;
  Int best_dif = 0;
  IntVec y(n, 0);
  while (true) {
    bool floored = true;
    for (const Int& v : y)
      if (v < floor_c) {
        floored = false;
        break;
      }
    if (floored) {
      bool reachable = group ? lattice_member(*group, vsub(y, x0))
                             : virtual_reach(cycle_net, x0, y) == Ternary::True;
      if (reachable) {
        Int d = dif(y, jprime, levels);
        if (!best || d < best_dif ||
            (d == best_dif &&
             (norm_one(y) < norm_one(*best) ||
              (norm_one(y) == norm_one(*best) && lex_less(y, *best)))))
          best = y, best_dif = d;
      }
    }
    size_t i = n;
    while (i > 0 && y[i - 1] == box) y[--i] = 0;
    if (i == 0) break;
    y[i - 1] += 1;
  }
  return best;
}

std::string pns_to_json(const Pns& g, int indent) {
  nlohmann::json j;
  j["net"] = write_net_file({g.base, {}});
  nlohmann::json I = nlohmann::json::array(), J = nlohmann::json::array();
  for (int i : g.state_dims) I.push_back(i + 1);
  for (int i : g.counter_dims) J.push_back(i + 1);
  j["I"] = std::move(I);
  j["J"] = std::move(J);
  nlohmann::json states = nlohmann::json::array();
  for (const IntVec& q : g.states) {
    nlohmann::json row = nlohmann::json::array();
    for (const Int& v : q) row.push_back(int_json(v));
    states.push_back(std::move(row));
  }
  j["states"] = std::move(states);
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges)
    edges.push_back({e[0] + 1, g.base.action(e[1]).name, e[2] + 1});
  j["edges"] = std::move(edges);
  nlohmann::json cert = nlohmann::json::array();
  for (int e : g.certificate) cert.push_back(e + 1);
  j["certificate"] = std::move(cert);
  j["norm"] = int_json(g.norm);
  return j.dump(indent) + "\n";
}

Pns pns_from_json(const std::string& text, const HilbertOptions& opts) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("pns json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("net") || !j.contains("I") || !j.contains("states") ||
      !j.contains("edges"))
    throw ParseError("pns json: need net, I, states, edges");

  Pns g;
  auto load = [&]() {
    g.base = parse_net_file(j["net"].get<std::string>()).net;
    for (const auto& v : j["I"]) {
      Int i = json_int(v, "I");
      if (i < 1 || i > g.base.dim()) throw ParseError("pns json: I index out of range");
      g.state_dims.push_back(static_cast<int>(i) - 1);
    }
    g.state_dims = checked_dims(g.state_dims, g.base.dim(), "pns json");
    g.counter_dims = complement(g.state_dims, g.base.dim());

    for (const auto& row : j["states"]) {
      if (!row.is_array() || row.size() != g.state_dims.size())
        throw ParseError("pns json: state length mismatch");
      IntVec q;
      for (const auto& v : row) {
        q.push_back(json_int(v, "state"));
        if (q.back() < 0) throw ParseError("pns json: negative state entry");
      }
      if (!g.states.empty() && !lex_less(g.states.back(), q))
        throw ParseError("pns json: states must be strictly lex-ascending");
      g.states.push_back(std::move(q));
    }
    if (g.states.empty()) throw ParseError("pns json: no states");

    Net restricted = restrict_net(g.base, g.state_dims);
    for (const auto& row : j["edges"]) {
      if (!row.is_array() || row.size() != 3)
        throw ParseError("pns json: edge must be [from, action, to]");
      Int from = json_int(row[0], "edge source"), to = json_int(row[2], "edge target");
      if (from < 1 || from > Int(g.states.size()) || to < 1 || to > Int(g.states.size()))
        throw ParseError("pns json: edge state index out of range");
      auto a = g.base.action_index(row[1].get<std::string>());
      if (!a) throw ParseError("pns json: unknown action '" + row[1].get<std::string>() + "'");
      Edge e{static_cast<int>(from) - 1, *a, static_cast<int>(to) - 1};
      auto succ = step(restricted, g.states[e[0]], e[1]);
      if (!succ || *succ != g.states[e[2]])
        throw ParseError("pns json: edge is not a step of the restricted net");
      if (!g.edges.empty() && !(g.edges.back() < e))
        throw ParseError("pns json: edges must be strictly ascending");
      g.edges.push_back(e);
    }

    if (j.contains("certificate") && !j["certificate"].empty()) {
      for (const auto& v : j["certificate"]) {
        Int e = json_int(v, "certificate");
        if (e < 1 || e > Int(g.edges.size()))
          throw ParseError("pns json: certificate edge index out of range");
        g.certificate.push_back(static_cast<int>(e) - 1);
      }
      try {
        verify_certificate(g.base, g.states, g.edges, g.certificate);
      } catch (const Error& e) {
        throw ParseError(e.what());
      }
    } else {
      g.certificate = covering_walk(g.base, g.states, g.edges, opts);
    }
  };
  try {
    load();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pns json: ") + e.what());
  }

  g.norm = net_norm(g.base);
  for (const IntVec& q : g.states) g.norm = std::max(g.norm, norm_inf(q));
  return g;
}

}  // namespace pnet
