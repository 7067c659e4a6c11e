#include "pnet/reach.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "pnet/error.hpp"
#include "pnet/structural.hpp"

namespace pnet {

namespace {

struct I64VecHash {
  size_t operator()(const I64Vec& v) const {
    size_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (int64_t x : v) {
      size_t k = static_cast<size_t>(x) * 0xbf58476d1ce4e5b9ull;
      k ^= k >> 31;
      h = (h ^ k) * 0x94d049bb133111ebull;
    }
    return h;
  }
};

struct RawGraph {
  std::vector<IntVec> nodes;  // discovery order, nodes[0] = root
  std::vector<std::array<int, 3>> edges;
};

RawGraph bfs_i64(const Net& net, const IntVec& x0, size_t node_budget) {
  const int d = net.dim();
  const int na = net.action_count();
  std::vector<I64Vec> pre(na, I64Vec(d)), post(na, I64Vec(d));
  for (int a = 0; a < na; ++a) {
    for (int i = 0; i < d; ++i) {
      const Action& act = net.action(a);
      if (!fits_i64(act.pre[i]) || !fits_i64(act.post[i])) throw I64Overflow{};
      pre[a][i] = to_i64(act.pre[i]);
      post[a][i] = to_i64(act.post[i]);
    }
  }
  I64Vec root(d);
  for (int i = 0; i < d; ++i) {
    if (!fits_i64(x0[i])) throw I64Overflow{};
    root[i] = to_i64(x0[i]);
  }

  std::vector<I64Vec> nodes;
  std::unordered_map<I64Vec, int, I64VecHash> index;
  std::vector<std::array<int, 3>> edges;
  nodes.push_back(root);
  index.emplace(root, 0);
  for (size_t head = 0; head < nodes.size(); ++head) {
    I64Vec cur = nodes[head];  // copy, the vector may reallocate below
    for (int a = 0; a < na; ++a) {
      bool ok = true;
      for (int i = 0; i < d; ++i) {
        if (cur[i] < pre[a][i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      I64Vec next(d);
      for (int i = 0; i < d; ++i)
        next[i] = checked_add(checked_sub(cur[i], pre[a][i]), post[a][i]);
      auto [it, fresh] = index.emplace(next, static_cast<int>(nodes.size()));
      if (fresh) {
        if (nodes.size() >= node_budget)
          throw BudgetError("reachability graph exceeds node budget");
        nodes.push_back(std::move(next));
      }
      edges.push_back({static_cast<int>(head), a, it->second});
    }
  }

  RawGraph g;
  g.nodes.reserve(nodes.size());
  for (const I64Vec& v : nodes) {
    IntVec w(d);
    for (int i = 0; i < d; ++i) w[i] = v[i];
    g.nodes.push_back(std::move(w));
  }
  g.edges = std::move(edges);
  return g;
}

RawGraph bfs_big(const Net& net, const IntVec& x0, size_t node_budget) {
  const int na = net.action_count();
  RawGraph g;
  std::map<IntVec, int> index;
  g.nodes.push_back(x0);
  index.emplace(x0, 0);
  for (size_t head = 0; head < g.nodes.size(); ++head) {
    IntVec cur = g.nodes[head];
    for (int a = 0; a < na; ++a) {
      auto next = step(net, cur, a);
      if (!next) continue;
      auto [it, fresh] = index.emplace(*next, static_cast<int>(g.nodes.size()));
      if (fresh) {
        if (g.nodes.size() >= node_budget)
          throw BudgetError("reachability graph exceeds node budget");
        g.nodes.push_back(std::move(*next));
      }
      g.edges.push_back({static_cast<int>(head), a, it->second});
    }
  }
  return g;
}

ReachGraph canonicalize(RawGraph raw, int dim) {
  const int n = static_cast<int>(raw.nodes.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(raw.nodes[a], raw.nodes[b]); });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  ReachGraph g;
  g.dim = dim;
  g.nodes.resize(n);
  for (int i = 0; i < n; ++i) g.nodes[i] = std::move(raw.nodes[order[i]]);
  g.edges.reserve(raw.edges.size());
  for (const auto& e : raw.edges) g.edges.push_back({pos[e[0]], e[1], pos[e[2]]});
  std::sort(g.edges.begin(), g.edges.end());
  g.root = pos[0];
  return g;
}

struct SccResult {
  std::vector<int> comp;  // node -> component, ids in completion order (sinks first)
  int count = 0;
};

// iterative Tarjan; component ids satisfy id(target) < id(source) across components
SccResult tarjan(const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> num(n, -1), low(n, 0), stk;
  std::vector<char> on(n, 0);
  int counter = 0;
  std::vector<std::pair<int, size_t>> frames;
  for (int s = 0; s < n; ++s) {
    if (num[s] != -1) continue;
    frames.push_back({s, 0});
    while (!frames.empty()) {
      int v = frames.back().first;
      if (frames.back().second == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on[v] = 1;
      }
      bool descended = false;
      while (frames.back().second < succ[v].size()) {
        int w = succ[v][frames.back().second++];
        if (num[w] == -1) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on[w]) low[v] = std::min(low[v], num[w]);
      }
      if (descended) continue;
      if (low[v] == num[v]) {
        int c = res.count++;
        while (true) {
          int w = stk.back();
          stk.pop_back();
          on[w] = 0;
          res.comp[w] = c;
          if (w == v) break;
        }
      }
      frames.pop_back();
      if (!frames.empty()) {
        int p = frames.back().first;
        low[p] = std::min(low[p], low[v]);
      }
    }
  }
  return res;
}

std::vector<std::vector<int>> successor_lists(const ReachGraph& g) {
  std::vector<std::vector<int>> succ(g.nodes.size());
  for (const auto& e : g.edges) succ[e[0]].push_back(e[2]);
  return succ;
}

using Bits = std::vector<uint64_t>;

Bits make_bits(int n) { return Bits((n + 63) / 64, 0); }

void set_bit(Bits& b, int i) { b[i >> 6] |= uint64_t(1) << (i & 63); }

void or_into(Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

int first_missing(const Bits& b, int n) {
  for (int i = 0; i < n; ++i)
    if (!(b[i >> 6] >> (i & 63) & 1)) return i;
  return -1;
}

bool all_set(const Bits& b, int n) { return first_missing(b, n) < 0; }

// per-node action enablement, int64 fast path with exact fallback
std::vector<Bits> node_enabled_bits(const Net& net, const std::vector<IntVec>& nodes) {
  const int na = net.action_count();
  const int d = net.dim();
  std::vector<Bits> out(nodes.size(), make_bits(na));
  try {
    std::vector<I64Vec> pre(na, I64Vec(d));
    for (int a = 0; a < na; ++a) {
      for (int i = 0; i < d; ++i) {
        if (!fits_i64(net.action(a).pre[i])) throw I64Overflow{};
        pre[a][i] = to_i64(net.action(a).pre[i]);
      }
    }
    std::vector<I64Vec> nv(nodes.size(), I64Vec(d));
    for (size_t k = 0; k < nodes.size(); ++k) {
      for (int i = 0; i < d; ++i) {
        if (!fits_i64(nodes[k][i])) throw I64Overflow{};
        nv[k][i] = to_i64(nodes[k][i]);
      }
    }
    for (size_t k = 0; k < nodes.size(); ++k) {
      for (int a = 0; a < na; ++a) {
        bool ok = true;
        for (int i = 0; i < d; ++i) {
          if (nv[k][i] < pre[a][i]) {
            ok = false;
            break;
          }
        }
        if (ok) set_bit(out[k], a);
      }
    }
  } catch (const I64Overflow&) {
    for (auto& b : out) std::fill(b.begin(), b.end(), 0);
    for (size_t k = 0; k < nodes.size(); ++k)
      for (int a = 0; a < na; ++a)
        if (leq(net.action(a).pre, nodes[k])) set_bit(out[k], a);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> ReachGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(nodes.size());
  for (const auto& e : edges) adj[e[0]].push_back({e[1], e[2]});
  return adj;
}

ReachGraph reachability_graph(const Net& net, const IntVec& x0, size_t node_budget) {
  if (static_cast<int>(x0.size()) != net.dim())
    throw DimensionError("reachability_graph: marking dimension mismatch");
  if (!is_nonneg(x0)) throw PreconditionError("reachability_graph: marking must be nonnegative");
  if (node_budget < 1) throw BudgetError("reachability graph exceeds node budget");
  RawGraph raw;
  try {
    raw = bfs_i64(net, x0, node_budget);
  } catch (const I64Overflow&) {
    raw = bfs_big(net, x0, node_budget);
  }
  return canonicalize(std::move(raw), net.dim());
}

std::vector<std::vector<IntVec>> bottom_sccs(const ReachGraph& g) {
  auto succ = successor_lists(g);
  auto scc = tarjan(succ);
  std::vector<char> has_out(scc.count, 0);
  for (const auto& e : g.edges)
    if (scc.comp[e[0]] != scc.comp[e[2]]) has_out[scc.comp[e[0]]] = 1;

  std::vector<std::vector<IntVec>> out;
  std::vector<int> slot(scc.count, -1);
  // nodes are in lexicographic order, so per-component lists come out sorted
  // and components are met in order of their least marking
  for (size_t k = 0; k < g.nodes.size(); ++k) {
    int c = scc.comp[k];
    if (has_out[c]) continue;
    if (slot[c] < 0) {
      slot[c] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[c]].push_back(g.nodes[k]);
  }
  return out;
}

DeadResult is_dead(const Net& net, const IntVec& x, size_t node_budget) {
  ReachGraph g = reachability_graph(net, x, node_budget);
  auto bits = node_enabled_bits(net, g.nodes);
  Bits any = make_bits(net.action_count());
  for (const Bits& b : bits) or_into(any, b);
  DeadResult r;
  int miss = first_missing(any, net.action_count());
  if (miss >= 0) {
    r.dead = true;
    r.witness_action = miss;
  }
  return r;
}

bool is_live(const Net& net, const IntVec& x, size_t node_budget) {
  ReachGraph g = reachability_graph(net, x, node_budget);
  const int na = net.action_count();
  auto succ = successor_lists(g);
  auto scc = tarjan(succ);
  auto bits = node_enabled_bits(net, g.nodes);
  std::vector<Bits> cbits(scc.count, make_bits(na));
  std::vector<char> has_out(scc.count, 0);
  for (size_t k = 0; k < g.nodes.size(); ++k) or_into(cbits[scc.comp[k]], bits[k]);
  for (const auto& e : g.edges)
    if (scc.comp[e[0]] != scc.comp[e[2]]) has_out[scc.comp[e[0]]] = 1;
  for (int c = 0; c < scc.count; ++c)
    if (!has_out[c] && !all_set(cbits[c], na)) return false;
  return true;
}

bool is_quasi_dead(const Net& net, const IntVec& x, size_t depth, size_t node_budget) {
  ReachGraph g = reachability_graph(net, x, node_budget);
  const int na = net.action_count();
  const size_t n = g.nodes.size();
  auto succ = successor_lists(g);

  std::vector<size_t> dist(n, SIZE_MAX);
  std::vector<int> queue;
  dist[g.root] = 0;
  queue.push_back(g.root);
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w : succ[v]) {
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }

  auto scc = tarjan(succ);
  auto bits = node_enabled_bits(net, g.nodes);
  // actions enabled somewhere in the downward closure of each component;
  // component ids come sinks first, so successors are already folded in
  std::vector<Bits> reach_bits(scc.count, make_bits(na));
  for (size_t k = 0; k < n; ++k) or_into(reach_bits[scc.comp[k]], bits[k]);
  std::vector<std::vector<int>> csucc(scc.count);
  for (const auto& e : g.edges)
    if (scc.comp[e[0]] != scc.comp[e[2]]) csucc[scc.comp[e[0]]].push_back(scc.comp[e[2]]);
  for (int c = 0; c < scc.count; ++c)
    for (int t : csucc[c]) or_into(reach_bits[c], reach_bits[t]);

  for (size_t k = 0; k < n; ++k)
    if (dist[k] <= depth && !all_set(reach_bits[scc.comp[k]], na)) return true;
  return false;
}

namespace {

// all x >= 0 with <x, w> = rem over coordinates i.., appended in lex order
void enum_stratum(const IntVec& w, const Int& rem, size_t i, IntVec& cur,
                  std::vector<IntVec>& out, size_t budget) {
  if (i == w.size()) {
    if (rem == 0) {
      if (out.size() >= budget) throw BudgetError("weight stratum exceeds node budget");
      out.push_back(cur);
    }
    return;
  }
  for (Int v = 0; v * w[i] <= rem; ++v) {
    cur[i] = v;
    enum_stratum(w, rem - v * w[i], i + 1, cur, out, budget);
  }
  cur[i] = 0;
}

}  // namespace

std::optional<IntVec> structural_liveness_search(const Net& net, unsigned weight_budget,
                                                 size_t node_budget, IntVec* weight_out) {
  auto w = conservativeness_witness(net);
  if (!w) throw PreconditionError("structural liveness search requires a conservative net");
  if (weight_out) *weight_out = *w;
  const int na = net.action_count();

  for (unsigned W = 0; W <= weight_budget; ++W) {
    std::vector<IntVec> stratum;
    IntVec cur(net.dim(), Int(0));
    enum_stratum(*w, Int(W), 0, cur, stratum, node_budget);
    if (stratum.empty()) continue;

    // firing preserves the weight, so each stratum is closed
    auto find_idx = [&](const IntVec& v) -> int {
      auto it = std::lower_bound(stratum.begin(), stratum.end(), v, lex_less);
      if (it == stratum.end() || *it != v)
        throw Error("structural_liveness_search: stratum not closed under firing");
      return static_cast<int>(it - stratum.begin());
    };
    std::vector<std::vector<int>> succ(stratum.size());
    for (size_t k = 0; k < stratum.size(); ++k)
      for (int a = 0; a < na; ++a)
        if (auto y = step(net, stratum[k], a)) succ[k].push_back(find_idx(*y));

    auto scc = tarjan(succ);
    auto bits = node_enabled_bits(net, stratum);
    std::vector<Bits> cbits(scc.count, make_bits(na));
    std::vector<char> has_out(scc.count, 0);
    std::vector<std::vector<int>> csucc(scc.count);
    for (size_t k = 0; k < stratum.size(); ++k) {
      int c = scc.comp[k];
      or_into(cbits[c], bits[k]);
      for (int t : succ[k]) {
        if (scc.comp[t] != c) {
          has_out[c] = 1;
          csucc[c].push_back(scc.comp[t]);
        }
      }
    }
    // a marking is live iff no reachable bottom component misses an action
    std::vector<char> bad(scc.count, 0);
    for (int c = 0; c < scc.count; ++c) {
      if (!has_out[c]) {
        bad[c] = !all_set(cbits[c], na);
      } else {
        for (int t : csucc[c]) {
          if (bad[t]) {
            bad[c] = 1;
            break;
          }
        }
      }
    }
    for (size_t k = 0; k < stratum.size(); ++k)
      if (!bad[scc.comp[k]]) return stratum[k];
  }
  return std::nullopt;
}

std::string to_dot(const ReachGraph& g, const Net& net) {
  std::ostringstream os;
  os << "digraph reach {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (size_t k = 0; k < g.nodes.size(); ++k) {
    os << "  n" << k << " [label=\"(";
    for (int i = 0; i < g.dim; ++i) {
      if (i) os << ",";
      os << g.nodes[k][i];
    }
    os << ")\"";
    if (static_cast<int>(k) == g.root) os << ", penwidth=2";
    os << "];\n";
  }
  for (const auto& e : g.edges)
    os << "  n" << e[0] << " -> n" << e[2] << " [label=\"" << net.action(e[1]).name
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pnet
