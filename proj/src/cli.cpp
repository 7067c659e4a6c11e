#include "pnet/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pnet/bounds.hpp"
#include "pnet/error.hpp"
#include "pnet/lattice.hpp"
#include "pnet/linsys.hpp"
#include "pnet/net.hpp"
#include "pnet/pns.hpp"
#include "pnet/reach.hpp"
#include "pnet/reduction.hpp"
#include "pnet/structural.hpp"

namespace pnet::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << text;
}

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

Int parse_int_token(const std::string& tok, int lineno) {
  size_t i = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
  if (i == tok.size())
    throw ParseError("line " + std::to_string(lineno) +
                     ": expected integer, got '" + tok + "'");
  for (; i < tok.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected integer, got '" + tok + "'");
  return Int(tok);
}

// shared reader for "m n" headed integer grids
std::vector<IntVec> parse_grid(const std::string& text, int* dim_out) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int m = -1, n = -1;
  std::vector<IntVec> rows;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of_line(line);
    if (toks.empty()) continue;
    if (m < 0) {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header 'm n'");
      Int mm = parse_int_token(toks[0], lineno);
      Int nn = parse_int_token(toks[1], lineno);
      if (mm < 0 || nn < 0 || mm > 100000 || nn > 100000)
        throw ParseError("line " + std::to_string(lineno) + ": bad header");
      m = static_cast<int>(mm);
      n = static_cast<int>(nn);
      continue;
    }
    if (static_cast<int>(rows.size()) == m)
      throw ParseError("line " + std::to_string(lineno) + ": more than " +
                       std::to_string(m) + " rows");
    if (toks.size() != static_cast<size_t>(n))
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(n) + " integers");
    IntVec row;
    for (const std::string& t : toks) row.push_back(parse_int_token(t, lineno));
    rows.push_back(std::move(row));
  }
  if (m < 0) throw ParseError("missing 'm n' header line");
  if (static_cast<int>(rows.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " rows, got " +
                     std::to_string(rows.size()));
  if (dim_out) *dim_out = n;
  return rows;
}

nlohmann::json vec_json(const IntVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& x : v) a.push_back(x.str());
  return a;
}

nlohmann::json vecset_json(const std::vector<IntVec>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const IntVec& v : vs) a.push_back(vec_json(v));
  return a;
}

std::string join_vec(const IntVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += v[i].str();
  }
  return s;
}

// 1-based "1,2,4" index list; "-" or "" denotes the empty set
std::vector<int> parse_index_set(const std::string& text, int dim) {
  std::vector<int> out;
  if (text.empty() || text == "-") return out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(cur, &pos);
      if (pos != cur.size() || v < 1 || v > dim) throw std::invalid_argument("");
      out.push_back(v - 1);
    } catch (const std::exception&) {
      throw ParseError("bad index '" + cur + "' in set '" + text + "'");
    }
  }
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw ParseError("index set '" + text + "' must be strictly ascending");
  return out;
}

nlohmann::json graph_json(const ReachGraph& g, const Net& net) {
  nlohmann::json j;
  j["dim"] = g.dim;
  j["root"] = g.root;
  j["nodes"] = vecset_json(g.nodes);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges)
    edges.push_back({e[0], net.action(e[1]).name, e[2]});
  j["edges"] = edges;
  return j;
}

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

int cmd_check(Ctx& c, const std::string& path, size_t frontier) {
  NetFile f = parse_net_file(slurp(path));
  StructuralReport r = classify(f.net, {frontier});
  if (c.json) {
    nlohmann::json j;
    j["conservative"] = r.conservative;
    if (r.conservative_witness)
      j["conservative_witness"] = vec_json(*r.conservative_witness);
    j["one_conservative"] = r.one_conservative;
    j["structurally_bounded"] = r.structurally_bounded;
    if (r.bounded_witness) j["bounded_witness"] = vec_json(*r.bounded_witness);
    j["reversible"] = r.reversible;
    if (r.reversible_multiplicities)
      j["reversible_multiplicities"] = vec_json(*r.reversible_multiplicities);
    j["ordinary"] = r.ordinary;
    j["pp_net"] = r.pp_net;
    j["strongly_reversible"] = r.strongly_reversible;
    c.out << j.dump(2) << "\n";
  } else {
    auto flag = [&](const char* k, bool v) {
      c.out << k << " " << (v ? "true" : "false") << "\n";
    };
    flag("conservative", r.conservative);
    if (r.conservative_witness)
      c.out << "conservative_witness " << join_vec(*r.conservative_witness)
            << "\n";
    flag("one_conservative", r.one_conservative);
    flag("structurally_bounded", r.structurally_bounded);
    if (r.bounded_witness)
      c.out << "bounded_witness " << join_vec(*r.bounded_witness) << "\n";
    flag("reversible", r.reversible);
    if (r.reversible_multiplicities)
      c.out << "reversible_multiplicities "
            << join_vec(*r.reversible_multiplicities) << "\n";
    flag("ordinary", r.ordinary);
    flag("pp_net", r.pp_net);
    flag("strongly_reversible", r.strongly_reversible);
  }
  return 0;
}

int cmd_live(Ctx& c, const std::string& path, const std::string& marking,
             size_t node_budget, const std::string& dot_path,
             const std::string& gjson_path) {
  NetFile f = parse_net_file(slurp(path));
  const IntVec& x0 = f.marking(marking);
  if (!dot_path.empty() || !gjson_path.empty()) {
    ReachGraph g = reachability_graph(f.net, x0, node_budget);
    if (!dot_path.empty()) spill(dot_path, to_dot(g, f.net));
    if (!gjson_path.empty()) spill(gjson_path, graph_json(g, f.net).dump(2) + "\n");
  }
  bool live = is_live(f.net, x0, node_budget);
  if (c.json) {
    nlohmann::json j;
    j["marking"] = marking;
    j["live"] = live;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << (live ? "live" : "not-live") << "\n";
  }
  return live ? 0 : 1;
}

int cmd_structural_live(Ctx& c, const std::string& path, unsigned weight_budget,
                        size_t node_budget) {
  NetFile f = parse_net_file(slurp(path));
  IntVec w;
  auto found = structural_liveness_search(f.net, weight_budget, node_budget, &w);
  if (c.json) {
    nlohmann::json j;
    j["found"] = found.has_value();
    j["weight"] = vec_json(w);
    if (found) j["marking"] = vec_json(*found);
    c.out << j.dump(2) << "\n";
  } else {
    if (found)
      c.out << "live-marking " << join_vec(*found) << "\nweight " << join_vec(w)
            << "\n";
    else
      c.out << "none\n";
  }
  return found ? 0 : 1;
}

int emit_vecset(Ctx& c, const std::vector<IntVec>& vs, int dim) {
  if (c.json)
    c.out << nlohmann::json{{"count", vs.size()}, {"vectors", vecset_json(vs)}}
                 .dump(2)
          << "\n";
  else
    c.out << write_vecset(vs, dim);
  return 0;
}

int emit_system(Ctx& c, const LinearSystem& s, const EncodeReport* rep) {
  if (c.json) {
    nlohmann::json j;
    j["system"] = to_sexpr(s);
    j["dim"] = s.dim;
    if (rep) {
      j["norm"] = rep->norm.str();
      j["mlcm"] = rep->mlcm.str();
      j["bound"] = rep->bound.str();
      j["within_bound"] = rep->within_bound;
    }
    c.out << j.dump(2) << "\n";
  } else {
    c.out << to_sexpr(s) << "\n";
  }
  return 0;
}

int cmd_solve(Ctx& c, const std::string& path, const SolveOptions& opts) {
  LinearSystem s = parse_sexpr(slurp(path));
  auto x = solve_min(s, opts);
  if (c.json) {
    nlohmann::json j;
    j["satisfiable"] = x.has_value();
    if (x) {
      j["x"] = vec_json(*x);
      j["norm"] = norm_one(*x).str();
    }
    c.out << j.dump(2) << "\n";
  } else {
    if (x)
      c.out << "sat\nx " << join_vec(*x) << "\nnorm " << norm_one(*x).str()
            << "\n";
    else
      c.out << "unsat\n";
  }
  return x ? 0 : 1;
}

int cmd_pns_build(Ctx& c, const std::string& path, const std::string& marking,
                  const std::string& iset, size_t node_budget,
                  size_t frontier) {
  NetFile f = parse_net_file(slurp(path));
  const IntVec& x0 = f.marking(marking);
  ReachGraph g = reachability_graph(f.net, x0, node_budget);
  auto bottoms = bottom_sccs(g);
  if (bottoms.size() != 1)
    throw Error("marking '" + marking + "' reaches " +
                std::to_string(bottoms.size()) +
                " bottom components; start from a marking with exactly one");
  std::vector<int> I = parse_index_set(iset, f.net.dim());
  Pns pns = build_pns(f.net, bottoms[0], I, {frontier});
  c.out << pns_to_json(pns) << "\n";
  return 0;
}

int cmd_simple_cycles(Ctx& c, const std::string& path, size_t cycle_budget,
                      size_t frontier) {
  Pns pns = pns_from_json(slurp(path), {frontier});
  Net sc = simple_cycle_net(pns, cycle_budget);
  std::string text = write_net_file({sc, {}});
  if (c.json) {
    nlohmann::json j;
    j["dim"] = sc.dim();
    j["actions"] = sc.action_count();
    j["net"] = text;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << text;
  }
  return 0;
}

int emit_staged(Ctx& c, const std::string& stage, const std::string& source,
                const std::string& header_extra, const std::string& body) {
  std::string text = "# " + stage + " from " + source + "\n" + header_extra + body;
  if (c.json) {
    nlohmann::json j;
    j["stage"] = stage;
    j["output"] = text;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << text;
  }
  return 0;
}

bool looks_like_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto toks = tokens_of_line(line);
    if (!toks.empty()) return toks[0] == "letters";
  }
  return false;
}

int emit_sl(Ctx& c, const std::string& path, const SlInstance& sl,
            const Int& witness_store) {
  NetFile f;
  f.net = sl.net;
  int dim = sl.net.dim();
  auto unit = [&](int i) {
    IntVec v(dim, 0);
    v[i] = 1;
    return v;
  };
  f.markings.emplace_back("init", unit(sl.p_init));
  f.markings.emplace_back("cov", unit(sl.p_cov));
  f.markings.emplace_back("store", unit(sl.p_store));
  f.markings.emplace_back("witness", sl.initial_marking(witness_store));
  std::string cert = "# certificate:";
  for (int i : sl.certificate) cert += " " + sl.net.action(i).name;
  return emit_staged(c, "sl", path, cert + "\n", write_net_file(f));
}

// A presentation input runs the chain from the start up to the named stage;
// a net-file input (roles carried by unit markings init/cov/store) runs just
// that stage.
int cmd_reduce(Ctx& c, const std::string& stage, const std::string& path) {
  static const char* stages[] = {"normalize", "cover", "scover",
                                 "pp",        "ppscover", "sl"};
  bool known = false;
  for (const char* s : stages) known = known || stage == s;
  if (!known)
    throw Error("unknown stage '" + stage +
                "' (expected normalize, cover, scover, pp, ppscover or sl)");

  std::string text = slurp(path);
  if (looks_like_presentation(text)) {
    if (stage == "pp")
      throw Error("stage pp takes a net file, not a presentation");
    SemigroupPresentation p = normalize_presentation(parse_presentation(text));
    if (stage == "normalize")
      return emit_staged(c, stage, path, "", write_presentation(p));
    CoverInstance inst = semigroup_to_cover(p);
    if (stage == "cover")
      return emit_staged(c, stage, path, "",
                         write_net_file(instance_to_netfile(inst)));
    inst = cover_to_scover(inst);
    if (stage == "scover")
      return emit_staged(c, stage, path, "",
                         write_net_file(instance_to_netfile(inst)));
    inst = scover_to_ppscover(inst);
    if (stage == "ppscover")
      return emit_staged(c, stage, path, "",
                         write_net_file(instance_to_netfile(inst)));
    return emit_sl(c, path, ppscover_to_sl(inst), inst.net.dim() + 1);
  }

  if (stage == "normalize" || stage == "cover")
    throw Error("stage " + stage + " takes a presentation, not a net file");
  NetFile f = parse_net_file(text);
  if (stage == "pp") {
    PpSimulation sim = conservative_to_pp(f.net);
    IntVec run(sim.net.dim(), 0);
    run[sim.p_run] = 1;
    return emit_staged(c, stage, path, "",
                       write_net_file({sim.net, {{"run", run}}}));
  }
  CoverInstance inst = instance_from_netfile(f);
  if (stage == "scover")
    return emit_staged(c, stage, path, "",
                       write_net_file(instance_to_netfile(cover_to_scover(inst))));
  if (stage == "ppscover")
    return emit_staged(
        c, stage, path, "",
        write_net_file(instance_to_netfile(scover_to_ppscover(inst))));
  return emit_sl(c, path, ppscover_to_sl(inst), inst.net.dim() + 1);
}

int cmd_bounds(Ctx& c, const std::string& id,
               const std::vector<std::string>& params) {
  bounds::BoundFormula f;
  f.id = id;
  for (const std::string& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("bad parameter '" + p + "' (expected name=value)");
    std::string name = p.substr(0, eq), val = p.substr(eq + 1);
    try {
      f.params[name] = Int(val);
    } catch (const std::exception&) {
      throw Error("bad value '" + val + "' for parameter '" + name + "'");
    }
  }
  bounds::BoundResult r = bounds::eval_bound(f);
  if (c.json) {
    nlohmann::json j;
    j["id"] = id;
    if (r.is_sequence)
      j["sequence"] = vec_json(r.sequence);
    else
      j["value"] = r.value.str();
    c.out << j.dump(2) << "\n";
  } else {
    if (r.is_sequence)
      c.out << join_vec(r.sequence) << "\n";
    else
      c.out << r.value.str() << "\n";
  }
  return 0;
}

}  // namespace

Matrix parse_matrix(const std::string& text) {
  int dim = 0;
  std::vector<IntVec> rows = parse_grid(text, &dim);
  Matrix m;
  m.rows = static_cast<int>(rows.size());
  m.cols = dim;
  m.a = std::move(rows);
  return m;
}

std::string write_matrix(const Matrix& m) {
  std::ostringstream os;
  os << m.rows << " " << m.cols << "\n";
  for (const IntVec& r : m.a) os << join_vec(r) << "\n";
  return os.str();
}

std::vector<IntVec> parse_vecset(const std::string& text, int* dim_out) {
  return parse_grid(text, dim_out);
}

std::string write_vecset(const std::vector<IntVec>& vs, int dim) {
  std::ostringstream os;
  os << vs.size() << " " << dim << "\n";
  for (const IntVec& v : vs) os << join_vec(v) << "\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact analysis toolkit for place/transition nets"};
  app.name("pnet");
  app.require_subcommand(1);
  app.fallthrough();

  std::string output_mode = "text";
  app.add_option("--output", output_mode, "report format")
      ->check(CLI::IsMember({"text", "json"}));

  size_t node_budget = 1'000'000;
  size_t frontier = 1'000'000;
  size_t cycle_budget = 100'000;
  unsigned weight_budget = 8;
  std::string path, second, marking, iset, dot_path, gjson_path, stage, id;
  std::vector<std::string> params;

  auto positive = CLI::PositiveNumber;

  CLI::App* check = app.add_subcommand("check", "structural class report");
  check->add_option("net", path, "net file")->required();
  check->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* live = app.add_subcommand("live", "decide liveness of a marking");
  live->add_option("net", path)->required();
  live->add_option("--marking", marking, "marking name")->required();
  live->add_option("--node-budget", node_budget)->check(positive);
  live->add_option("--dot", dot_path, "write the reachability graph as DOT");
  live->add_option("--graph-json", gjson_path,
                   "write the reachability graph as JSON");

  CLI::App* slive = app.add_subcommand(
      "structural-live", "search the least-weight live marking");
  slive->add_option("net", path)->required();
  slive->add_option("--weight-budget", weight_budget)->check(positive);
  slive->add_option("--node-budget", node_budget)->check(positive);

  CLI::App* hil = app.add_subcommand("hilbert",
                                     "minimal nonzero solutions of B x = 0");
  hil->add_option("matrix", path)->required();
  hil->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* mineq =
      app.add_subcommand("minsol-eq", "minimal solutions of C y = c");
  mineq->add_option("matrix", path)->required();
  mineq->add_option("rhs", second)->required();
  mineq->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* mingeq =
      app.add_subcommand("minsol-geq", "minimal solutions of C y >= c");
  mingeq->add_option("matrix", path)->required();
  mingeq->add_option("rhs", second)->required();
  mingeq->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* msleq = app.add_subcommand(
      "min-sleq", "sign-order-minimal elements of a generated monoid");
  msleq->add_option("vecset", path)->required();
  msleq->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* solve = app.add_subcommand("solve", "least-norm integer solution");
  solve->add_option("system", path)->required();
  solve->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* enc = app.add_subcommand(
      "encode-lattice", "equality/divisibility system for a generated group");
  enc->add_option("vecset", path)->required();

  CLI::App* vrs = app.add_subcommand(
      "vreach-system", "virtual-reachability system of a reversible net");
  vrs->add_option("net", path)->required();

  CLI::App* pb = app.add_subcommand("pns-build",
                                    "state/counter split of a bottom component");
  pb->add_option("net", path)->required();
  pb->add_option("--scc-from", marking, "marking whose bottom component is used")
      ->required();
  pb->add_option("--I", iset, "state coordinates, 1-based ('-' for none)")
      ->required();
  pb->add_option("--node-budget", node_budget)->check(positive);
  pb->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* sc = app.add_subcommand("simple-cycles",
                                    "net of simple-cycle displacements");
  sc->add_option("pns", path)->required();
  sc->add_option("--cycle-budget", cycle_budget)->check(positive);
  sc->add_option("--frontier-budget", frontier)->check(positive);

  CLI::App* red = app.add_subcommand("reduce", "run one construction stage");
  red->add_option("stage", stage, "normalize|cover|scover|ppscover|sl")
      ->required();
  red->add_option("input", path)->required();

  CLI::App* bnd = app.add_subcommand("bounds", "evaluate a bound formula");
  bnd->add_option("id", id, "formula id")->required();
  bnd->add_option("--param", params, "name=value");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Ctx c{out, err, output_mode == "json"};
  try {
    if (app.got_subcommand(check)) return cmd_check(c, path, frontier);
    if (app.got_subcommand(live))
      return cmd_live(c, path, marking, node_budget, dot_path, gjson_path);
    if (app.got_subcommand(slive))
      return cmd_structural_live(c, path, weight_budget, node_budget);
    if (app.got_subcommand(hil)) {
      Matrix m = parse_matrix(slurp(path));
      return emit_vecset(c, hilbert_basis(m, {frontier}), m.cols);
    }
    if (app.got_subcommand(mineq) || app.got_subcommand(mingeq)) {
      Matrix m = parse_matrix(slurp(path));
      int rdim = 0;
      std::vector<IntVec> rhs = parse_vecset(slurp(second), &rdim);
      if (rhs.size() != 1 || rdim != m.rows)
        throw Error("rhs file '" + second + "' must hold one vector of " +
                    std::to_string(m.rows) + " entries");
      auto sols = app.got_subcommand(mineq)
                      ? min_solutions_eq(m, rhs[0], {frontier})
                      : min_solutions_geq(m, rhs[0], {frontier});
      return emit_vecset(c, sols, m.cols);
    }
    if (app.got_subcommand(msleq)) {
      int dim = 0;
      std::vector<IntVec> gens = parse_vecset(slurp(path), &dim);
      return emit_vecset(c, min_sleq_monoid(gens, dim, {frontier}), dim);
    }
    if (app.got_subcommand(solve)) {
      SolveOptions opts;
      opts.frontier_budget = frontier;
      return cmd_solve(c, path, opts);
    }
    if (app.got_subcommand(enc)) {
      int dim = 0;
      std::vector<IntVec> gens = parse_vecset(slurp(path), &dim);
      EncodeReport rep;
      LinearSystem s = group_to_linsys({dim, gens}, &rep);
      return emit_system(c, s, &rep);
    }
    if (app.got_subcommand(vrs)) {
      NetFile f = parse_net_file(slurp(path));
      EncodeReport rep;
      LinearSystem s = virtual_reach_system(f.net, &rep);
      return emit_system(c, s, &rep);
    }
    if (app.got_subcommand(pb))
      return cmd_pns_build(c, path, marking, iset, node_budget, frontier);
    if (app.got_subcommand(sc))
      return cmd_simple_cycles(c, path, cycle_budget, frontier);
    if (app.got_subcommand(red)) return cmd_reduce(c, stage, path);
    if (app.got_subcommand(bnd)) return cmd_bounds(c, id, params);
    err << "error: no subcommand\n";
    return 2;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pnet::cli
