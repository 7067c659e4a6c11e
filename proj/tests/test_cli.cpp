#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"
#include "pnet/cli.hpp"
#include "pnet/linsys.hpp"
#include "pnet/pns.hpp"
#include "pnet/reduction.hpp"

using namespace pnet;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path tmp_root() {
  fs::path p = fs::temp_directory_path() / "pnet-cli-tests";
  fs::create_directories(p);
  return p;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  fs::path p = tmp_root() / name;
  std::ofstream f(p, std::ios::binary);
  f << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

nlohmann::json jparse(const std::string& text) {
  return nlohmann::json::parse(text);
}

IntVec jvec(const nlohmann::json& a) {
  IntVec v;
  for (const auto& s : a) v.push_back(Int(s.get<std::string>()));
  return v;
}

std::vector<IntVec> jvecs(const nlohmann::json& a) {
  std::vector<IntVec> vs;
  for (const auto& row : a) vs.push_back(jvec(row));
  return vs;
}

const std::string kOneWay =
    "net oneway\nplaces 2\naction u 1 0 -> 0 1\nmarking m0 1 0\n";
const std::string kGrow =
    "net grow\nplaces 1\naction g 0 -> 1\nmarking z 0\n";
const std::string kFork =
    "net fork\nplaces 1\naction a 2 -> 1\naction b 2 -> 0\nmarking s 2\n";
const std::string kBalanced =
    "net balanced\nplaces 3\n"
    "action u 1 0 0 -> 0 1 1\n"
    "action v 0 1 1 -> 1 0 0\n"
    "action w 0 1 2 -> 1 0 1\n"
    "marking m 1 0 0\n";
const std::string kPres = "letters a b c\neq a = c b\nask a covers b\n";

const std::vector<IntVec> kA1Nodes = {
    {0, 1, 0, 1, 1}, {0, 1, 2, 0, 1}, {1, 0, 0, 1, 1}, {1, 0, 1, 0, 2}};

}  // namespace

TEST_CASE("cli help and argument errors") {
  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("pnet") != std::string::npos);
  CHECK(help.out.find("check") != std::string::npos);
  CHECK(help.err.empty());

  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"nosuch-subcommand"}).code == 2);
  CHECK(run_cli({"check"}).code == 2);  // missing net argument

  auto badout = run_cli({"--output", "yaml", "check", oracle::fixture("a1.net")});
  CHECK(badout.code == 2);
  CHECK(badout.err.substr(0, 7) == "error: ");

  auto badbudget =
      run_cli({"live", oracle::fixture("a1.net"), "--marking", "x0",
               "--node-budget", "0"});
  CHECK(badbudget.code == 2);

  auto nofile = run_cli({"check", (tmp_root() / "missing.net").string()});
  CHECK(nofile.code == 2);
  CHECK(nofile.err.find("cannot read file") != std::string::npos);
}

TEST_CASE("cli check reports the structural classes of a1") {
  auto r = run_cli({"check", oracle::fixture("a1.net")});
  CHECK(r.code == 0);
  std::string head =
      "conservative true\n"
      "conservative_witness 1 1 1 2 1\n"
      "one_conservative true\n"
      "structurally_bounded true\n"
      "bounded_witness ";
  CHECK(r.out.substr(0, head.size()) == head);
  std::string tail =
      "reversible true\n"
      "reversible_multiplicities 1 1 1 1\n"
      "ordinary false\n"
      "pp_net false\n"
      "strongly_reversible false\n";
  CHECK(r.out.size() >= tail.size());
  CHECK(r.out.substr(r.out.size() - tail.size()) == tail);

  auto j = run_cli({"check", oracle::fixture("a1.net"), "--output", "json"});
  REQUIRE(j.code == 0);
  auto doc = jparse(j.out);
  CHECK(doc["conservative"] == true);
  CHECK(doc["one_conservative"] == true);
  CHECK(doc["structurally_bounded"] == true);
  CHECK(doc["reversible"] == true);
  CHECK(doc["ordinary"] == false);
  CHECK(doc["pp_net"] == false);
  CHECK(doc["strongly_reversible"] == false);
  CHECK(jvec(doc["conservative_witness"]) == IntVec{1, 1, 1, 2, 1});
  CHECK(jvec(doc["reversible_multiplicities"]) == IntVec{1, 1, 1, 1});

  Net a1 = parse_net_file(read_file(oracle::fixture("a1.net"))).net;
  REQUIRE(doc.contains("bounded_witness"));
  CHECK(oracle::valid_bounded_witness(a1, jvec(doc["bounded_witness"])));
  CHECK(oracle::valid_conservation_witness(a1, jvec(doc["conservative_witness"])));
  CHECK(oracle::valid_reversibility_multiplicities(
      a1, jvec(doc["reversible_multiplicities"])));
}

TEST_CASE("cli live decides markings and writes graph side files") {
  std::string a1 = oracle::fixture("a1.net");

  auto live = run_cli({"live", a1, "--marking", "x0"});
  CHECK(live.code == 0);
  CHECK(live.out == "live\n");

  auto dead = run_cli({"live", a1, "--marking", "xdead"});
  CHECK(dead.code == 1);
  CHECK(dead.out == "not-live\n");

  auto jdead = run_cli({"live", a1, "--marking", "xdead", "--output", "json"});
  CHECK(jdead.code == 1);
  auto doc = jparse(jdead.out);
  CHECK(doc["marking"] == "xdead");
  CHECK(doc["live"] == false);

  auto nomark = run_cli({"live", a1, "--marking", "nosuch"});
  CHECK(nomark.code == 2);
  CHECK(nomark.err.substr(0, 7) == "error: ");

  std::string dot = (tmp_root() / "a1.dot").string();
  std::string gj = (tmp_root() / "a1.graph.json").string();
  auto side = run_cli(
      {"live", a1, "--marking", "x0", "--dot", dot, "--graph-json", gj});
  CHECK(side.code == 0);
  CHECK(read_file(dot).find("digraph") != std::string::npos);

  auto g = jparse(read_file(gj));
  CHECK(g["dim"] == 5);
  CHECK(g["root"] == 3);
  REQUIRE(g["nodes"].size() == 4);
  CHECK(jvecs(g["nodes"]) == kA1Nodes);
  REQUIRE(g["edges"].size() == 4);
  CHECK(g["edges"][0] == nlohmann::json({0, "a2", 2}));
  CHECK(g["edges"][1] == nlohmann::json({1, "a3", 0}));
  CHECK(g["edges"][2] == nlohmann::json({2, "a4", 3}));
  CHECK(g["edges"][3] == nlohmann::json({3, "a1", 1}));
}

TEST_CASE("cli live exceeds the node budget on an unbounded net") {
  std::string path = write_tmp("grow.net", kGrow);
  auto r = run_cli({"live", path, "--marking", "z", "--node-budget", "10"});
  CHECK(r.code == 3);
  CHECK(r.err.substr(0, 8) == "budget: ");
}

TEST_CASE("cli structural-live finds the least witness or reports none") {
  auto r = run_cli({"structural-live", oracle::fixture("a1.net")});
  CHECK(r.code == 0);
  CHECK(r.out == "live-marking 0 1 0 1 1\nweight 1 1 1 2 1\n");

  auto j = run_cli(
      {"structural-live", oracle::fixture("a1.net"), "--output", "json"});
  CHECK(j.code == 0);
  auto doc = jparse(j.out);
  CHECK(doc["found"] == true);
  CHECK(jvec(doc["weight"]) == IntVec{1, 1, 1, 2, 1});
  CHECK(jvec(doc["marking"]) == IntVec{0, 1, 0, 1, 1});

  std::string oneway = write_tmp("oneway.net", kOneWay);
  auto none = run_cli({"structural-live", oneway, "--weight-budget", "4"});
  CHECK(none.code == 1);
  CHECK(none.out == "none\n");
  auto jn = run_cli(
      {"structural-live", oneway, "--weight-budget", "4", "--output", "json"});
  CHECK(jn.code == 1);
  CHECK(jparse(jn.out)["found"] == false);
}

TEST_CASE("cli hilbert and minimal-solution commands") {
  std::string m = write_tmp("m.mat", "1 2\n2 -3\n");
  auto hil = run_cli({"hilbert", m});
  CHECK(hil.code == 0);
  CHECK(hil.out == "1 2\n3 2\n");

  auto jh = run_cli({"hilbert", m, "--output", "json"});
  CHECK(jh.code == 0);
  auto hdoc = jparse(jh.out);
  CHECK(hdoc["count"] == 1);
  CHECK(jvecs(hdoc["vectors"]) == std::vector<IntVec>{{3, 2}});

  std::string row = write_tmp("row.mat", "1 2\n1 1\n");
  std::string rhs2 = write_tmp("rhs2.vs", "1 1\n2\n");
  auto eq = run_cli({"minsol-eq", row, rhs2});
  CHECK(eq.code == 0);
  int dim = 0;
  auto sols = cli::parse_vecset(eq.out, &dim);
  std::sort(sols.begin(), sols.end());
  CHECK(dim == 2);
  CHECK(sols == std::vector<IntVec>{{0, 2}, {1, 1}, {2, 0}});

  std::string rhs1 = write_tmp("rhs1.vs", "1 1\n1\n");
  auto geq = run_cli({"minsol-geq", row, rhs1});
  CHECK(geq.code == 0);
  auto gsols = cli::parse_vecset(geq.out, &dim);
  std::sort(gsols.begin(), gsols.end());
  CHECK(gsols == std::vector<IntVec>{{0, 1}, {1, 0}});

  std::string badrhs = write_tmp("badrhs.vs", "2 1\n1\n2\n");
  auto bad = run_cli({"minsol-eq", row, badrhs});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("must hold one vector of 1 entries") != std::string::npos);

  std::string gens = write_tmp("gens.vs", "1 1\n-1\n");
  auto msl = run_cli({"min-sleq", gens});
  CHECK(msl.code == 0);
  auto got = cli::parse_vecset(msl.out, &dim);
  auto want = min_sleq_monoid({IntVec{-1}}, 1);
  CHECK(dim == 1);
  CHECK(got == want);
  CHECK(!got.empty());
}

TEST_CASE("cli solve reports sat and unsat least-norm answers") {
  LinearSystem sat;
  sat.dim = 1;
  Constraint c;
  c.kind = CKind::Eq;
  c.coeffs = {2};
  c.rhs = 4;
  sat.formula = Formula::atom(c);
  std::string satp = write_tmp("sat.sys", to_sexpr(sat));
  auto r = run_cli({"solve", satp});
  CHECK(r.code == 0);
  CHECK(r.out == "sat\nx 2\nnorm 2\n");

  auto j = run_cli({"solve", satp, "--output", "json"});
  CHECK(j.code == 0);
  auto doc = jparse(j.out);
  CHECK(doc["satisfiable"] == true);
  CHECK(jvec(doc["x"]) == IntVec{2});
  CHECK(doc["norm"] == "2");

  c.rhs = 3;
  LinearSystem unsat;
  unsat.dim = 1;
  unsat.formula = Formula::atom(c);
  std::string unsatp = write_tmp("unsat.sys", to_sexpr(unsat));
  auto u = run_cli({"solve", unsatp});
  CHECK(u.code == 1);
  CHECK(u.out == "unsat\n");
  auto ju = run_cli({"solve", unsatp, "--output", "json"});
  CHECK(ju.code == 1);
  CHECK(jparse(ju.out)["satisfiable"] == false);

  std::string mangled = write_tmp("mangled.sys", "(((");
  CHECK(run_cli({"solve", mangled}).code == 2);
}

TEST_CASE("cli encode-lattice and vreach-system emit evaluable systems") {
  std::string gens = write_tmp("lat.vs", "1 1\n2\n");
  auto t = run_cli({"encode-lattice", gens});
  CHECK(t.code == 0);
  CHECK(t.out.front() == '(');

  auto j = run_cli({"encode-lattice", gens, "--output", "json"});
  CHECK(j.code == 0);
  auto doc = jparse(j.out);
  CHECK(doc["dim"] == 1);
  CHECK(doc.contains("norm"));
  CHECK(doc.contains("mlcm"));
  CHECK(doc.contains("bound"));
  CHECK(doc["within_bound"].is_boolean());
  LinearSystem s = parse_sexpr(doc["system"].get<std::string>());
  CHECK(evaluate(s, {4}));
  CHECK(evaluate(s, {-6}));
  CHECK(!evaluate(s, {3}));

  auto v = run_cli(
      {"vreach-system", oracle::fixture("a1.net"), "--output", "json"});
  CHECK(v.code == 0);
  auto vdoc = jparse(v.out);
  CHECK(vdoc["dim"] == 10);
  LinearSystem vs = parse_sexpr(vdoc["system"].get<std::string>());
  CHECK(vs.dim == 10);

  std::string oneway = write_tmp("oneway.net", kOneWay);
  auto bad = run_cli({"vreach-system", oneway});
  CHECK(bad.code == 2);
  CHECK(bad.err.substr(0, 7) == "error: ");
}

TEST_CASE("cli pns-build emits the split that build_pns computes") {
  Net a1 = parse_net_file(read_file(oracle::fixture("a1.net"))).net;
  auto r = run_cli({"pns-build", oracle::fixture("a1.net"), "--scc-from", "x0",
                    "--I", "1,2,3,4"});
  REQUIRE(r.code == 0);
  auto doc = jparse(r.out);
  CHECK(doc["I"] == nlohmann::json({1, 2, 3, 4}));
  CHECK(doc["J"] == nlohmann::json({5}));
  CHECK(doc["states"].size() == 4);
  CHECK(doc["certificate"].size() == 4);

  Pns parsed = pns_from_json(r.out);
  Pns direct = build_pns(a1, kA1Nodes, {0, 1, 2, 3});
  CHECK(parsed.state_dims == direct.state_dims);
  CHECK(parsed.counter_dims == direct.counter_dims);
  CHECK(parsed.states == direct.states);
  CHECK(parsed.edges == direct.edges);
  CHECK(parsed.certificate == direct.certificate);
  CHECK(parsed.norm == direct.norm);

  auto empty = run_cli({"pns-build", oracle::fixture("a1.net"), "--scc-from",
                        "x0", "--I", "-"});
  REQUIRE(empty.code == 0);
  auto edoc = jparse(empty.out);
  CHECK(edoc["I"] == nlohmann::json::array());
  CHECK(edoc["states"].size() == 1);

  std::string fork = write_tmp("fork.net", kFork);
  auto two = run_cli({"pns-build", fork, "--scc-from", "s", "--I", "1"});
  CHECK(two.code == 2);
  CHECK(two.err.find("reaches 2 bottom components") != std::string::npos);

  CHECK(run_cli({"pns-build", oracle::fixture("a1.net"), "--scc-from", "x0",
                 "--I", "0,1"})
            .code == 2);
  CHECK(run_cli({"pns-build", oracle::fixture("a1.net"), "--scc-from", "x0",
                 "--I", "2,1"})
            .code == 2);
}

TEST_CASE("cli simple-cycles prints the cycle net and honors its budget") {
  Net a1 = parse_net_file(read_file(oracle::fixture("a1.net"))).net;
  Pns pns = build_pns(a1, kA1Nodes, {0, 1, 2, 3});
  std::string pj = write_tmp("a1.pns.json", pns_to_json(pns));

  auto r = run_cli({"simple-cycles", pj});
  REQUIRE(r.code == 0);
  Net sc = parse_net_file(r.out).net;
  CHECK(sc.dim() == 1);
  REQUIRE(sc.action_count() == 1);
  CHECK(sc.action(0).pre == IntVec{0});
  CHECK(sc.action(0).post == IntVec{0});

  auto j = run_cli({"simple-cycles", pj, "--output", "json"});
  CHECK(j.code == 0);
  auto doc = jparse(j.out);
  CHECK(doc["dim"] == 1);
  CHECK(doc["actions"] == 1);
  CHECK(parse_net_file(doc["net"].get<std::string>()).net.dim() == 1);

  Net bal = parse_net_file(kBalanced).net;
  Pns bpns = build_pns(bal, {{0, 1, 1}, {1, 0, 0}}, {0, 1});
  std::string bj = write_tmp("balanced.pns.json", pns_to_json(bpns));
  auto tight = run_cli({"simple-cycles", bj, "--cycle-budget", "1"});
  CHECK(tight.code == 3);
  CHECK(tight.err.substr(0, 8) == "budget: ");

  CHECK(run_cli({"simple-cycles", write_tmp("not.json", "{]")}).code == 2);
}

TEST_CASE("cli reduce runs the chain from a presentation") {
  std::string pres = write_tmp("p1.pres", kPres);

  auto norm = run_cli({"reduce", "normalize", pres});
  CHECK(norm.code == 0);
  CHECK(norm.out.rfind("# normalize from " + pres + "\n", 0) == 0);
  CHECK(norm.out.find("letters a b c") != std::string::npos);
  CHECK(norm.out.find("ask a covers b") != std::string::npos);

  auto cover = run_cli({"reduce", "cover", pres});
  REQUIRE(cover.code == 0);
  NetFile cf = parse_net_file(cover.out);
  CHECK(cf.net.dim() == 3);
  CHECK(cf.net.action_count() == 2);
  CHECK(cf.marking("init") != IntVec(3, 0));
  CHECK(cf.marking("cov") != IntVec(3, 0));

  auto scover = run_cli({"reduce", "scover", pres});
  REQUIRE(scover.code == 0);
  NetFile sf = parse_net_file(scover.out);
  CHECK(sf.net.dim() == 6);
  CHECK(sf.net.action_count() == 8);

  auto pps = run_cli({"reduce", "ppscover", pres});
  REQUIRE(pps.code == 0);
  NetFile pf = parse_net_file(pps.out);
  CHECK(pf.net.dim() == 10);
  CHECK(pf.net.action_count() == 14);

  auto sl = run_cli({"reduce", "sl", pres});
  REQUIRE(sl.code == 0);
  CHECK(sl.out.rfind("# sl from " + pres + "\n", 0) == 0);
  CHECK(sl.out.find("# certificate: sl:cov sl:a1 sl:a3 sl:a2 sl:a2 sl:a3 "
                    "sl:inc:cov'\n") != std::string::npos);
  NetFile lf = parse_net_file(sl.out);
  CHECK(lf.net.dim() == 13);
  CHECK(lf.net.action_count() == 39);
  CHECK(norm_one(lf.marking("witness")) == 12);
  CHECK(norm_one(lf.marking("init")) == 1);
  CHECK(norm_one(lf.marking("cov")) == 1);
  CHECK(norm_one(lf.marking("store")) == 1);

  auto jc = run_cli({"reduce", "cover", pres, "--output", "json"});
  CHECK(jc.code == 0);
  auto doc = jparse(jc.out);
  CHECK(doc["stage"] == "cover");
  CHECK(doc["output"].get<std::string>().rfind("# cover from ", 0) == 0);
}

TEST_CASE("cli reduce runs single stages on instance net files") {
  SemigroupPresentation p = normalize_presentation(parse_presentation(kPres));
  CoverInstance cov = semigroup_to_cover(p);
  std::string covp =
      write_tmp("cover.net", write_net_file(instance_to_netfile(cov)));

  auto sc = run_cli({"reduce", "scover", covp});
  REQUIRE(sc.code == 0);
  NetFile sf = parse_net_file(sc.out);
  CHECK(sf.net.dim() == 6);
  CHECK(sf.net.action_count() == 8);

  CoverInstance scov = cover_to_scover(cov);
  std::string scovp =
      write_tmp("scover.net", write_net_file(instance_to_netfile(scov)));
  auto pps = run_cli({"reduce", "ppscover", scovp});
  REQUIRE(pps.code == 0);
  CHECK(parse_net_file(pps.out).net.dim() == 10);

  CoverInstance ppsc = scover_to_ppscover(scov);
  std::string ppscp =
      write_tmp("ppscover.net", write_net_file(instance_to_netfile(ppsc)));
  auto sl = run_cli({"reduce", "sl", ppscp});
  REQUIRE(sl.code == 0);
  NetFile lf = parse_net_file(sl.out);
  CHECK(lf.net.dim() == 13);
  CHECK(norm_one(lf.marking("witness")) == 12);

  std::string scnet =
      write_tmp("scover-plain.net", write_net_file({scov.net, {}}));
  auto pp = run_cli({"reduce", "pp", scnet});
  REQUIRE(pp.code == 0);
  NetFile ppf = parse_net_file(pp.out);
  CHECK(ppf.net.dim() == 8);
  CHECK(ppf.net.action_count() == 10);
  CHECK(norm_one(ppf.marking("run")) == 1);

  std::string pres = write_tmp("p1.pres", kPres);
  auto wrongpp = run_cli({"reduce", "pp", pres});
  CHECK(wrongpp.code == 2);
  CHECK(wrongpp.err.find("stage pp takes a net file, not a presentation") !=
        std::string::npos);
  auto wrongnorm = run_cli({"reduce", "normalize", covp});
  CHECK(wrongnorm.code == 2);
  CHECK(wrongnorm.err.find(
            "stage normalize takes a presentation, not a net file") !=
        std::string::npos);
  auto unknown = run_cli({"reduce", "bogus", pres});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown stage 'bogus'") != std::string::npos);
}

TEST_CASE("cli bounds evaluates formulas by id") {
  auto pot = run_cli({"bounds", "pottier", "--param", "B1=3", "--param", "r=1"});
  CHECK(pot.code == 0);
  CHECK(pot.out == "4\n");

  auto jp = run_cli({"bounds", "pottier", "--param", "B1=3", "--param", "r=1",
                     "--output", "json"});
  CHECK(jp.code == 0);
  auto pdoc = jparse(jp.out);
  CHECK(pdoc["id"] == "pottier");
  CHECK(pdoc["value"] == "4");

  auto rg = run_cli({"bounds", "rackoff_g", "--param", "m=2", "--param", "d=2"});
  CHECK(rg.code == 0);
  CHECK(rg.out == "0 2 38\n");
  auto jrg = run_cli({"bounds", "rackoff_g", "--param", "m=2", "--param", "d=2",
                      "--output", "json"});
  CHECK(jrg.code == 0);
  auto rdoc = jparse(jrg.out);
  CHECK(rdoc["sequence"] == nlohmann::json({"0", "2", "38"}));

  CHECK(run_cli({"bounds", "nosuch_formula"}).code == 2);
  CHECK(run_cli({"bounds", "pottier", "--param", "B1=3"}).code == 2);

  auto badp = run_cli({"bounds", "pottier", "--param", "r"});
  CHECK(badp.code == 2);
  CHECK(badp.err.find("bad parameter 'r' (expected name=value)") !=
        std::string::npos);
  auto badv = run_cli({"bounds", "pottier", "--param", "r=x"});
  CHECK(badv.code == 2);
  CHECK(badv.err.find("bad value 'x' for parameter 'r'") != std::string::npos);
}

TEST_CASE("cli grid parsing accepts comments and rejects malformed input") {
  int dim = -1;
  auto rows = cli::parse_vecset("# note\n1 2\n\n3 4 # trailing\n", &dim);
  CHECK(dim == 2);
  CHECK(rows == std::vector<IntVec>{{3, 4}});

  Matrix m = cli::parse_matrix("2 2\n1 -1\n0 3\n");
  CHECK(m.rows == 2);
  CHECK(m.cols == 2);
  CHECK(m.a[1] == IntVec{0, 3});
  CHECK(cli::parse_matrix(cli::write_matrix(m)).a == m.a);

  CHECK(cli::write_vecset({}, 3) == "0 3\n");
  CHECK(cli::parse_vecset("0 3\n", &dim).empty());
  CHECK(dim == 3);

  CHECK_THROWS_WITH_AS(cli::parse_vecset("", &dim),
                       "missing 'm n' header line", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("1\n", &dim),
                       "line 1: expected header 'm n'", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("1 2 3\n", &dim),
                       "line 1: expected header 'm n'", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("-1 2\n", &dim),
                       "line 1: bad header", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("1 2\n1\n", &dim),
                       "line 2: expected 2 integers", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("1 2\n1 2\n3 4\n", &dim),
                       "line 3: more than 1 rows", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("2 2\n1 2\n", &dim),
                       "expected 2 rows, got 1", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("1 1\nx\n", &dim),
                       "line 2: expected integer, got 'x'", ParseError);
  CHECK_THROWS_WITH_AS(cli::parse_vecset("1 1\n-\n", &dim),
                       "line 2: expected integer, got '-'", ParseError);
}

TEST_CASE("json outputs carry the keys the schemas require") {
  auto keys_ok = [&](const std::string& schema_file, const nlohmann::json& doc) {
    auto schema =
        jparse(read_file(oracle::fixture("../schemas/" + schema_file)));
    REQUIRE(schema.contains("required"));
    for (const auto& k : schema["required"]) {
      INFO(schema_file, " requires ", k.get<std::string>());
      CHECK(doc.contains(k.get<std::string>()));
    }
  };
  std::string a1 = oracle::fixture("a1.net");

  keys_ok("check.schema.json",
          jparse(run_cli({"check", a1, "--output", "json"}).out));
  keys_ok("live.schema.json",
          jparse(run_cli({"live", a1, "--marking", "x0", "--output", "json"}).out));
  keys_ok("structural-live.schema.json",
          jparse(run_cli({"structural-live", a1, "--output", "json"}).out));

  std::string mat = write_tmp("schema.mat", "1 2\n2 -3\n");
  keys_ok("vecset.schema.json",
          jparse(run_cli({"hilbert", mat, "--output", "json"}).out));

  LinearSystem sys;
  sys.dim = 1;
  Constraint c;
  c.coeffs = {1};
  c.rhs = 0;
  sys.formula = Formula::atom(c);
  std::string sysp = write_tmp("schema.sys", to_sexpr(sys));
  keys_ok("solve.schema.json",
          jparse(run_cli({"solve", sysp, "--output", "json"}).out));

  std::string gens = write_tmp("schema.vs", "1 1\n2\n");
  keys_ok("system.schema.json",
          jparse(run_cli({"encode-lattice", gens, "--output", "json"}).out));

  std::string gj = (tmp_root() / "schema.graph.json").string();
  run_cli({"live", a1, "--marking", "x0", "--graph-json", gj});
  keys_ok("graph.schema.json", jparse(read_file(gj)));

  auto pns = run_cli({"pns-build", a1, "--scc-from", "x0", "--I", "1,2,3,4"});
  REQUIRE(pns.code == 0);
  keys_ok("pns.schema.json", jparse(pns.out));

  std::string pj = write_tmp("schema.pns.json", pns.out);
  keys_ok("cycles.schema.json",
          jparse(run_cli({"simple-cycles", pj, "--output", "json"}).out));

  std::string pres = write_tmp("schema.pres", kPres);
  keys_ok("reduce.schema.json",
          jparse(run_cli({"reduce", "cover", pres, "--output", "json"}).out));

  keys_ok("bounds.schema.json",
          jparse(run_cli({"bounds", "pottier", "--param", "B1=2", "--param",
                          "r=2", "--output", "json"})
                     .out));
}
