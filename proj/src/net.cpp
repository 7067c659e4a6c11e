#include "pnet/net.hpp"

#include <algorithm>
#include <sstream>

#include "pnet/error.hpp"

namespace pnet {

Net::Net(int dim, std::string name) : dim_(dim), name_(std::move(name)) {
  if (dim_ < 0) throw DimensionError("net dimension must be nonnegative");
}

void Net::add_action(Action a) {
  if (a.pre.size() != static_cast<size_t>(dim_) ||
      a.post.size() != static_cast<size_t>(dim_))
    throw DimensionError("action '" + a.name + "': vector length != places");
  if (!is_nonneg(a.pre) || !is_nonneg(a.post))
    throw ParseError("action '" + a.name + "': negative entry");
  if (a.name.empty()) throw ParseError("action with empty name");
  if (action_index(a.name))
    throw ParseError("duplicate action name '" + a.name + "'");
  actions_.push_back(std::move(a));
}

std::optional<int> Net::action_index(const std::string& name) const {
  for (size_t i = 0; i < actions_.size(); ++i)
    if (actions_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

void Net::set_place_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != static_cast<size_t>(dim_))
    throw DimensionError("place name list length != places");
  place_names_ = std::move(names);
}

bool enabled(const Net& net, const IntVec& x, int action) {
  const Action& a = net.action(action);
  if (x.size() != static_cast<size_t>(net.dim()))
    throw DimensionError("enabled: marking length != places");
  return leq(a.pre, x);
}

std::vector<int> enabled_actions(const Net& net, const IntVec& x) {
  std::vector<int> out;
  for (int i = 0; i < net.action_count(); ++i)
    if (enabled(net, x, i)) out.push_back(i);
  return out;
}

std::optional<IntVec> step(const Net& net, const IntVec& x, int action) {
  if (!enabled(net, x, action)) return std::nullopt;
  const Action& a = net.action(action);
  return vadd(vsub(x, a.pre), a.post);
}

IntVec displacement_of_sequence(const Net& net, const std::vector<int>& seq) {
  IntVec d(net.dim(), 0);
  for (int i : seq) d = vadd(d, net.action(i).displacement());
  return d;
}

Net restrict_net(const Net& net, const std::vector<int>& I) {
  for (size_t k = 0; k < I.size(); ++k) {
    if (I[k] < 0 || I[k] >= net.dim())
      throw DimensionError("restrict: index out of range");
    if (k > 0 && I[k] <= I[k - 1])
      throw DimensionError("restrict: indices must be strictly ascending");
  }
  Net out(static_cast<int>(I.size()), net.name());
  if (net.has_place_names()) {
    std::vector<std::string> names;
    for (int i : I) names.push_back(net.place_name(i));
    out.set_place_names(std::move(names));
  }
  for (const Action& a : net.actions())
    out.add_action({a.name, project(a.pre, I), project(a.post, I)});
  return out;
}

Int net_norm(const Net& net) {
  Int m = 0;
  for (const Action& a : net.actions())
    m = std::max({m, norm_inf(a.pre), norm_inf(a.post)});
  return m;
}

Int displacement_norm(const Net& net) {
  Int m = 0;
  for (const Action& a : net.actions())
    m = std::max(m, norm_inf(a.displacement()));
  return m;
}

const IntVec& NetFile::marking(const std::string& name) const {
  for (const auto& [n, v] : markings)
    if (n == name) return v;
  throw Error("no marking named '" + name + "'");
}

namespace {

// one input line, split on whitespace, '#' starts a comment
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
  try {
    size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) throw std::invalid_argument("sign only");
    for (; i < tok.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(tok[i])))
        throw std::invalid_argument("non-digit");
    return Int(tok);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineno) + ": expected integer, got '" + tok + "'");
  }
}

IntVec parse_int_tokens(const std::vector<std::string>& toks, size_t from,
                        size_t count, int lineno) {
  IntVec v;
  v.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    if (from + k >= toks.size())
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(count) + " integers");
    v.push_back(parse_int_token(toks[from + k], lineno));
  }
  if (from + count != toks.size())
    throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
  return v;
}

}  // namespace

NetFile parse_net_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  std::optional<std::string> name;
  std::optional<int> places;
  std::vector<std::string> place_names;
  NetFile out;
  std::vector<Action> actions;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of_line(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "net") {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(lineno) + ": net <name>");
      if (name) throw ParseError("line " + std::to_string(lineno) + ": duplicate net line");
      name = toks[1];
    } else if (kw == "places") {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(lineno) + ": places <d>");
      Int d = parse_int_token(toks[1], lineno);
      if (d < 0 || d > 100000)
        throw ParseError("line " + std::to_string(lineno) + ": bad place count");
      if (places) throw ParseError("line " + std::to_string(lineno) + ": duplicate places line");
      places = static_cast<int>(d);
    } else if (kw == "place") {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(lineno) + ": place <name>");
      place_names.push_back(toks[1]);
    } else if (kw == "action") {
      if (!places)
        throw ParseError("line " + std::to_string(lineno) + ": action before places");
      size_t d = static_cast<size_t>(*places);
      // action <name> <pre...> -> <post...>
      if (toks.size() != 3 + 2 * d)
        throw ParseError("line " + std::to_string(lineno) +
                         ": action <name> <" + std::to_string(d) +
                         " ints> -> <" + std::to_string(d) + " ints>");
      if (toks[2 + d] != "->")
        throw ParseError("line " + std::to_string(lineno) + ": expected '->', got '" +
                         toks[2 + d] + "'");
      Action a;
      a.name = toks[1];
      for (size_t k = 0; k < d; ++k) a.pre.push_back(parse_int_token(toks[2 + k], lineno));
      for (size_t k = 0; k < d; ++k) a.post.push_back(parse_int_token(toks[3 + d + k], lineno));
      if (!is_nonneg(a.pre) || !is_nonneg(a.post))
        throw ParseError("line " + std::to_string(lineno) + ": negative action entry");
      actions.push_back(std::move(a));
    } else if (kw == "marking") {
      if (!places)
        throw ParseError("line " + std::to_string(lineno) + ": marking before places");
      if (toks.size() < 2)
        throw ParseError("line " + std::to_string(lineno) + ": marking <name> <ints>");
      IntVec v = parse_int_tokens(toks, 2, static_cast<size_t>(*places), lineno);
      if (!is_nonneg(v))
        throw ParseError("line " + std::to_string(lineno) + ": negative marking entry");
      for (const auto& [n, _] : out.markings)
        if (n == toks[1])
          throw ParseError("line " + std::to_string(lineno) + ": duplicate marking '" + toks[1] + "'");
    out.markings.emplace_back(toks[1], std::move(v));
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
    }
  }
  if (!places) throw ParseError("missing places line");
  out.net = Net(*places, name.value_or("net"));
  if (!place_names.empty()) {
    if (place_names.size() != static_cast<size_t>(*places))
      throw ParseError("place name lines do not match place count");
    out.net.set_place_names(place_names);
  }
  try {
    for (Action& a : actions) out.net.add_action(std::move(a));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string write_net_file(const NetFile& file) {
  std::ostringstream os;
  os << "net " << file.net.name() << "\n";
  os << "places " << file.net.dim() << "\n";
  if (file.net.has_place_names())
    for (const std::string& n : file.net.place_names()) os << "place " << n << "\n";
  for (const Action& a : file.net.actions()) {
    os << "action " << a.name;
    for (const Int& v : a.pre) os << " " << v;
    os << " ->";
    for (const Int& v : a.post) os << " " << v;
    os << "\n";
  }
  for (const auto& [n, v] : file.markings) {
    os << "marking " << n;
    for (const Int& x : v) os << " " << x;
    os << "\n";
  }
  return os.str();
}

}  // namespace pnet
