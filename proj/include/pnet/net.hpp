#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnet/vec.hpp"

namespace pnet {

// An action consumes `pre` and produces `post`, both componentwise.
struct Action {
  std::string name;
  IntVec pre;
  IntVec post;

  IntVec displacement() const { return vsub(post, pre); }
};

class Net {
 public:
  Net() : Net(0, "net") {}
  Net(int dim, std::string name = "net");

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::vector<Action>& actions() const { return actions_; }
  const Action& action(int i) const { return actions_.at(i); }
  int action_count() const { return static_cast<int>(actions_.size()); }
  // validates dimensions and nonnegativity, rejects duplicate names
  void add_action(Action a);
  std::optional<int> action_index(const std::string& name) const;

  bool has_place_names() const { return !place_names_.empty(); }
  const std::vector<std::string>& place_names() const { return place_names_; }
  void set_place_names(std::vector<std::string> names);
  const std::string& place_name(int i) const { return place_names_.at(i); }

 private:
  int dim_;
  std::string name_;
  std::vector<Action> actions_;
  std::vector<std::string> place_names_;  // empty or size dim_
};

bool enabled(const Net& net, const IntVec& x, int action);
std::vector<int> enabled_actions(const Net& net, const IntVec& x);
// fires one action; nullopt when not enabled
std::optional<IntVec> step(const Net& net, const IntVec& x, int action);
IntVec displacement_of_sequence(const Net& net, const std::vector<int>& seq);
// keep only the coordinates in I (0-based ascending, duplicates rejected)
Net restrict_net(const Net& net, const std::vector<int>& I);
// largest entry appearing in any pre/post vector; 0 for no actions
Int net_norm(const Net& net);
Int displacement_norm(const Net& net);

struct NetFile {
  Net net;
  std::vector<std::pair<std::string, IntVec>> markings;

  const IntVec& marking(const std::string& name) const;
};

NetFile parse_net_file(const std::string& text);
std::string write_net_file(const NetFile& file);

}  // namespace pnet
