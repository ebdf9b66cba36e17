#pragma once

#include "availkit/model.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace availkit {

/// Flattened boolean structure function of a model over its basic events.
///
/// Leaves are numbered by position in `basic_events(model)`, so shared
/// leaves map to the same index. For an ABD a leaf is true when the
/// component is up and the root is true when the system is up; for a fault
/// tree a leaf is true when the component is down and the root is true when
/// the system is unavailable.
class StructureFunction {
 public:
  explicit StructureFunction(const SystemModel& model)
      : events_(basic_events(model)), abd_(model.is_abd()) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < events_.size(); ++i) index[events_[i]] = i;
    if (abd_)
      root_ = compile(model.abd(), index);
    else
      root_ = compile(model.ft(), index);
  }

  const std::vector<std::string>& events() const { return events_; }
  bool is_abd() const { return abd_; }

  /// Evaluates the root; `leaf(i)` gives the truth value of event i.
  template <class LeafValue>
  bool operator()(LeafValue&& leaf) const {
    return eval(root_, leaf);
  }

  /// Value of the reported quantity for the given component up/down states:
  /// "system up" for an ABD, "top event occurs" for a fault tree.
  bool measured(const std::vector<char>& up) const {
    if (abd_) return eval(root_, [&](std::size_t i) { return up[i] != 0; });
    return eval(root_, [&](std::size_t i) { return up[i] == 0; });
  }

 private:
  enum class Op { leaf, all, any, none, nand, exactly_one, negate };

  struct Node {
    Op op = Op::leaf;
    std::size_t event = 0;
    std::vector<std::size_t> kids;
    std::vector<std::size_t> negated;
  };

  std::size_t compile(const Block& b, const std::map<std::string, std::size_t>& index) {
    Node n;
    if (b.kind == Block::Kind::unit) {
      n.event = index.at(b.id);
    } else {
      n.op = b.kind == Block::Kind::series ? Op::all : Op::any;
      for (const auto& c : b.children) n.kids.push_back(compile(c, index));
    }
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t compile(const Gate& g, const std::map<std::string, std::size_t>& index) {
    Node n;
    switch (g.kind) {
      case Gate::Kind::basic: n.event = index.at(g.id); break;
      case Gate::Kind::and_: n.op = Op::all; break;
      case Gate::Kind::or_: n.op = Op::any; break;
      case Gate::Kind::nor: n.op = Op::none; break;
      case Gate::Kind::nand: n.op = Op::nand; break;
      case Gate::Kind::xor_: n.op = Op::exactly_one; break;
      case Gate::Kind::not_: n.op = Op::negate; break;
    }
    for (const auto& c : g.negated) n.negated.push_back(compile(c, index));
    for (const auto& c : g.inputs) n.kids.push_back(compile(c, index));
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  template <class LeafValue>
  bool eval(std::size_t at, const LeafValue& leaf) const {
    const Node& n = nodes_[at];
    auto value = [&](std::size_t k) { return eval(k, leaf); };
    switch (n.op) {
      case Op::leaf: return leaf(n.event);
      case Op::all: return std::all_of(n.kids.begin(), n.kids.end(), value);
      case Op::any: return std::any_of(n.kids.begin(), n.kids.end(), value);
      case Op::none: return std::none_of(n.kids.begin(), n.kids.end(), value);
      case Op::nand:
        return std::none_of(n.negated.begin(), n.negated.end(), value) &&
               std::all_of(n.kids.begin(), n.kids.end(), value);
      case Op::exactly_one: return value(n.kids[0]) != value(n.kids[1]);
      case Op::negate: return !value(n.kids[0]);
    }
    return false;
  }

  std::vector<std::string> events_;
  bool abd_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

}  // namespace availkit
