#pragma once

#include "availkit/error.hpp"
#include "availkit/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace availkit {

/// Position of a token in model text: 1-based line and column, 0-based byte offset.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Failure rate `lambda` and repair rate `mu` of an exponential component,
/// both per unit time and held exactly.
struct RatePair {
  Rational lambda;
  Rational mu;

  bool valid() const { return lambda > 0 && mu > 0; }

  Rational mttf() const { return 1 / lambda; }
  Rational mttr() const { return 1 / mu; }
  Rational mtbf() const { return mttf() + mttr(); }

  /// Throws InvalidArgument unless both rates are strictly positive.
  void require_valid() const {
    if (!valid()) throw InvalidArgument("rates must be strictly positive");
  }

  static RatePair from_mttf_mttr(const Rational& mttf, const Rational& mttr) {
    return RatePair{1 / mttf, 1 / mttr};
  }

  friend bool operator==(const RatePair&, const RatePair&) = default;
};

struct ComponentDef {
  std::string id;
  RatePair rates;
  std::optional<SourceSpan> span{};

  friend bool operator==(const ComponentDef& a, const ComponentDef& b) {
    return a.id == b.id && a.rates == b.rates;
  }
};

/// Availability block diagram node. A `unit` is up when its component is up.
struct Block {
  enum class Kind { unit, series, parallel };

  Kind kind = Kind::unit;
  std::string id;               // unit only
  std::vector<Block> children;  // series / parallel
  std::optional<SourceSpan> span{};

  static Block unit(std::string id) { return Block{Kind::unit, std::move(id), {}}; }
  static Block series(std::vector<Block> c) { return Block{Kind::series, {}, std::move(c)}; }
  static Block parallel(std::vector<Block> c) { return Block{Kind::parallel, {}, std::move(c)}; }

  friend bool operator==(const Block& a, const Block& b) {
    return a.kind == b.kind && a.id == b.id && a.children == b.children;
  }
};

/// Unavailability fault tree node. A `basic` event occurs when its
/// component is down; the root occurs when the system is unavailable.
///
/// `inputs` holds the operands of and/or/nor/xor/not and the plain group of
/// nand; `negated` holds nand's complemented group.
struct Gate {
  enum class Kind { basic, and_, or_, nand, nor, xor_, not_ };

  Kind kind = Kind::basic;
  std::string id;  // basic only
  std::vector<Gate> inputs;
  std::vector<Gate> negated;
  std::optional<SourceSpan> span{};

  static Gate basic(std::string id) { return Gate{Kind::basic, std::move(id), {}, {}}; }
  static Gate and_of(std::vector<Gate> c) { return Gate{Kind::and_, {}, std::move(c), {}}; }
  static Gate or_of(std::vector<Gate> c) { return Gate{Kind::or_, {}, std::move(c), {}}; }
  static Gate nor_of(std::vector<Gate> c) { return Gate{Kind::nor, {}, std::move(c), {}}; }
  static Gate nand_of(std::vector<Gate> neg, std::vector<Gate> plain) {
    return Gate{Kind::nand, {}, std::move(plain), std::move(neg)};
  }
  static Gate xor_of(Gate a, Gate b) {
    std::vector<Gate> c;
    c.push_back(std::move(a));
    c.push_back(std::move(b));
    return Gate{Kind::xor_, {}, std::move(c), {}};
  }
  static Gate not_of(Gate a) {
    std::vector<Gate> c;
    c.push_back(std::move(a));
    return Gate{Kind::not_, {}, std::move(c), {}};
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.id == b.id && a.inputs == b.inputs && a.negated == b.negated;
  }
};

inline std::string_view kind_name(Block::Kind k) {
  switch (k) {
    case Block::Kind::unit: return "unit";
    case Block::Kind::series: return "series";
    case Block::Kind::parallel: return "parallel";
  }
  return "?";
}

inline std::string_view kind_name(Gate::Kind k) {
  switch (k) {
    case Gate::Kind::basic: return "basic";
    case Gate::Kind::and_: return "and";
    case Gate::Kind::or_: return "or";
    case Gate::Kind::nand: return "nand";
    case Gate::Kind::nor: return "nor";
    case Gate::Kind::xor_: return "xor";
    case Gate::Kind::not_: return "not";
  }
  return "?";
}

struct SystemModel {
  std::string name;
  std::vector<ComponentDef> components;  // declaration order
  std::variant<Block, Gate> body;

  bool is_abd() const { return std::holds_alternative<Block>(body); }
  bool is_ft() const { return std::holds_alternative<Gate>(body); }
  const Block& abd() const { return std::get<Block>(body); }
  const Gate& ft() const { return std::get<Gate>(body); }

  const ComponentDef* find(std::string_view id) const {
    auto it = std::find_if(components.begin(), components.end(),
                           [&](const ComponentDef& c) { return c.id == id; });
    return it == components.end() ? nullptr : &*it;
  }

  /// Throws ResolutionError for an undeclared id.
  const RatePair& rates(std::string_view id) const {
    if (const auto* c = find(id)) return c->rates;
    throw ResolutionError("unknown component '" + std::string(id) + "'");
  }

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

struct Diagnostic {
  std::string message;
  std::string path;  // slash-separated position in the model, e.g. "body/2/0"
  std::optional<SourceSpan> span{};
};

inline bool is_identifier(std::string_view s) {
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (s.empty() || !head(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return head(c) || (c >= '0' && c <= '9'); });
}

namespace detail {

template <class Node, class Visit>
void for_each_leaf(const Node& n, Visit&& visit) {
  if constexpr (std::is_same_v<Node, Block>) {
    if (n.kind == Block::Kind::unit) return visit(n);
    for (const auto& c : n.children) for_each_leaf(c, visit);
  } else {
    if (n.kind == Gate::Kind::basic) return visit(n);
    for (const auto& c : n.negated) for_each_leaf(c, visit);
    for (const auto& c : n.inputs) for_each_leaf(c, visit);
  }
}

inline void check_leaf(const SystemModel& m, const std::string& id, const std::string& path,
                       const std::optional<SourceSpan>& span, std::vector<Diagnostic>& out) {
  if (!m.find(id)) out.push_back({"unknown component reference '" + id + "'", path, span});
}

inline void validate_block(const SystemModel& m, const Block& b, const std::string& path,
                           std::vector<Diagnostic>& out) {
  if (b.kind == Block::Kind::unit) return check_leaf(m, b.id, path, b.span, out);
  if (b.children.empty())
    out.push_back({std::string(kind_name(b.kind)) + " block has no children", path, b.span});
  for (std::size_t i = 0; i < b.children.size(); ++i)
    validate_block(m, b.children[i], path + "/" + std::to_string(i), out);
}

inline void validate_gate(const SystemModel& m, const Gate& g, const std::string& path,
                          std::vector<Diagnostic>& out) {
  using K = Gate::Kind;
  if (g.kind == K::basic) return check_leaf(m, g.id, path, g.span, out);
  std::string name(kind_name(g.kind));
  std::size_t n = g.inputs.size();
  if (g.kind == K::xor_ && n != 2)
    out.push_back({"xor gate needs exactly 2 operands, got " + std::to_string(n), path, g.span});
  else if (g.kind == K::not_ && n != 1)
    out.push_back({"not gate needs exactly 1 operand, got " + std::to_string(n), path, g.span});
  else if (n == 0)
    out.push_back({name + " gate has no " + (g.kind == K::nand ? "plain operands" : "operands"),
                   path, g.span});
  if (g.kind == K::nand && g.negated.empty())
    out.push_back({"nand gate has no negated operands", path, g.span});
  if (g.kind != K::nand && !g.negated.empty())
    out.push_back({name + " gate cannot have negated operands", path, g.span});

  std::string in_prefix = g.kind == K::nand ? path + "/pos/" : path + "/";
  for (std::size_t i = 0; i < g.negated.size(); ++i)
    validate_gate(m, g.negated[i], path + "/neg/" + std::to_string(i), out);
  for (std::size_t i = 0; i < g.inputs.size(); ++i)
    validate_gate(m, g.inputs[i], in_prefix + std::to_string(i), out);
}

}  // namespace detail

/// Checks every structural invariant of a model. Empty result means valid.
inline std::vector<Diagnostic> validate(const SystemModel& model) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const auto& c : model.components) {
    std::string path = "components/" + c.id;
    if (!is_identifier(c.id))
      out.push_back({"invalid component id '" + c.id + "'", path, c.span});
    if (!seen.insert(c.id).second)
      out.push_back({"duplicate component id '" + c.id + "'", path, c.span});
    if (c.rates.lambda <= 0)
      out.push_back({"nonpositive failure rate at " + c.id, path, c.span});
    if (c.rates.mu <= 0)
      out.push_back({"nonpositive repair rate at " + c.id, path, c.span});
  }
  if (model.is_abd())
    detail::validate_block(model, model.abd(), "body", out);
  else
    detail::validate_gate(model, model.ft(), "body", out);
  return out;
}

/// Distinct leaf ids in document order.
inline std::vector<std::string> basic_events(const SystemModel& model) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto visit = [&](const auto& leaf) {
    if (seen.insert(leaf.id).second) out.push_back(leaf.id);
  };
  std::visit([&](const auto& root) { detail::for_each_leaf(root, visit); }, model.body);
  return out;
}

/// True iff no component id appears at more than one leaf.
inline bool leaves_distinct(const SystemModel& model) {
  std::size_t leaves = 0;
  std::visit([&](const auto& root) { detail::for_each_leaf(root, [&](const auto&) { ++leaves; }); },
             model.body);
  return leaves == basic_events(model).size();
}

/// Coherent trees use only basic, and, or.
inline bool is_coherent(const Gate& g) {
  switch (g.kind) {
    case Gate::Kind::basic: return true;
    case Gate::Kind::and_:
    case Gate::Kind::or_:
      return std::all_of(g.inputs.begin(), g.inputs.end(),
                         [](const Gate& c) { return is_coherent(c); });
    default: return false;
  }
}

/// The unavailability tree of an ABD: a unit fails with its component,
/// a series block fails when any child fails, a parallel block when all do.
inline Gate failure_tree(const Block& b) {
  switch (b.kind) {
    case Block::Kind::unit: return Gate::basic(b.id);
    case Block::Kind::series:
    case Block::Kind::parallel: {
      std::vector<Gate> c;
      c.reserve(b.children.size());
      for (const auto& child : b.children) c.push_back(failure_tree(child));
      return b.kind == Block::Kind::series ? Gate::or_of(std::move(c)) : Gate::and_of(std::move(c));
    }
  }
  return Gate{};
}

}  // namespace availkit
