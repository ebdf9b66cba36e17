#pragma once

#include "availkit/error.hpp"
#include "availkit/model.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace availkit::cutsets {

/// Sorted, duplicate-free event ids whose joint occurrence causes the top event.
using CutSet = std::vector<std::string>;

struct CutSetCollection {
  std::vector<CutSet> sets;
  bool minimized = false;

  std::size_t size() const { return sets.size(); }
  friend bool operator==(const CutSetCollection&, const CutSetCollection&) = default;
};

struct ExpandOptions {
  std::size_t max_cutsets = 4096;
};

/// Size first, then lexicographic on the sorted ids.
inline bool canonical_less(const CutSet& a, const CutSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline void canonicalize(std::vector<CutSet>& sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end(), canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

namespace detail {

inline std::vector<CutSet> expand(const Gate& g, const std::string& path, const ExpandOptions& opt) {
  auto check_bound = [&](std::size_t n) {
    if (n > opt.max_cutsets)
      throw LimitExceeded("cut-set expansion exceeds the bound of " +
                          std::to_string(opt.max_cutsets) + " cut sets at " + path);
  };
  switch (g.kind) {
    case Gate::Kind::basic: return {CutSet{g.id}};
    case Gate::Kind::or_: {
      std::vector<CutSet> out;
      for (std::size_t i = 0; i < g.inputs.size(); ++i) {
        auto part = expand(g.inputs[i], path + "/" + std::to_string(i), opt);
        out.insert(out.end(), part.begin(), part.end());
        canonicalize(out);
        check_bound(out.size());
      }
      return out;
    }
    case Gate::Kind::and_: {
      std::vector<CutSet> out{CutSet{}};
      for (std::size_t i = 0; i < g.inputs.size(); ++i) {
        auto part = expand(g.inputs[i], path + "/" + std::to_string(i), opt);
        check_bound(out.size() * part.size());
        std::vector<CutSet> next;
        next.reserve(out.size() * part.size());
        for (const auto& left : out) {
          for (const auto& right : part) {
            CutSet merged;
            std::set_union(left.begin(), left.end(), right.begin(), right.end(),
                           std::back_inserter(merged));
            next.push_back(std::move(merged));
          }
        }
        canonicalize(next);
        out = std::move(next);
      }
      return out;
    }
    default: {
      std::string where = path;
      if (g.span) where += " (line " + std::to_string(g.span->line) + ", column " +
                           std::to_string(g.span->column) + ")";
      throw NonCoherentTree("non-coherent tree: " + std::string(kind_name(g.kind)) +
                            " gate at " + where);
    }
  }
}

}  // namespace detail

/// Expands a coherent tree into an equivalent disjunction of cut sets
/// (not minimized). Throws NonCoherentTree or LimitExceeded.
inline CutSetCollection expand_to_cutsets(const Gate& ft, const ExpandOptions& opt = {}) {
  CutSetCollection out{detail::expand(ft, "body", opt), false};
  canonicalize(out.sets);
  return out;
}

/// Removes duplicates and every cut set that contains another.
inline CutSetCollection minimize(const CutSetCollection& cs) {
  std::vector<CutSet> sorted = cs.sets;
  canonicalize(sorted);
  CutSetCollection out{{}, true};
  for (auto& candidate : sorted) {
    bool absorbed = std::any_of(out.sets.begin(), out.sets.end(), [&](const CutSet& kept) {
      return std::includes(candidate.begin(), candidate.end(), kept.begin(), kept.end());
    });
    if (!absorbed) out.sets.push_back(std::move(candidate));
  }
  return out;
}

/// Cut sets of a model's unavailability: the tree itself for a fault tree,
/// the failure tree for an ABD.
inline CutSetCollection model_cutsets(const SystemModel& model, const ExpandOptions& opt = {}) {
  if (model.is_ft()) return expand_to_cutsets(model.ft(), opt);
  return expand_to_cutsets(failure_tree(model.abd()), opt);
}

/// `{a,b}` style rendering.
inline std::string to_string(const CutSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
  return out + "}";
}

}  // namespace availkit::cutsets
