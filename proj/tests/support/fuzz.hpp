#pragma once

// Generated valid model files and invalidating mutations of them.

#include "availkit/modelfile.hpp"
#include "support/generators.hpp"

#include <map>
#include <string>

namespace availkit::testing {

inline std::string random_identifier(Rng& rng) {
  static const std::string head = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_";
  static const std::string tail = head + "0123456789";
  static const char* keywords[] = {"unit", "basic", "and", "or", "neg", "pos", "lambda", "mu", "model"};
  if (pick(rng, 0, 9) == 0) return keywords[pick(rng, 0, 8)];
  std::string id(1, head[pick(rng, 0, head.size() - 1)]);
  for (std::size_t i = 0, n = pick(rng, 0, 7); i < n; ++i) id += tail[pick(rng, 0, tail.size() - 1)];
  return id;
}

inline std::string random_name(Rng& rng) {
  static const std::string chars = "abc XYZ-_.0129\"\\\n#{};\xc3\xa9";
  std::string s;
  for (std::size_t i = 0, n = pick(rng, 0, 12); i < n; ++i) s += chars[pick(rng, 0, chars.size() - 1)];
  return s;
}

/// Either a short decimal or an arbitrary positive fraction.
inline Rational random_rate(Rng& rng) {
  if (pick(rng, 0, 1)) {
    int places = static_cast<int>(pick(rng, 0, 4));
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
    return Rational(BigInt(pick(rng, 1, 99999)), scale);
  }
  return Rational(static_cast<long long>(pick(rng, 1, 5000)), static_cast<long long>(pick(rng, 1, 5000)));
}

/// A valid model exercising every construct of the format.
inline SystemModel fuzz_model(Rng& rng) {
  TreeShape shape{pick(rng, 1, 8), pick(rng, 0, 4), 4, pick(rng, 0, 1) == 1};
  SystemModel m = pick(rng, 0, 2) == 0 ? random_abd(rng, shape) : random_ft(rng, shape, pick(rng, 0, 1) == 1);
  m.name = random_name(rng);
  std::map<std::string, std::string> rename;
  for (auto& c : m.components) {
    std::string fresh;
    do fresh = random_identifier(rng);
    while (std::any_of(rename.begin(), rename.end(), [&](const auto& kv) { return kv.second == fresh; }));
    rename[c.id] = fresh;
    c.id = fresh;
    c.rates = {random_rate(rng), random_rate(rng)};
  }
  auto fix = [&](auto& self, auto& node) -> void {
    if (!node.id.empty()) node.id = rename.at(node.id);
    if constexpr (std::is_same_v<std::decay_t<decltype(node)>, Block>) {
      for (auto& c : node.children) self(self, c);
    } else {
      for (auto& c : node.inputs) self(self, c);
      for (auto& c : node.negated) self(self, c);
    }
  };
  std::visit([&](auto& root) { fix(fix, root); }, m.body);
  // Occasionally declare an unused component.
  if (pick(rng, 0, 4) == 0) {
    std::string extra = "unused_" + std::to_string(pick(rng, 0, 999));
    if (!m.find(extra)) m.components.push_back({extra, {random_rate(rng), random_rate(rng)}});
  }
  return m;
}

struct Mutation {
  std::string kind;
  std::string text;
};

/// Applies one edit that must make `valid` (canonical text) unparseable or invalid.
inline Mutation mutate(Rng& rng, const std::string& valid) {
  auto at = [&](std::size_t hi) { return pick(rng, 0, hi); };
  // The model name may contain any character, so edits that look for
  // structure only search after the start of the body.
  auto body = valid.find("\nabd ") != std::string::npos ? valid.find("\nabd ") : valid.find("\nft ");
  auto positions = [&](const std::string& needle) {
    std::vector<std::size_t> out;
    for (auto p = valid.find(needle, body); p != std::string::npos; p = valid.find(needle, p + 1)) out.push_back(p);
    return out;
  };
  for (;;) {
    std::string s = valid;
    switch (at(7)) {
      case 0: {  // stray character in the body
        std::size_t p = body + 1 + at(valid.size() - body - 2);
        s.insert(p, pick(rng, 0, 1) ? "@" : "$");
        return {"stray-character", s};
      }
      case 1: {  // drop a closing brace
        auto braces = positions("}");
        if (braces.empty()) continue;
        s.erase(braces[at(braces.size() - 1)], 1);
        return {"missing-brace", s};
      }
      case 2: {  // dangling leaf reference
        auto leaves = positions(valid.find("\nabd ") != std::string::npos ? "unit " : "basic ");
        std::size_t p = leaves[at(leaves.size() - 1)];
        std::size_t id = s.find(' ', p) + 1;
        std::size_t end = s.find_first_of(";\n", id);
        s.replace(id, end - id, "undeclared_9z");
        return {"unknown-reference", s};
      }
      case 3: {  // zero failure rate
        std::size_t p = valid.find(" lambda=") + 8;
        s.replace(p, valid.find(' ', p) - p, "0");
        return {"zero-rate", s};
      }
      case 4: {  // duplicate the first component line
        std::size_t p = valid.find("\ncomponent ");
        if (p == std::string::npos) continue;
        std::size_t end = valid.find('\n', p + 1);
        s.insert(end, valid.substr(p, end - p));
        return {"duplicate-id", s};
      }
      case 5: {  // truncate before the start of the final token
        std::size_t last = valid.find_last_not_of(" \n");
        std::size_t start = valid.find_last_of(" \n", last) + 1;
        s.resize(at(start - 1));
        return {"truncated", s};
      }
      case 6: {  // unterminated model name
        std::size_t close = 6;
        while (true) {
          close = valid.find('"', close + 1);
          if (valid[close - 1] != '\\') break;
          // an escaped quote may itself follow an escaped backslash
          std::size_t slashes = 0;
          for (std::size_t k = close - 1; valid[k] == '\\'; --k) ++slashes;
          if (slashes % 2 == 0) break;
        }
        s.erase(close, 1);
        s.insert(close, "\n");
        return {"unterminated-string", s};
      }
      default: {  // empty child list
        auto opens = positions(" {\n");
        if (opens.empty()) continue;
        std::size_t p = opens[at(opens.size() - 1)] + 2;
        // Matching brace: scan with depth counting, skipping the quoted name.
        std::size_t depth = 0, q = p;
        for (; q < s.size(); ++q) {
          if (s[q] == '{') ++depth;
          if (s[q] == '}') {
            if (depth == 0) break;
            --depth;
          }
        }
        s.erase(p, q - p);
        return {"empty-list", s};
      }
    }
  }
}

}  // namespace availkit::testing
