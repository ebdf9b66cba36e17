#pragma once

// Text format for system models (`.avm`):
//
//   model      := 'model' STRING component* body
//   component  := 'component' IDENT 'lambda=' NUMBER 'mu=' NUMBER
//   body       := 'abd' block | 'ft' gate
//   block      := 'unit' IDENT
//               | ('series'|'parallel') '{' block (';' block)* '}'
//   gate       := 'basic' IDENT
//               | ('and'|'or'|'nor') '{' gate (';' gate)* '}'
//               | 'nand' '{' 'neg' '{' gate (';' gate)* '}' ';' 'pos' '{' gate (';' gate)* '}' '}'
//               | 'xor' '{' gate ';' gate '}'
//               | 'not' '{' gate '}'
//   NUMBER     := digits ['.' digits] | digits '/' digits
//
// '#' starts a comment running to end of line. Whitespace is insignificant.
// Numbers are read exactly (0.1 is 1/10).

#include "availkit/error.hpp"
#include "availkit/model.hpp"
#include "availkit/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace availkit::modelfile {

/// Carries every diagnostic found; `what()` lists them as `line:column: message`.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags)
      : Error(render(diags)), diagnostics_(std::move(diags)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  static std::string render(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
      if (!out.empty()) out += "\n";
      if (d.span) out += std::to_string(d.span->line) + ":" + std::to_string(d.span->column) + ": ";
      out += d.message;
    }
    return out;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

namespace detail {

enum class Tok { ident, number, string, lbrace, rbrace, semi, equals, end };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline std::string_view tok_name(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::string: return "string";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::semi: return "';'";
    case Tok::equals: return "'='";
    case Tok::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      SourceSpan at = here();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", at});
        return out;
      }
      char c = text_[pos_];
      if (is_head(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (is_head(text_[pos_]) || is_digit(text_[pos_]))) advance();
        out.push_back({Tok::ident, std::string(text_.substr(start, pos_ - start)), at});
      } else if (is_digit(c)) {
        out.push_back({Tok::number, number(at), at});
      } else if (c == '"') {
        out.push_back({Tok::string, string(at), at});
      } else {
        Tok k;
        switch (c) {
          case '{': k = Tok::lbrace; break;
          case '}': k = Tok::rbrace; break;
          case ';': k = Tok::semi; break;
          case '=': k = Tok::equals; break;
          default: fail(at, std::string("unexpected character '") + c + "'");
        }
        advance();
        out.push_back({k, std::string(1, c), at});
      }
    }
  }

 private:
  static bool is_head(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  [[noreturn]] static void fail(SourceSpan at, std::string msg) {
    throw ParseError({Diagnostic{"lexical error: " + std::move(msg), "", at}});
  }

  SourceSpan here() const { return {line_, column_, pos_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  std::string number(SourceSpan at) {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t from = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) advance();
      return pos_ > from;
    };
    digits();
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/')) {
      char sep = text_[pos_];
      advance();
      if (!digits()) fail(at, std::string("malformed number: expected digits after '") + sep + "'");
    }
    if (pos_ < text_.size() && (is_head(text_[pos_]) || text_[pos_] == '.' || text_[pos_] == '/'))
      fail(at, "malformed number '" + std::string(text_.substr(start, pos_ - start + 1)) + "'");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string string(SourceSpan at) {
    advance();  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\n') fail(at, "unterminated string");
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) break;
        char e = text_[pos_];
        if (e == 'n')
          out += '\n';
        else if (e == '"' || e == '\\')
          out += e;
        else
          fail(here(), std::string("unknown escape '\\") + e + "'");
      } else {
        out += c;
      }
      advance();
    }
    if (pos_ >= text_.size()) fail(at, "unterminated string");
    advance();  // closing quote
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SystemModel model() {
    SystemModel m;
    keyword("model");
    m.name = expect(Tok::string).text;
    while (is_keyword("component")) m.components.push_back(component());
    if (is_keyword("abd")) {
      next();
      m.body = block();
    } else if (is_keyword("ft")) {
      next();
      m.body = gate();
    } else {
      syntax("expected 'component', 'abd' or 'ft'");
    }
    expect(Tok::end);
    return m;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_keyword(std::string_view kw) const { return peek().kind == Tok::ident && peek().text == kw; }

  [[noreturn]] void syntax(const std::string& msg) const {
    std::string found = peek().kind == Tok::end ? "end of input" : "'" + peek().text + "'";
    throw ParseError({Diagnostic{"syntax error: " + msg + ", found " + found, "", peek().span}});
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) syntax("expected " + std::string(tok_name(k)));
    return next();
  }

  const Token& keyword(std::string_view kw) {
    if (!is_keyword(kw)) syntax("expected '" + std::string(kw) + "'");
    return next();
  }

  Rational number() {
    const Token& t = expect(Tok::number);
    auto r = parse_rational(t.text);
    if (!r) throw ParseError({Diagnostic{"invalid number '" + t.text + "'", "", t.span}});
    return *r;
  }

  ComponentDef component() {
    keyword("component");
    const Token& id = expect(Tok::ident);
    ComponentDef c{id.text, {}, id.span};
    keyword("lambda");
    expect(Tok::equals);
    c.rates.lambda = number();
    keyword("mu");
    expect(Tok::equals);
    c.rates.mu = number();
    return c;
  }

  template <class Item>
  std::vector<Item> braced_list(Item (Parser::*item)()) {
    expect(Tok::lbrace);
    std::vector<Item> out;
    out.push_back((this->*item)());
    while (peek().kind == Tok::semi) {
      next();
      out.push_back((this->*item)());
    }
    expect(Tok::rbrace);
    return out;
  }

  Block block() {
    const Token& kw = peek();
    Block b;
    b.span = kw.span;
    if (is_keyword("unit")) {
      next();
      b.id = expect(Tok::ident).text;
    } else if (is_keyword("series") || is_keyword("parallel")) {
      b.kind = kw.text == "series" ? Block::Kind::series : Block::Kind::parallel;
      next();
      b.children = braced_list(&Parser::block);
    } else {
      syntax("expected 'unit', 'series' or 'parallel'");
    }
    return b;
  }

  Gate gate() {
    const Token& kw = peek();
    Gate g;
    g.span = kw.span;
    if (kw.kind != Tok::ident) syntax("expected a gate");
    const std::string& w = kw.text;
    if (w == "basic") {
      next();
      g.id = expect(Tok::ident).text;
    } else if (w == "and" || w == "or" || w == "nor" || w == "xor" || w == "not") {
      g.kind = w == "and"   ? Gate::Kind::and_
               : w == "or"  ? Gate::Kind::or_
               : w == "nor" ? Gate::Kind::nor
               : w == "xor" ? Gate::Kind::xor_
                            : Gate::Kind::not_;
      next();
      g.inputs = braced_list(&Parser::gate);
    } else if (w == "nand") {
      g.kind = Gate::Kind::nand;
      next();
      expect(Tok::lbrace);
      keyword("neg");
      g.negated = braced_list(&Parser::gate);
      expect(Tok::semi);
      keyword("pos");
      g.inputs = braced_list(&Parser::gate);
      expect(Tok::rbrace);
    } else {
      syntax("expected 'basic', 'and', 'or', 'nor', 'nand', 'xor' or 'not'");
    }
    return g;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::string number_text(const Rational& r) {
  if (auto d = terminating_decimal(r)) return *d;
  return rational_string(r);
}

inline std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\', out += c;
    else if (c == '\n')
      out += "\\n";
    else
      out += c;
  }
  return out + "\"";
}

inline void write(const Block& b, std::size_t indent, std::string& out) {
  if (b.kind == Block::Kind::unit) {
    out += "unit " + b.id;
    return;
  }
  std::string pad(indent + 2, ' ');
  out += std::string(kind_name(b.kind)) + " {\n";
  for (std::size_t i = 0; i < b.children.size(); ++i) {
    out += pad;
    write(b.children[i], indent + 2, out);
    out += i + 1 < b.children.size() ? ";\n" : "\n";
  }
  out += std::string(indent, ' ') + "}";
}

inline void write(const Gate& g, std::size_t indent, std::string& out);

inline void write_group(std::string_view head, const std::vector<Gate>& gs, std::size_t indent,
                        std::string& out) {
  std::string pad(indent + 2, ' ');
  out += std::string(head) + " {\n";
  for (std::size_t i = 0; i < gs.size(); ++i) {
    out += pad;
    write(gs[i], indent + 2, out);
    out += i + 1 < gs.size() ? ";\n" : "\n";
  }
  out += std::string(indent, ' ') + "}";
}

inline void write(const Gate& g, std::size_t indent, std::string& out) {
  if (g.kind == Gate::Kind::basic) {
    out += "basic " + g.id;
    return;
  }
  if (g.kind != Gate::Kind::nand) return write_group(kind_name(g.kind), g.inputs, indent, out);
  std::string pad(indent + 2, ' ');
  out += "nand {\n" + pad;
  write_group("neg", g.negated, indent + 2, out);
  out += ";\n" + pad;
  write_group("pos", g.inputs, indent + 2, out);
  out += "\n" + std::string(indent, ' ') + "}";
}

}  // namespace detail

/// Parses and validates a model. Throws ParseError carrying every
/// diagnostic, each with the span of the offending token.
inline SystemModel parse_model(std::string_view text) {
  auto toks = detail::Lexer(text).run();
  SystemModel m = detail::Parser(std::move(toks)).model();
  auto diags = validate(m);
  if (!diags.empty()) throw ParseError(std::move(diags));
  return m;
}

/// Canonical text: components in declaration order, one construct per
/// line, two-space indentation.
inline std::string serialize_model(const SystemModel& model) {
  std::string out = "model " + detail::quoted(model.name) + "\n";
  for (const auto& c : model.components)
    out += "component " + c.id + " lambda=" + detail::number_text(c.rates.lambda) +
           " mu=" + detail::number_text(c.rates.mu) + "\n";
  if (model.is_abd()) {
    out += "abd ";
    detail::write(model.abd(), 0, out);
  } else {
    out += "ft ";
    detail::write(model.ft(), 0, out);
  }
  return out + "\n";
}

}  // namespace availkit::modelfile
