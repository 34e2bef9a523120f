#ifndef CASTLAB_SYNTAX_HPP
#define CASTLAB_SYNTAX_HPP

// Concrete syntax. S-expressions with named binders:
//
//   type   := "*" | "Nat" | "Bool" | "(->" type type ")"
//   ground := "Nat" | "Bool" | "Fun"
//   term   := ident
//           | "(lam" "(" ident ":" type ")" term ")"
//           | "(" term term ")"
//           | "(nat" integer ")"
//           | "true" | "false"
//           | "(inj" ground term ")"
//           | "(proj" ground term ")"
//           | "(blame" type ")"
//
// Names resolve to de Bruijn indices; shadowing is allowed; an unbound
// name is a parse error with its position. print_ann_term inverts
// parse_term exactly. print_term renders core terms for display
// (lambdas without annotations, bare `blame`), which is not meant to
// be re-parsed.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "castlab/term.hpp"
#include "castlab/types.hpp"

namespace castlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_, col_;
};

namespace detail {

struct Token {
  enum class Kind { LParen, RParen, Colon, Symbol, Int, End };
  Kind kind;
  std::string text;
  std::int64_t value = 0;
  std::size_t line = 1, col = 1;
};

inline bool symbol_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_' || c == '-' || c == '>' ||
         c == '*' || c == '\'' || c == '?' || c == '!';
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (c == '(') {
      t.kind = Token::Kind::LParen;
      bump(1);
    } else if (c == ')') {
      t.kind = Token::Kind::RParen;
      bump(1);
    } else if (c == ':') {
      t.kind = Token::Kind::Colon;
      bump(1);
    } else if (std::isdigit((unsigned char)c) ||
               (c == '-' && i + 1 < src.size() && std::isdigit((unsigned char)src[i + 1]))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      std::int64_t v = 0;
      auto res = std::from_chars(src.data() + i, src.data() + j, v);
      if (res.ec != std::errc() || res.ptr != src.data() + j)
        throw ParseError(line, col, "integer out of range");
      t.kind = Token::Kind::Int;
      t.value = v;
      t.text = std::string(src.substr(i, j - i));
      bump(j - i);
    } else if (symbol_char(c)) {
      std::size_t j = i;
      while (j < src.size() && symbol_char(src[j])) ++j;
      t.kind = Token::Kind::Symbol;
      t.text = std::string(src.substr(i, j - i));
      bump(j - i);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

inline bool reserved(const std::string& s) {
  return s == "lam" || s == "nat" || s == "inj" || s == "proj" || s == "blame" ||
         s == "true" || s == "false" || s == "Nat" || s == "Bool" || s == "Fun" ||
         s == "*" || s == "->";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  AnnTerm term_then_end() {
    AnnTerm t = term();
    expect(Token::Kind::End, "end of input");
    return t;
  }
  Type type_then_end() {
    Type t = type();
    expect(Token::Kind::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }
  Token expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what);
    return next();
  }

  Type type() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Symbol) {
      if (t.text == "*") {
        next();
        return Type::unknown();
      }
      if (t.text == "Nat") {
        next();
        return Type::nat();
      }
      if (t.text == "Bool") {
        next();
        return Type::boolean();
      }
      fail(t, "expected a type, got '" + t.text + "'");
    }
    if (t.kind == Token::Kind::LParen) {
      next();
      Token op = expect(Token::Kind::Symbol, "'->'");
      if (op.text != "->") fail(op, "expected '->' in type");
      Type dom = type();
      Type cod = type();
      expect(Token::Kind::RParen, "')'");
      return Type::arrow(dom, cod);
    }
    fail(t, "expected a type");
  }

  Ground ground() {
    Token t = expect(Token::Kind::Symbol, "a ground type");
    if (t.text == "Nat") return Ground::nat();
    if (t.text == "Bool") return Ground::boolean();
    if (t.text == "Fun") return Ground::fun();
    fail(t, "expected Nat, Bool or Fun, got '" + t.text + "'");
  }

  AnnTerm term() {
    const Token& t = peek();
    Span sp{t.line, t.col};
    if (t.kind == Token::Kind::Symbol) {
      if (t.text == "true") {
        next();
        return AnnTerm::lit(Lit::boolean(true), sp);
      }
      if (t.text == "false") {
        next();
        return AnnTerm::lit(Lit::boolean(false), sp);
      }
      if (reserved(t.text)) fail(t, "'" + t.text + "' is reserved");
      Token name = next();
      for (std::size_t i = 0; i < scope_.size(); ++i) {
        if (scope_[scope_.size() - 1 - i] == name.text)
          return AnnTerm::var(i, sp);
      }
      fail(name, "unbound name '" + name.text + "'");
    }
    if (t.kind != Token::Kind::LParen) fail(t, "expected a term");
    next();
    const Token& head = peek();
    if (head.kind == Token::Kind::Symbol) {
      if (head.text == "lam") {
        next();
        expect(Token::Kind::LParen, "'('");
        Token name = expect(Token::Kind::Symbol, "a binder name");
        if (reserved(name.text)) fail(name, "'" + name.text + "' is reserved");
        expect(Token::Kind::Colon, "':'");
        Type dom = type();
        expect(Token::Kind::RParen, "')'");
        scope_.push_back(name.text);
        AnnTerm body = term();
        scope_.pop_back();
        expect(Token::Kind::RParen, "')'");
        return AnnTerm::lam(dom, body, sp);
      }
      if (head.text == "nat") {
        next();
        Token v = expect(Token::Kind::Int, "an integer");
        expect(Token::Kind::RParen, "')'");
        return AnnTerm::lit(Lit::num(v.value), sp);
      }
      if (head.text == "inj") {
        next();
        Ground g = ground();
        AnnTerm body = term();
        expect(Token::Kind::RParen, "')'");
        return AnnTerm::inject(body, g, sp);
      }
      if (head.text == "proj") {
        next();
        Ground h = ground();
        AnnTerm body = term();
        expect(Token::Kind::RParen, "')'");
        return AnnTerm::project(body, h, sp);
      }
      if (head.text == "blame") {
        next();
        Type a = type();
        expect(Token::Kind::RParen, "')'");
        return AnnTerm::blame(a, sp);
      }
    }
    AnnTerm fn = term();
    AnnTerm arg = term();
    expect(Token::Kind::RParen, "')'");
    return AnnTerm::app(fn, arg, sp);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;  // back = innermost binder
};

inline std::string binder_name(std::size_t depth) { return "x" + std::to_string(depth); }

inline void print_ann(const AnnTerm& m, std::size_t depth, std::string& out) {
  switch (m.kind()) {
    case TermKind::Var: {
      std::size_t i = m.var_index();
      if (i < depth) out += binder_name(depth - 1 - i);
      else out += "#" + std::to_string(i - depth);  // free; display only
      return;
    }
    case TermKind::Lam:
      out += "(lam (" + binder_name(depth) + " : " + to_string(m.lam_dom()) + ") ";
      print_ann(m.body(), depth + 1, out);
      out += ")";
      return;
    case TermKind::App:
      out += "(";
      print_ann(m.fn(), depth, out);
      out += " ";
      print_ann(m.arg(), depth, out);
      out += ")";
      return;
    case TermKind::Lit: out += to_string(m.literal()); return;
    case TermKind::Inject:
      out += "(inj " + to_string(m.ground()) + " ";
      print_ann(m.body(), depth, out);
      out += ")";
      return;
    case TermKind::Project:
      out += "(proj " + to_string(m.ground()) + " ";
      print_ann(m.body(), depth, out);
      out += ")";
      return;
    case TermKind::Blame: out += "(blame " + to_string(m.blame_ann()) + ")"; return;
  }
}

inline void print_core(const Term& m, std::size_t depth, std::string& out) {
  switch (m.kind()) {
    case TermKind::Var: {
      std::size_t i = m.var_index();
      if (i < depth) out += binder_name(depth - 1 - i);
      else out += "#" + std::to_string(i - depth);
      return;
    }
    case TermKind::Lam:
      out += "(lam (" + binder_name(depth) + ") ";
      print_core(m.body(), depth + 1, out);
      out += ")";
      return;
    case TermKind::App:
      out += "(";
      print_core(m.fn(), depth, out);
      out += " ";
      print_core(m.arg(), depth, out);
      out += ")";
      return;
    case TermKind::Lit: out += to_string(m.literal()); return;
    case TermKind::Inject:
      out += "(inj " + to_string(m.ground()) + " ";
      print_core(m.body(), depth, out);
      out += ")";
      return;
    case TermKind::Project:
      out += "(proj " + to_string(m.ground()) + " ";
      print_core(m.body(), depth, out);
      out += ")";
      return;
    case TermKind::Blame: out += "blame"; return;
  }
}

}  // namespace detail

inline AnnTerm parse_term(std::string_view src) {
  return detail::Parser(src).term_then_end();
}

inline Type parse_type(std::string_view src) {
  return detail::Parser(src).type_then_end();
}

// Round-trips: parse_term(print_ann_term(t)) == t.
inline std::string print_ann_term(const AnnTerm& m) {
  std::string out;
  detail::print_ann(m, 0, out);
  return out;
}

inline std::string print_term(const Term& m) {
  std::string out;
  detail::print_core(m, 0, out);
  return out;
}

}  // namespace castlab

#endif
