#ifndef CASTLAB_TERM_HPP
#define CASTLAB_TERM_HPP

// Terms in de Bruijn form. Core Terms are what the semantics runs on;
// AnnTerms additionally carry the lambda domain and blame type
// annotations needed to make typechecking syntax-directed, plus source
// positions when they came from the parser. Both are immutable trees
// with structural sharing, so copies are cheap and thread-safe.

#include <cassert>
#include <cstddef>
#include <memory>
#include <string>

#include "castlab/types.hpp"

namespace castlab {

enum class TermKind { Var, Lam, App, Lit, Inject, Project, Blame };

class Term {
 public:
  static Term var(std::size_t i) {
    Node n = leaf(TermKind::Var);
    n.var = i;
    return mk(std::move(n));
  }
  static Term lam(Term body) {
    Node n = leaf(TermKind::Lam);
    n.a = body.n_;
    return mk(std::move(n));
  }
  static Term app(Term fn, Term arg) {
    Node n = leaf(TermKind::App);
    n.a = fn.n_;
    n.b = arg.n_;
    return mk(std::move(n));
  }
  static Term lit(Lit l) {
    Node n = leaf(TermKind::Lit);
    n.lit = l;
    return mk(std::move(n));
  }
  static Term nat(std::int64_t v) { return lit(Lit::num(v)); }
  static Term boolean(bool b) { return lit(Lit::boolean(b)); }
  static Term inject(Term body, Ground g) {
    Node n = leaf(TermKind::Inject);
    n.a = body.n_;
    n.ground = g;
    return mk(std::move(n));
  }
  static Term project(Term body, Ground h) {
    Node n = leaf(TermKind::Project);
    n.a = body.n_;
    n.ground = h;
    return mk(std::move(n));
  }
  static Term blame() { return mk(leaf(TermKind::Blame)); }

  TermKind kind() const { return n_->kind; }

  std::size_t var_index() const {
    assert(kind() == TermKind::Var);
    return n_->var;
  }
  // Lam, Inject and Project have a single subterm.
  Term body() const {
    assert(kind() == TermKind::Lam || kind() == TermKind::Inject ||
           kind() == TermKind::Project);
    return Term(n_->a);
  }
  Term fn() const {
    assert(kind() == TermKind::App);
    return Term(n_->a);
  }
  Term arg() const {
    assert(kind() == TermKind::App);
    return Term(n_->b);
  }
  const Lit& literal() const {
    assert(kind() == TermKind::Lit);
    return n_->lit;
  }
  Ground ground() const {
    assert(kind() == TermKind::Inject || kind() == TermKind::Project);
    return n_->ground;
  }

  std::size_t size() const {
    switch (kind()) {
      case TermKind::Var:
      case TermKind::Lit:
      case TermKind::Blame: return 1;
      case TermKind::Lam:
      case TermKind::Inject:
      case TermKind::Project: return 1 + body().size();
      case TermKind::App: return 1 + fn().size() + arg().size();
    }
    return 1;
  }

  friend bool operator==(const Term& x, const Term& y) {
    if (x.n_ == y.n_) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case TermKind::Var: return x.var_index() == y.var_index();
      case TermKind::Lit: return x.literal() == y.literal();
      case TermKind::Blame: return true;
      case TermKind::Lam: return x.body() == y.body();
      case TermKind::App: return x.fn() == y.fn() && x.arg() == y.arg();
      case TermKind::Inject:
      case TermKind::Project:
        return x.ground() == y.ground() && x.body() == y.body();
    }
    return false;
  }
  friend bool operator!=(const Term& x, const Term& y) { return !(x == y); }

 private:
  struct Node {
    TermKind kind;
    std::size_t var;
    Lit lit;
    Ground ground;
    std::shared_ptr<const Node> a, b;
  };
  static Node leaf(TermKind k) {
    return Node{k, 0, Lit::num(0), Ground::nat(), nullptr, nullptr};
  }
  static Term mk(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Values: lambdas, literals, and injected values.
inline bool is_value(const Term& m) {
  switch (m.kind()) {
    case TermKind::Lam:
    case TermKind::Lit: return true;
    case TermKind::Inject: return is_value(m.body());
    default: return false;
  }
}

// Source position, 1-based. line 0 means "not from source".
struct Span {
  std::size_t line = 0;
  std::size_t col = 0;
  bool known() const { return line != 0; }
};

class AnnTerm {
 public:
  static AnnTerm var(std::size_t i, Span s = {}) {
    Node n = leaf(TermKind::Var, s);
    n.var = i;
    return mk(std::move(n));
  }
  static AnnTerm lam(Type dom, AnnTerm body, Span s = {}) {
    Node n = leaf(TermKind::Lam, s);
    n.type = dom;
    n.a = body.n_;
    return mk(std::move(n));
  }
  static AnnTerm app(AnnTerm fn, AnnTerm arg, Span s = {}) {
    Node n = leaf(TermKind::App, s);
    n.a = fn.n_;
    n.b = arg.n_;
    return mk(std::move(n));
  }
  static AnnTerm lit(Lit l, Span s = {}) {
    Node n = leaf(TermKind::Lit, s);
    n.lit = l;
    return mk(std::move(n));
  }
  static AnnTerm nat(std::int64_t v) { return lit(Lit::num(v)); }
  static AnnTerm boolean(bool b) { return lit(Lit::boolean(b)); }
  static AnnTerm inject(AnnTerm body, Ground g, Span s = {}) {
    Node n = leaf(TermKind::Inject, s);
    n.a = body.n_;
    n.ground = g;
    return mk(std::move(n));
  }
  static AnnTerm project(AnnTerm body, Ground h, Span s = {}) {
    Node n = leaf(TermKind::Project, s);
    n.a = body.n_;
    n.ground = h;
    return mk(std::move(n));
  }
  static AnnTerm blame(Type ann, Span s = {}) {
    Node n = leaf(TermKind::Blame, s);
    n.type = ann;
    return mk(std::move(n));
  }

  TermKind kind() const { return n_->kind; }
  Span span() const { return n_->span; }

  std::size_t var_index() const {
    assert(kind() == TermKind::Var);
    return n_->var;
  }
  AnnTerm body() const {
    assert(kind() == TermKind::Lam || kind() == TermKind::Inject ||
           kind() == TermKind::Project);
    return AnnTerm(n_->a);
  }
  AnnTerm fn() const {
    assert(kind() == TermKind::App);
    return AnnTerm(n_->a);
  }
  AnnTerm arg() const {
    assert(kind() == TermKind::App);
    return AnnTerm(n_->b);
  }
  const Lit& literal() const {
    assert(kind() == TermKind::Lit);
    return n_->lit;
  }
  Ground ground() const {
    assert(kind() == TermKind::Inject || kind() == TermKind::Project);
    return n_->ground;
  }
  Type lam_dom() const {
    assert(kind() == TermKind::Lam);
    return n_->type;
  }
  Type blame_ann() const {
    assert(kind() == TermKind::Blame);
    return n_->type;
  }

  std::size_t size() const {
    switch (kind()) {
      case TermKind::Var:
      case TermKind::Lit:
      case TermKind::Blame: return 1;
      case TermKind::Lam:
      case TermKind::Inject:
      case TermKind::Project: return 1 + body().size();
      case TermKind::App: return 1 + fn().size() + arg().size();
    }
    return 1;
  }

  // Annotation-sensitive equality; spans are ignored.
  friend bool operator==(const AnnTerm& x, const AnnTerm& y) {
    if (x.n_ == y.n_) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case TermKind::Var: return x.var_index() == y.var_index();
      case TermKind::Lit: return x.literal() == y.literal();
      case TermKind::Blame: return x.blame_ann() == y.blame_ann();
      case TermKind::Lam: return x.lam_dom() == y.lam_dom() && x.body() == y.body();
      case TermKind::App: return x.fn() == y.fn() && x.arg() == y.arg();
      case TermKind::Inject:
      case TermKind::Project:
        return x.ground() == y.ground() && x.body() == y.body();
    }
    return false;
  }
  friend bool operator!=(const AnnTerm& x, const AnnTerm& y) { return !(x == y); }

 private:
  struct Node {
    TermKind kind;
    Span span;
    std::size_t var;
    Lit lit;
    Ground ground;
    Type type;
    std::shared_ptr<const Node> a, b;
  };
  static Node leaf(TermKind k, Span s) {
    return Node{k, s, 0, Lit::num(0), Ground::nat(), Type::unknown(), nullptr, nullptr};
  }
  static AnnTerm mk(Node n) { return AnnTerm(std::make_shared<const Node>(std::move(n))); }
  explicit AnnTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

inline bool is_value(const AnnTerm& m) {
  switch (m.kind()) {
    case TermKind::Lam:
    case TermKind::Lit: return true;
    case TermKind::Inject: return is_value(m.body());
    default: return false;
  }
}

// Total erasure to the core syntax the semantics runs on.
inline Term erase(const AnnTerm& m) {
  switch (m.kind()) {
    case TermKind::Var: return Term::var(m.var_index());
    case TermKind::Lam: return Term::lam(erase(m.body()));
    case TermKind::App: return Term::app(erase(m.fn()), erase(m.arg()));
    case TermKind::Lit: return Term::lit(m.literal());
    case TermKind::Inject: return Term::inject(erase(m.body()), m.ground());
    case TermKind::Project: return Term::project(erase(m.body()), m.ground());
    case TermKind::Blame: return Term::blame();
  }
  return Term::blame();
}

}  // namespace castlab

#endif
