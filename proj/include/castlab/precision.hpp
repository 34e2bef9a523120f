#ifndef CASTLAB_PRECISION_HPP
#define CASTLAB_PRECISION_HPP

// Precision: the "less dynamic than" order on types and terms.
//
// Type precision has four rules: * <= *, * <= B by way of a ground
// whose image is <= B, base <= same base, and arrows componentwise.
// Derivations are unique for a given pair of endpoints, because no
// ground image is * and the ground in the second rule is forced by the
// shape of B; type_prec builds that unique derivation directly.
//
// Term precision derivations are explicit trees (one node per rule)
// so they can be validated independently and serialized. The search
// works on annotated terms: the lambda rule extends the context with a
// domain-precision triple that erased terms do not determine. The
// validator works on core terms; derivations record everything it
// needs.

#include <cassert>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "castlab/term.hpp"
#include "castlab/typecheck.hpp"
#include "castlab/types.hpp"

namespace castlab {

class TypePrecDeriv {
 public:
  enum class Rule { UnkUnk, UnkGround, BaseP, FunP };

  static TypePrecDeriv unk_unk() { return TypePrecDeriv(mk(Node{Rule::UnkUnk, Ground::nat(), Base::Nat, nullptr, nullptr})); }
  static TypePrecDeriv base(Base b) { return TypePrecDeriv(mk(Node{Rule::BaseP, Ground::nat(), b, nullptr, nullptr})); }
  static TypePrecDeriv unk_ground(Ground g, const TypePrecDeriv& sub) {
    // Premise relates the ground's image to B; B = * would make the
    // premise underivable, so it cannot occur here.
    assert(sub.less() == ground_to_type(g));
    assert(!sub.more().is_unknown());
    return TypePrecDeriv(mk(Node{Rule::UnkGround, g, Base::Nat, sub.n_, nullptr}));
  }
  static TypePrecDeriv fun(const TypePrecDeriv& dom, const TypePrecDeriv& cod) {
    return TypePrecDeriv(mk(Node{Rule::FunP, Ground::nat(), Base::Nat, dom.n_, cod.n_}));
  }

  Rule rule() const { return n_->rule; }
  Ground ground() const {
    assert(rule() == Rule::UnkGround);
    return n_->ground;
  }
  Base base_kind() const {
    assert(rule() == Rule::BaseP);
    return n_->base;
  }
  TypePrecDeriv sub() const {
    assert(rule() == Rule::UnkGround);
    return TypePrecDeriv(n_->a);
  }
  TypePrecDeriv dom() const {
    assert(rule() == Rule::FunP);
    return TypePrecDeriv(n_->a);
  }
  TypePrecDeriv cod() const {
    assert(rule() == Rule::FunP);
    return TypePrecDeriv(n_->b);
  }

  // Conclusion endpoints: this derivation proves less() <= more().
  Type less() const {
    switch (rule()) {
      case Rule::UnkUnk:
      case Rule::UnkGround: return Type::unknown();
      case Rule::BaseP: return Type::base(n_->base);
      case Rule::FunP: return Type::arrow(dom().less(), cod().less());
    }
    return Type::unknown();
  }
  Type more() const {
    switch (rule()) {
      case Rule::UnkUnk: return Type::unknown();
      case Rule::UnkGround: return sub().more();
      case Rule::BaseP: return Type::base(n_->base);
      case Rule::FunP: return Type::arrow(dom().more(), cod().more());
    }
    return Type::unknown();
  }

  friend bool operator==(const TypePrecDeriv& x, const TypePrecDeriv& y) {
    if (x.n_ == y.n_) return true;
    if (x.rule() != y.rule()) return false;
    switch (x.rule()) {
      case Rule::UnkUnk: return true;
      case Rule::BaseP: return x.n_->base == y.n_->base;
      case Rule::UnkGround: return x.ground() == y.ground() && x.sub() == y.sub();
      case Rule::FunP: return x.dom() == y.dom() && x.cod() == y.cod();
    }
    return false;
  }
  friend bool operator!=(const TypePrecDeriv& x, const TypePrecDeriv& y) { return !(x == y); }

 private:
  struct Node {
    Rule rule;
    Ground ground;
    Base base;
    std::shared_ptr<const Node> a, b;
  };
  static std::shared_ptr<const Node> mk(Node n) {
    return std::make_shared<const Node>(std::move(n));
  }
  explicit TypePrecDeriv(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// The unique derivation of a <= b, if the pair is related.
inline std::optional<TypePrecDeriv> type_prec(const Type& a, const Type& b) {
  if (a.is_unknown()) {
    if (b.is_unknown()) return TypePrecDeriv::unk_unk();
    if (b.is_base())
      return TypePrecDeriv::unk_ground(Ground::base(b.base_kind()),
                                       TypePrecDeriv::base(b.base_kind()));
    // b is an arrow: go through the function ground, * <= dom and cod.
    auto d = type_prec(Type::unknown(), b.dom());
    auto c = type_prec(Type::unknown(), b.cod());
    assert(d && c);
    return TypePrecDeriv::unk_ground(Ground::fun(), TypePrecDeriv::fun(*d, *c));
  }
  if (a.is_base() && b.is_base() && a.base_kind() == b.base_kind())
    return TypePrecDeriv::base(a.base_kind());
  if (a.is_arrow() && b.is_arrow()) {
    auto d = type_prec(a.dom(), b.dom());
    if (!d) return std::nullopt;
    auto c = type_prec(a.cod(), b.cod());
    if (!c) return std::nullopt;
    return TypePrecDeriv::fun(*d, *c);
  }
  return std::nullopt;
}

// Reflexivity: * by unk-unk, bases directly, arrows componentwise.
inline TypePrecDeriv refl_prec(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Unknown: return TypePrecDeriv::unk_unk();
    case Type::Kind::Base: return TypePrecDeriv::base(a.base_kind());
    case Type::Kind::Arrow:
      return TypePrecDeriv::fun(refl_prec(a.dom()), refl_prec(a.cod()));
  }
  return TypePrecDeriv::unk_unk();
}

struct PrecTriple {
  Type less;
  Type more;
  TypePrecDeriv deriv;
};

using PrecContext = std::vector<PrecTriple>;  // index 0 innermost

class TermPrecDeriv {
 public:
  enum class Rule { Var, Lit, App, Lam, InjL, InjR, ProjL, ProjR, Blame };

  static TermPrecDeriv var(std::size_t i) {
    Node n = leaf(Rule::Var);
    n.var = i;
    return mk(std::move(n));
  }
  static TermPrecDeriv lit(Lit l) {
    Node n = leaf(Rule::Lit);
    n.lit = l;
    return mk(std::move(n));
  }
  static TermPrecDeriv app(TermPrecDeriv fn, TermPrecDeriv arg) {
    Node n = leaf(Rule::App);
    n.a = fn.n_;
    n.b = arg.n_;
    return mk(std::move(n));
  }
  static TermPrecDeriv lam(TypePrecDeriv dom, TermPrecDeriv body) {
    Node n = leaf(Rule::Lam);
    n.dom = std::move(dom);
    n.a = body.n_;
    return mk(std::move(n));
  }
  static TermPrecDeriv inj_l(Ground g, TermPrecDeriv sub) { return cast(Rule::InjL, g, sub); }
  static TermPrecDeriv inj_r(Ground g, TermPrecDeriv sub) { return cast(Rule::InjR, g, sub); }
  static TermPrecDeriv proj_l(Ground h, TermPrecDeriv sub) { return cast(Rule::ProjL, h, sub); }
  static TermPrecDeriv proj_r(Ground h, TermPrecDeriv sub) { return cast(Rule::ProjR, h, sub); }
  static TermPrecDeriv blame(Type a) {
    Node n = leaf(Rule::Blame);
    n.type = std::move(a);
    return mk(std::move(n));
  }

  Rule rule() const { return n_->rule; }
  std::size_t var_index() const {
    assert(rule() == Rule::Var);
    return n_->var;
  }
  const Lit& literal() const {
    assert(rule() == Rule::Lit);
    return n_->lit;
  }
  TermPrecDeriv fn_deriv() const {
    assert(rule() == Rule::App);
    return TermPrecDeriv(n_->a);
  }
  TermPrecDeriv arg_deriv() const {
    assert(rule() == Rule::App);
    return TermPrecDeriv(n_->b);
  }
  const TypePrecDeriv& dom_prec() const {
    assert(rule() == Rule::Lam);
    return n_->dom;
  }
  TermPrecDeriv body_deriv() const {
    assert(rule() == Rule::Lam);
    return TermPrecDeriv(n_->a);
  }
  Ground ground() const {
    assert(is_cast(rule()));
    return n_->ground;
  }
  TermPrecDeriv sub_deriv() const {
    assert(is_cast(rule()));
    return TermPrecDeriv(n_->a);
  }
  const Type& blame_type() const {
    assert(rule() == Rule::Blame);
    return n_->type;
  }

  static bool is_cast(Rule r) {
    return r == Rule::InjL || r == Rule::InjR || r == Rule::ProjL || r == Rule::ProjR;
  }

  friend bool operator==(const TermPrecDeriv& x, const TermPrecDeriv& y) {
    if (x.n_ == y.n_) return true;
    if (x.rule() != y.rule()) return false;
    switch (x.rule()) {
      case Rule::Var: return x.var_index() == y.var_index();
      case Rule::Lit: return x.literal() == y.literal();
      case Rule::App: return x.fn_deriv() == y.fn_deriv() && x.arg_deriv() == y.arg_deriv();
      case Rule::Lam: return x.dom_prec() == y.dom_prec() && x.body_deriv() == y.body_deriv();
      case Rule::InjL:
      case Rule::InjR:
      case Rule::ProjL:
      case Rule::ProjR: return x.ground() == y.ground() && x.sub_deriv() == y.sub_deriv();
      case Rule::Blame: return x.blame_type() == y.blame_type();
    }
    return false;
  }
  friend bool operator!=(const TermPrecDeriv& x, const TermPrecDeriv& y) { return !(x == y); }

 private:
  struct Node {
    Rule rule;
    std::size_t var;
    Lit lit;
    Ground ground;
    TypePrecDeriv dom;
    Type type;
    std::shared_ptr<const Node> a, b;
  };
  static Node leaf(Rule r) {
    return Node{r, 0, Lit::num(0), Ground::nat(), TypePrecDeriv::unk_unk(),
                Type::unknown(), nullptr, nullptr};
  }
  static TermPrecDeriv cast(Rule r, Ground g, const TermPrecDeriv& sub) {
    Node n = leaf(r);
    n.ground = g;
    n.a = sub.n_;
    return mk(std::move(n));
  }
  static TermPrecDeriv mk(Node n) {
    return TermPrecDeriv(std::make_shared<const Node>(std::move(n)));
  }
  explicit TermPrecDeriv(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

namespace detail {

inline TypeContext less_type_context(const PrecContext& ctx) {
  std::vector<Type> t;
  t.reserve(ctx.size());
  for (const PrecTriple& p : ctx) t.push_back(p.less);
  return TypeContext(std::move(t));
}

}  // namespace detail

// Check a derivation against the two core terms it claims to relate;
// answers the concluded type precision, or nullopt if any rule shape
// or side condition fails.
inline std::optional<TypePrecDeriv> conclude_term_prec(const PrecContext& ctx,
                                                       const TermPrecDeriv& d,
                                                       const Term& less, const Term& more) {
  using R = TermPrecDeriv::Rule;
  switch (d.rule()) {
    case R::Var: {
      std::size_t i = d.var_index();
      if (less.kind() != TermKind::Var || more.kind() != TermKind::Var) return std::nullopt;
      if (less.var_index() != i || more.var_index() != i) return std::nullopt;
      if (i >= ctx.size()) return std::nullopt;
      return ctx[i].deriv;
    }
    case R::Lit: {
      if (less.kind() != TermKind::Lit || more.kind() != TermKind::Lit) return std::nullopt;
      if (less.literal() != d.literal() || more.literal() != d.literal()) return std::nullopt;
      return TypePrecDeriv::base(d.literal().type_of());
    }
    case R::App: {
      if (less.kind() != TermKind::App || more.kind() != TermKind::App) return std::nullopt;
      auto cf = conclude_term_prec(ctx, d.fn_deriv(), less.fn(), more.fn());
      if (!cf || cf->rule() != TypePrecDeriv::Rule::FunP) return std::nullopt;
      auto ca = conclude_term_prec(ctx, d.arg_deriv(), less.arg(), more.arg());
      if (!ca || *ca != cf->dom()) return std::nullopt;
      return cf->cod();
    }
    case R::Lam: {
      if (less.kind() != TermKind::Lam || more.kind() != TermKind::Lam) return std::nullopt;
      const TypePrecDeriv& cd = d.dom_prec();
      PrecContext inner;
      inner.reserve(ctx.size() + 1);
      inner.push_back(PrecTriple{cd.less(), cd.more(), cd});
      for (const PrecTriple& p : ctx) inner.push_back(p);
      auto cb = conclude_term_prec(inner, d.body_deriv(), less.body(), more.body());
      if (!cb) return std::nullopt;
      return TypePrecDeriv::fun(cd, *cb);
    }
    case R::InjL: {
      if (less.kind() != TermKind::Inject || less.ground() != d.ground()) return std::nullopt;
      auto cs = conclude_term_prec(ctx, d.sub_deriv(), less.body(), more);
      if (!cs || cs->less() != ground_to_type(d.ground())) return std::nullopt;
      if (cs->more().is_unknown()) return std::nullopt;
      return TypePrecDeriv::unk_ground(d.ground(), *cs);
    }
    case R::InjR: {
      if (more.kind() != TermKind::Inject || more.ground() != d.ground()) return std::nullopt;
      auto cs = conclude_term_prec(ctx, d.sub_deriv(), less, more.body());
      if (!cs || !cs->less().is_unknown()) return std::nullopt;
      if (cs->more() != ground_to_type(d.ground())) return std::nullopt;
      return TypePrecDeriv::unk_unk();
    }
    case R::ProjL: {
      if (less.kind() != TermKind::Project || less.ground() != d.ground()) return std::nullopt;
      auto cs = conclude_term_prec(ctx, d.sub_deriv(), less.body(), more);
      if (!cs || cs->rule() != TypePrecDeriv::Rule::UnkGround) return std::nullopt;
      if (cs->ground() != d.ground()) return std::nullopt;
      return cs->sub();
    }
    case R::ProjR: {
      if (more.kind() != TermKind::Project || more.ground() != d.ground()) return std::nullopt;
      auto cs = conclude_term_prec(ctx, d.sub_deriv(), less, more.body());
      if (!cs || *cs != TypePrecDeriv::unk_unk()) return std::nullopt;
      return type_prec(Type::unknown(), ground_to_type(d.ground()));
    }
    case R::Blame: {
      if (more.kind() != TermKind::Blame) return std::nullopt;
      if (!check_core(detail::less_type_context(ctx), less, d.blame_type()))
        return std::nullopt;
      return refl_prec(d.blame_type());
    }
  }
  return std::nullopt;
}

inline bool validate_term_prec(const PrecContext& ctx, const TermPrecDeriv& d,
                               const Term& less, const Term& more) {
  return conclude_term_prec(ctx, d, less, more).has_value();
}

struct PrecSearchResult {
  std::optional<TypePrecDeriv> type_deriv;
  std::optional<TermPrecDeriv> term_deriv;
  // Set when the blame rule was the only candidate left and its typing
  // premise failed.
  bool blame_ill_typed = false;

  bool found() const { return term_deriv.has_value(); }
};

namespace detail {

using Found = std::pair<TypePrecDeriv, TermPrecDeriv>;

inline std::optional<Found> prec_search(const PrecContext& ctx, const AnnTerm& less,
                                        const AnnTerm& more, std::size_t depth,
                                        bool& blame_ill_typed) {
  if (depth == 0) return std::nullopt;
  --depth;

  // Blame on the right closes the goal outright when the left side
  // types; recorded type is the left side's inferred type, which the
  // core-term validator must also be able to confirm.
  if (more.kind() == TermKind::Blame) {
    try {
      Inferred li = infer(less_type_context(ctx), less);
      if (check_core(less_type_context(ctx), li.core, li.type))
        return Found{refl_prec(li.type), TermPrecDeriv::blame(li.type)};
      blame_ill_typed = true;
    } catch (const TypeCheckError&) {
      blame_ill_typed = true;
    }
  }

  // Structural rules. When both heads agree no cast rule can apply, so
  // failure here is final for these shapes (except blame, above).
  if (less.kind() == more.kind()) {
    switch (less.kind()) {
      case TermKind::Var: {
        std::size_t i = less.var_index();
        if (i != more.var_index() || i >= ctx.size()) return std::nullopt;
        return Found{ctx[i].deriv, TermPrecDeriv::var(i)};
      }
      case TermKind::Lit: {
        if (less.literal() != more.literal()) return std::nullopt;
        return Found{TypePrecDeriv::base(less.literal().type_of()),
                     TermPrecDeriv::lit(less.literal())};
      }
      case TermKind::App: {
        auto f = prec_search(ctx, less.fn(), more.fn(), depth, blame_ill_typed);
        if (!f || f->first.rule() != TypePrecDeriv::Rule::FunP) return std::nullopt;
        auto a = prec_search(ctx, less.arg(), more.arg(), depth, blame_ill_typed);
        if (!a || a->first != f->first.dom()) return std::nullopt;
        return Found{f->first.cod(), TermPrecDeriv::app(f->second, a->second)};
      }
      case TermKind::Lam: {
        auto cd = type_prec(less.lam_dom(), more.lam_dom());
        if (!cd) return std::nullopt;
        PrecContext inner;
        inner.reserve(ctx.size() + 1);
        inner.push_back(PrecTriple{cd->less(), cd->more(), *cd});
        for (const PrecTriple& p : ctx) inner.push_back(p);
        auto b = prec_search(inner, less.body(), more.body(), depth, blame_ill_typed);
        if (!b) return std::nullopt;
        return Found{TypePrecDeriv::fun(*cd, b->first),
                     TermPrecDeriv::lam(*cd, b->second)};
      }
      default: break;  // Inject/Project pairs go through the cast rules
    }
  }

  // Casts on the left.
  if (less.kind() == TermKind::Inject) {
    auto s = prec_search(ctx, less.body(), more, depth, blame_ill_typed);
    if (s && s->first.less() == ground_to_type(less.ground()) &&
        !s->first.more().is_unknown())
      return Found{TypePrecDeriv::unk_ground(less.ground(), s->first),
                   TermPrecDeriv::inj_l(less.ground(), s->second)};
  }
  if (less.kind() == TermKind::Project) {
    auto s = prec_search(ctx, less.body(), more, depth, blame_ill_typed);
    if (s && s->first.rule() == TypePrecDeriv::Rule::UnkGround &&
        s->first.ground() == less.ground())
      return Found{s->first.sub(), TermPrecDeriv::proj_l(less.ground(), s->second)};
  }

  // Casts on the right.
  if (more.kind() == TermKind::Inject) {
    auto s = prec_search(ctx, less, more.body(), depth, blame_ill_typed);
    if (s && s->first.less().is_unknown() &&
        s->first.more() == ground_to_type(more.ground()))
      return Found{TypePrecDeriv::unk_unk(),
                   TermPrecDeriv::inj_r(more.ground(), s->second)};
  }
  if (more.kind() == TermKind::Project) {
    auto s = prec_search(ctx, less, more.body(), depth, blame_ill_typed);
    if (s && s->first == TypePrecDeriv::unk_unk())
      return Found{*type_prec(Type::unknown(), ground_to_type(more.ground())),
                   TermPrecDeriv::proj_r(more.ground(), s->second)};
  }

  return std::nullopt;
}

}  // namespace detail

// Backtracking search for a precision derivation between two annotated
// terms. Rule order: blame, then structural, then left casts, then
// right casts. Every success validates against the erased terms.
inline PrecSearchResult infer_term_prec(const PrecContext& ctx, const AnnTerm& less,
                                        const AnnTerm& more) {
  PrecSearchResult r;
  std::size_t depth = less.size() + more.size() + 8;
  auto found = detail::prec_search(ctx, less, more, depth, r.blame_ill_typed);
  if (found) {
    r.type_deriv = found->first;
    r.term_deriv = found->second;
    r.blame_ill_typed = false;
  }
  return r;
}

}  // namespace castlab

#endif
