#ifndef CASTLAB_TYPECHECK_HPP
#define CASTLAB_TYPECHECK_HPP

// Syntax-directed typing. AnnTerms carry exactly the annotations that
// make inference deterministic (lambda domains, blame types); infer
// erases them and returns the core term together with its type.
//
// check_core / synth_core re-check bare core terms, reconstructing
// lambda domains from the expected type. That judgment is sound but
// not complete: an application whose function and argument are both
// lambdas (reachable by substituting lambda values into an
// application) has no syntax-determined intermediate type, and
// check_core answers false there. Callers that need completeness keep
// annotations around; see step_annotated in reduce.hpp.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "castlab/term.hpp"
#include "castlab/types.hpp"

namespace castlab {

// Index i holds the type of de Bruijn variable i; extending under a
// binder pushes at the front.
class TypeContext {
 public:
  TypeContext() = default;
  explicit TypeContext(std::vector<Type> front_first) : types_(std::move(front_first)) {}

  std::optional<Type> lookup(std::size_t i) const {
    if (i >= types_.size()) return std::nullopt;
    return types_[i];
  }
  TypeContext extended(const Type& a) const {
    std::vector<Type> t;
    t.reserve(types_.size() + 1);
    t.push_back(a);
    for (const Type& x : types_) t.push_back(x);
    return TypeContext(std::move(t));
  }
  std::size_t size() const { return types_.size(); }

 private:
  std::vector<Type> types_;
};

enum class TypeErrorCode {
  UnboundVariable,
  AppNotArrow,
  AppArgMismatch,
  InjectBodyMismatch,
  ProjectBodyNotUnknown,
  TypeMismatch,
};

inline std::string to_string(TypeErrorCode c) {
  switch (c) {
    case TypeErrorCode::UnboundVariable: return "unbound-variable";
    case TypeErrorCode::AppNotArrow: return "app-not-arrow";
    case TypeErrorCode::AppArgMismatch: return "app-arg-mismatch";
    case TypeErrorCode::InjectBodyMismatch: return "inject-body-mismatch";
    case TypeErrorCode::ProjectBodyNotUnknown: return "project-body-not-unknown";
    case TypeErrorCode::TypeMismatch: return "type-mismatch";
  }
  return "type-error";
}

class TypeCheckError : public std::runtime_error {
 public:
  TypeCheckError(TypeErrorCode code, Span span, const std::string& detail)
      : std::runtime_error(format(code, span, detail)), code_(code), span_(span) {}

  TypeErrorCode code() const { return code_; }
  Span span() const { return span_; }

 private:
  static std::string format(TypeErrorCode code, Span span, const std::string& detail) {
    std::string s = to_string(code);
    if (span.known())
      s += " at " + std::to_string(span.line) + ":" + std::to_string(span.col);
    if (!detail.empty()) s += ": " + detail;
    return s;
  }
  TypeErrorCode code_;
  Span span_;
};

struct Inferred {
  Term core;
  Type type;
};

inline Inferred infer(const TypeContext& ctx, const AnnTerm& m) {
  switch (m.kind()) {
    case TermKind::Var: {
      auto t = ctx.lookup(m.var_index());
      if (!t)
        throw TypeCheckError(TypeErrorCode::UnboundVariable, m.span(),
                             "index " + std::to_string(m.var_index()));
      return {Term::var(m.var_index()), *t};
    }
    case TermKind::Lit:
      return {Term::lit(m.literal()), Type::base(m.literal().type_of())};
    case TermKind::Lam: {
      Inferred body = infer(ctx.extended(m.lam_dom()), m.body());
      return {Term::lam(body.core), Type::arrow(m.lam_dom(), body.type)};
    }
    case TermKind::App: {
      Inferred f = infer(ctx, m.fn());
      if (!f.type.is_arrow())
        throw TypeCheckError(TypeErrorCode::AppNotArrow, m.fn().span(),
                             "function has type " + to_string(f.type));
      Inferred a = infer(ctx, m.arg());
      if (a.type != f.type.dom())
        throw TypeCheckError(TypeErrorCode::AppArgMismatch, m.arg().span(),
                             "expected " + to_string(f.type.dom()) + ", got " +
                                 to_string(a.type));
      return {Term::app(f.core, a.core), f.type.cod()};
    }
    case TermKind::Inject: {
      Inferred b = infer(ctx, m.body());
      Type want = ground_to_type(m.ground());
      if (b.type != want)
        throw TypeCheckError(TypeErrorCode::InjectBodyMismatch, m.body().span(),
                             "expected " + to_string(want) + ", got " + to_string(b.type));
      return {Term::inject(b.core, m.ground()), Type::unknown()};
    }
    case TermKind::Project: {
      Inferred b = infer(ctx, m.body());
      if (!b.type.is_unknown())
        throw TypeCheckError(TypeErrorCode::ProjectBodyNotUnknown, m.body().span(),
                             "body has type " + to_string(b.type));
      return {Term::project(b.core, m.ground()), ground_to_type(m.ground())};
    }
    case TermKind::Blame:
      return {Term::blame(), m.blame_ann()};
  }
  throw TypeCheckError(TypeErrorCode::TypeMismatch, m.span(), "unreachable");
}

// Check against an expected type. Blame checks at any type, matching
// its typing rule; everything else must infer exactly `a`.
inline Term check(const TypeContext& ctx, const AnnTerm& m, const Type& a) {
  if (m.kind() == TermKind::Blame) return Term::blame();
  Inferred r = infer(ctx, m);
  if (r.type != a)
    throw TypeCheckError(TypeErrorCode::TypeMismatch, m.span(),
                         "expected " + to_string(a) + ", got " + to_string(r.type));
  return r.core;
}

inline bool check_core(const TypeContext& ctx, const Term& m, const Type& a);

// Synthesize a core term's type where the syntax determines it.
// Lambdas and blame do not synthesize; an application synthesizes if
// its function does, or if its function is a lambda whose domain the
// argument determines.
inline std::optional<Type> synth_core(const TypeContext& ctx, const Term& m) {
  switch (m.kind()) {
    case TermKind::Var: return ctx.lookup(m.var_index());
    case TermKind::Lit: return Type::base(m.literal().type_of());
    case TermKind::Lam: return std::nullopt;
    case TermKind::Blame: return std::nullopt;
    case TermKind::Inject: {
      if (!check_core(ctx, m.body(), ground_to_type(m.ground()))) return std::nullopt;
      return Type::unknown();
    }
    case TermKind::Project: {
      if (!check_core(ctx, m.body(), Type::unknown())) return std::nullopt;
      return ground_to_type(m.ground());
    }
    case TermKind::App: {
      if (auto f = synth_core(ctx, m.fn())) {
        if (!f->is_arrow()) return std::nullopt;
        if (!check_core(ctx, m.arg(), f->dom())) return std::nullopt;
        return f->cod();
      }
      if (m.fn().kind() == TermKind::Lam) {
        if (auto a = synth_core(ctx, m.arg()))
          return synth_core(ctx.extended(*a), m.fn().body());
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

inline bool check_core(const TypeContext& ctx, const Term& m, const Type& a) {
  switch (m.kind()) {
    case TermKind::Lam:
      return a.is_arrow() && check_core(ctx.extended(a.dom()), m.body(), a.cod());
    case TermKind::Blame: return true;
    case TermKind::App: {
      if (auto f = synth_core(ctx, m.fn()))
        return f->is_arrow() && f->cod() == a && check_core(ctx, m.arg(), f->dom());
      if (auto arg = synth_core(ctx, m.arg()))
        return check_core(ctx, m.fn(), Type::arrow(*arg, a));
      return false;
    }
    default: {
      auto t = synth_core(ctx, m);
      return t.has_value() && *t == a;
    }
  }
}

}  // namespace castlab

#endif
