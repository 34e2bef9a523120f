#ifndef CASTLAB_SUBST_HPP
#define CASTLAB_SUBST_HPP

// Parallel renaming and substitution for de Bruijn terms.
//
// Both are represented as a finite explicit prefix plus a tail shift:
// sigma(x) = prefix[x] for x < k, and Var(x - k + shift) for x >= k.
// The identity is an empty prefix with shift 0; cons pushes onto the
// prefix; ext is the usual lift under one binder. Every substitution
// built from these keeps shift >= 0, so tail indices never underflow.

#include <cassert>
#include <cstddef>
#include <vector>

#include "castlab/term.hpp"

namespace castlab {

class Renaming {
 public:
  static Renaming ident() { return Renaming({}, 0); }
  static Renaming shift(std::size_t n) { return Renaming({}, n); }

  std::size_t apply(std::size_t x) const {
    if (x < prefix_.size()) return prefix_[x];
    return x - prefix_.size() + shift_;
  }

  // Lift under a binder: 0 maps to 0, everything else moves up by one.
  Renaming ext() const {
    std::vector<std::size_t> p;
    p.reserve(prefix_.size() + 1);
    p.push_back(0);
    for (std::size_t v : prefix_) p.push_back(v + 1);
    return Renaming(std::move(p), shift_ + 1);
  }

 private:
  Renaming(std::vector<std::size_t> p, std::size_t s) : prefix_(std::move(p)), shift_(s) {}
  std::vector<std::size_t> prefix_;
  std::size_t shift_;
};

inline Term rename(const Renaming& rho, const Term& m) {
  switch (m.kind()) {
    case TermKind::Var: return Term::var(rho.apply(m.var_index()));
    case TermKind::Lam: return Term::lam(rename(rho.ext(), m.body()));
    case TermKind::App: return Term::app(rename(rho, m.fn()), rename(rho, m.arg()));
    case TermKind::Lit: return m;
    case TermKind::Inject: return Term::inject(rename(rho, m.body()), m.ground());
    case TermKind::Project: return Term::project(rename(rho, m.body()), m.ground());
    case TermKind::Blame: return m;
  }
  return m;
}

// rename(shift(n), m): the usual weakening.
inline Term shift_term(const Term& m, std::size_t n = 1) {
  return rename(Renaming::shift(n), m);
}

class Substitution {
 public:
  static Substitution ident() { return Substitution({}, 0); }
  static Substitution shift(std::size_t n) { return Substitution({}, n); }
  static Substitution cons(Term head, const Substitution& tail) {
    std::vector<Term> p;
    p.reserve(tail.prefix_.size() + 1);
    p.push_back(std::move(head));
    for (const Term& t : tail.prefix_) p.push_back(t);
    return Substitution(std::move(p), tail.shift_);
  }

  Term apply_var(std::size_t x) const {
    if (x < prefix_.size()) return prefix_[x];
    return Term::var(x - prefix_.size() + shift_);
  }

  // ext(sigma)(0) = Var 0, ext(sigma)(1+x) = shift(sigma(x)).
  Substitution ext() const {
    std::vector<Term> p;
    p.reserve(prefix_.size() + 1);
    p.push_back(Term::var(0));
    for (const Term& t : prefix_) p.push_back(shift_term(t));
    return Substitution(std::move(p), shift_ + 1);
  }

  std::size_t prefix_size() const { return prefix_.size(); }

 private:
  Substitution(std::vector<Term> p, std::size_t s) : prefix_(std::move(p)), shift_(s) {}
  std::vector<Term> prefix_;
  std::size_t shift_;
};

inline Term subst_apply(const Substitution& sigma, const Term& m) {
  switch (m.kind()) {
    case TermKind::Var: return sigma.apply_var(m.var_index());
    case TermKind::Lam: return Term::lam(subst_apply(sigma.ext(), m.body()));
    case TermKind::App:
      return Term::app(subst_apply(sigma, m.fn()), subst_apply(sigma, m.arg()));
    case TermKind::Lit: return m;
    case TermKind::Inject: return Term::inject(subst_apply(sigma, m.body()), m.ground());
    case TermKind::Project: return Term::project(subst_apply(sigma, m.body()), m.ground());
    case TermKind::Blame: return m;
  }
  return m;
}

// M[N]: substitute N for variable 0 in M, shifting the rest down.
inline Term bracket(const Term& m, const Term& n) {
  return subst_apply(Substitution::cons(n, Substitution::ident()), m);
}

// The same algebra on annotated terms. Only single substitution is
// needed (the annotated mirror of a beta step); annotations are inert.
namespace detail {

struct AnnSubst {
  std::vector<AnnTerm> prefix;
  std::size_t shift;

  AnnTerm apply_var(std::size_t x, Span s) const {
    if (x < prefix.size()) return prefix[x];
    return AnnTerm::var(x - prefix.size() + shift, s);
  }
};

inline AnnTerm ann_shift(const AnnTerm& m, std::size_t k);

inline AnnTerm ann_subst(const AnnSubst& sigma, const AnnTerm& m) {
  switch (m.kind()) {
    case TermKind::Var: return sigma.apply_var(m.var_index(), m.span());
    case TermKind::Lam: {
      AnnSubst lifted{{AnnTerm::var(0)}, sigma.shift + 1};
      lifted.prefix.reserve(sigma.prefix.size() + 1);
      for (const AnnTerm& t : sigma.prefix) lifted.prefix.push_back(ann_shift(t, 1));
      return AnnTerm::lam(m.lam_dom(), ann_subst(lifted, m.body()), m.span());
    }
    case TermKind::App:
      return AnnTerm::app(ann_subst(sigma, m.fn()), ann_subst(sigma, m.arg()), m.span());
    case TermKind::Lit: return m;
    case TermKind::Inject:
      return AnnTerm::inject(ann_subst(sigma, m.body()), m.ground(), m.span());
    case TermKind::Project:
      return AnnTerm::project(ann_subst(sigma, m.body()), m.ground(), m.span());
    case TermKind::Blame: return m;
  }
  return m;
}

inline AnnTerm ann_shift(const AnnTerm& m, std::size_t k) {
  return ann_subst(AnnSubst{{}, k}, m);
}

}  // namespace detail

inline AnnTerm ann_bracket(const AnnTerm& m, const AnnTerm& n) {
  return detail::ann_subst(detail::AnnSubst{{n}, 0}, m);
}

inline AnnTerm ann_shift(const AnnTerm& m, std::size_t k = 1) {
  return detail::ann_shift(m, k);
}

}  // namespace castlab

#endif
