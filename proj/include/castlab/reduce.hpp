#ifndef CASTLAB_REDUCE_HPP
#define CASTLAB_REDUCE_HPP

// Small-step reduction. Five rules: beta, collapse (project over a
// matching inject), collide (mismatched grounds, answering blame),
// congruence in an evaluation frame, and blame propagation out of a
// frame. Evaluation order is leftmost-innermost: applications reduce
// the function before the argument, casts reduce their body.
//
// step is a partial function: values, blame, and stuck ill-typed terms
// have no successor; callers distinguish the first two via is_value /
// TermKind. For well-typed terms the successor is unique, which the
// test suite checks against an independent enumeration of every
// decomposition.

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "castlab/subst.hpp"
#include "castlab/term.hpp"
#include "castlab/typecheck.hpp"
#include "castlab/types.hpp"

namespace castlab {

// Evaluation frames. AppR requires its stored function to be a value.
class Frame {
 public:
  enum class Kind { AppL, AppR, InjF, ProjF };

  static Frame app_l(Term arg) { return Frame(Kind::AppL, std::move(arg), Ground::nat()); }
  static Frame app_r(Term fn_value) {
    assert(is_value(fn_value));
    return Frame(Kind::AppR, std::move(fn_value), Ground::nat());
  }
  static Frame inj(Ground g) { return Frame(Kind::InjF, Term::blame(), g); }
  static Frame proj(Ground h) { return Frame(Kind::ProjF, Term::blame(), h); }

  Kind kind() const { return kind_; }
  const Term& arg() const {
    assert(kind_ == Kind::AppL);
    return term_;
  }
  const Term& fn() const {
    assert(kind_ == Kind::AppR);
    return term_;
  }
  Ground ground() const {
    assert(kind_ == Kind::InjF || kind_ == Kind::ProjF);
    return ground_;
  }

 private:
  Frame(Kind k, Term t, Ground g) : kind_(k), term_(std::move(t)), ground_(g) {}
  Kind kind_;
  Term term_;
  Ground ground_;
};

// Possibly-empty frame; nullopt is the hole.
using PEFrame = std::optional<Frame>;

inline Term plug(const Frame& f, const Term& m) {
  switch (f.kind()) {
    case Frame::Kind::AppL: return Term::app(m, f.arg());
    case Frame::Kind::AppR: return Term::app(f.fn(), m);
    case Frame::Kind::InjF: return Term::inject(m, f.ground());
    case Frame::Kind::ProjF: return Term::project(m, f.ground());
  }
  return m;
}

inline Term plug(const PEFrame& f, const Term& m) { return f ? plug(*f, m) : m; }

enum class RuleKind { Beta, Collapse, Collide, Cong, CongBlame };

inline std::string to_string(RuleKind r) {
  switch (r) {
    case RuleKind::Beta: return "beta";
    case RuleKind::Collapse: return "collapse";
    case RuleKind::Collide: return "collide";
    case RuleKind::Cong: return "cong";
    case RuleKind::CongBlame: return "cong-blame";
  }
  return "?";
}

// One reduction. For Cong and CongBlame, frame holds the outermost
// frame the rule fired under.
struct StepResult {
  Term next;
  RuleKind rule;
  std::optional<Frame> frame;
};

inline std::optional<StepResult> step(const Term& m) {
  if (is_value(m)) return std::nullopt;
  switch (m.kind()) {
    case TermKind::Var:
    case TermKind::Blame:
    case TermKind::Lam:
    case TermKind::Lit: return std::nullopt;
    case TermKind::App: {
      Term fn = m.fn(), arg = m.arg();
      if (!is_value(fn)) {
        Frame f = Frame::app_l(arg);
        if (fn.kind() == TermKind::Blame)
          return StepResult{Term::blame(), RuleKind::CongBlame, f};
        if (auto s = step(fn))
          return StepResult{plug(f, s->next), RuleKind::Cong, f};
        return std::nullopt;
      }
      if (!is_value(arg)) {
        Frame f = Frame::app_r(fn);
        if (arg.kind() == TermKind::Blame)
          return StepResult{Term::blame(), RuleKind::CongBlame, f};
        if (auto s = step(arg))
          return StepResult{plug(f, s->next), RuleKind::Cong, f};
        return std::nullopt;
      }
      if (fn.kind() == TermKind::Lam)
        return StepResult{bracket(fn.body(), arg), RuleKind::Beta, std::nullopt};
      return std::nullopt;  // stuck, e.g. a literal applied
    }
    case TermKind::Inject: {
      Term body = m.body();
      // A value body makes the whole inject a value, handled above.
      Frame f = Frame::inj(m.ground());
      if (body.kind() == TermKind::Blame)
        return StepResult{Term::blame(), RuleKind::CongBlame, f};
      if (auto s = step(body))
        return StepResult{plug(f, s->next), RuleKind::Cong, f};
      return std::nullopt;
    }
    case TermKind::Project: {
      Term body = m.body();
      if (is_value(body)) {
        if (body.kind() != TermKind::Inject) return std::nullopt;  // stuck
        if (body.ground() == m.ground())
          return StepResult{body.body(), RuleKind::Collapse, std::nullopt};
        return StepResult{Term::blame(), RuleKind::Collide, std::nullopt};
      }
      Frame f = Frame::proj(m.ground());
      if (body.kind() == TermKind::Blame)
        return StepResult{Term::blame(), RuleKind::CongBlame, f};
      if (auto s = step(body))
        return StepResult{plug(f, s->next), RuleKind::Cong, f};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

class StuckTermError : public std::runtime_error {
 public:
  explicit StuckTermError(Term t)
      : std::runtime_error("stuck term: no rule applies to a non-value"), term_(std::move(t)) {}
  const Term& term() const { return term_; }

 private:
  Term term_;
};

struct Outcome {
  enum class Kind { Value, Blame, Timeout };
  Kind kind;
  std::optional<Term> value;  // set for Kind::Value
  std::size_t steps;

  static Outcome val(Term v, std::size_t steps) { return {Kind::Value, std::move(v), steps}; }
  static Outcome blamed(std::size_t steps) { return {Kind::Blame, std::nullopt, steps}; }
  static Outcome timeout(std::size_t fuel) { return {Kind::Timeout, std::nullopt, fuel}; }

  bool halted() const { return kind != Kind::Timeout; }
};

// Iterate step at most fuel times. Throws StuckTermError on a stuck
// non-value non-blame term, which for closed well-typed input would be
// a soundness bug.
inline Outcome eval(const Term& m, std::size_t fuel) {
  Term cur = m;
  for (std::size_t i = 0;; ++i) {
    if (is_value(cur)) return Outcome::val(cur, i);
    if (cur.kind() == TermKind::Blame) return Outcome::blamed(i);
    if (i == fuel) return Outcome::timeout(fuel);
    auto s = step(cur);
    if (!s) throw StuckTermError(cur);
    cur = s->next;
  }
}

// The unique N reached in exactly k steps, or nullopt if the term
// halts in fewer.
inline std::optional<Term> run_exact(const Term& m, std::size_t k) {
  Term cur = m;
  for (std::size_t i = 0; i < k; ++i) {
    if (is_value(cur) || cur.kind() == TermKind::Blame) return std::nullopt;
    auto s = step(cur);
    if (!s) throw StuckTermError(cur);
    cur = s->next;
  }
  return cur;
}

struct TraceEntry {
  RuleKind rule;
  std::optional<Frame> frame;
  Term after;
};

inline Outcome eval_traced(const Term& m, std::size_t fuel, std::vector<TraceEntry>& out) {
  Term cur = m;
  for (std::size_t i = 0;; ++i) {
    if (is_value(cur)) return Outcome::val(cur, i);
    if (cur.kind() == TermKind::Blame) return Outcome::blamed(i);
    if (i == fuel) return Outcome::timeout(fuel);
    auto s = step(cur);
    if (!s) throw StuckTermError(cur);
    cur = s->next;
    out.push_back(TraceEntry{s->rule, s->frame, cur});
  }
}

namespace detail {

// Mirror of step on annotated terms. Reduction never goes under a
// binder, so the context never grows; it is only needed to re-infer
// the type a propagated blame must be annotated with.
inline std::optional<AnnTerm> ann_step(const TypeContext& ctx, const AnnTerm& m) {
  if (is_value(m)) return std::nullopt;
  switch (m.kind()) {
    case TermKind::Var:
    case TermKind::Blame:
    case TermKind::Lam:
    case TermKind::Lit: return std::nullopt;
    case TermKind::App: {
      AnnTerm fn = m.fn(), arg = m.arg();
      if (!is_value(fn)) {
        if (fn.kind() == TermKind::Blame) return AnnTerm::blame(infer(ctx, m).type);
        if (auto s = ann_step(ctx, fn)) return AnnTerm::app(*s, arg);
        return std::nullopt;
      }
      if (!is_value(arg)) {
        if (arg.kind() == TermKind::Blame) return AnnTerm::blame(infer(ctx, m).type);
        if (auto s = ann_step(ctx, arg)) return AnnTerm::app(fn, *s);
        return std::nullopt;
      }
      if (fn.kind() == TermKind::Lam) return ann_bracket(fn.body(), arg);
      return std::nullopt;
    }
    case TermKind::Inject: {
      AnnTerm body = m.body();
      if (body.kind() == TermKind::Blame) return AnnTerm::blame(Type::unknown());
      if (auto s = ann_step(ctx, body)) return AnnTerm::inject(*s, m.ground());
      return std::nullopt;
    }
    case TermKind::Project: {
      AnnTerm body = m.body();
      if (is_value(body)) {
        if (body.kind() != TermKind::Inject) return std::nullopt;
        if (body.ground() == m.ground()) return body.body();
        return AnnTerm::blame(ground_to_type(m.ground()));
      }
      if (body.kind() == TermKind::Blame)
        return AnnTerm::blame(ground_to_type(m.ground()));
      if (auto s = ann_step(ctx, body)) return AnnTerm::project(*s, m.ground());
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Annotation-carrying step for closed terms. Erases to exactly what
// step produces on the erased input; blame picks up the type of the
// frame it discarded, so the reduct stays inferable at the same type.
inline std::optional<AnnTerm> step_annotated(const AnnTerm& m) {
  return detail::ann_step(TypeContext{}, m);
}

}  // namespace castlab

#endif
