#ifndef CASTLAB_CASTCOMP_HPP
#define CASTLAB_CASTCOMP_HPP

// Compiling casts down to the calculus's own injections, projections
// and lambdas. A cast between consistent types a and b becomes:
//   a = b                 the term itself
//   ground image -> *     one injection
//   other arrow -> *      factor through *->*, then inject at Fun
//   * -> b                project at b's ground, recurse if needed
//   arrow -> arrow        eta-expand, casting argument and result
// The caller must supply a term of type a; the result then has type b.
// Inconsistent endpoints are a compile error (there is nothing a
// runtime cast could do but fail, and no ground to fail at).

#include <stdexcept>
#include <string>

#include "castlab/subst.hpp"
#include "castlab/term.hpp"
#include "castlab/types.hpp"

namespace castlab {

class CastCompileError : public std::runtime_error {
 public:
  CastCompileError(Type from, Type to)
      : std::runtime_error("inconsistent cast: " + to_string(from) + " to " + to_string(to)),
        from_(std::move(from)),
        to_(std::move(to)) {}
  const Type& from() const { return from_; }
  const Type& to() const { return to_; }

 private:
  Type from_, to_;
};

inline Term compile_cast(const Type& a, const Type& b, const Term& m) {
  if (a == b) return m;
  if (!consistent(a, b)) throw CastCompileError(a, b);
  if (b.is_unknown()) {
    if (is_ground_image(a)) return Term::inject(m, *ground_of(a));
    // a is an arrow other than *->*: factor through the function ground.
    Type star_fun = Type::arrow(Type::unknown(), Type::unknown());
    return Term::inject(compile_cast(a, star_fun, m), Ground::fun());
  }
  if (a.is_unknown()) {
    if (is_ground_image(b)) return Term::project(m, *ground_of(b));
    Type star_fun = Type::arrow(Type::unknown(), Type::unknown());
    return compile_cast(star_fun, b, Term::project(m, Ground::fun()));
  }
  // Both arrows (consistent non-equal bases are impossible).
  Term x = compile_cast(b.dom(), a.dom(), Term::var(0));
  Term call = Term::app(shift_term(m), x);
  return Term::lam(compile_cast(a.cod(), b.cod(), call));
}

// Same compilation on annotated terms; the eta-expansion lambda takes
// the target domain. Output infers exactly b when m infers a.
inline AnnTerm compile_cast_ann(const Type& a, const Type& b, const AnnTerm& m) {
  if (a == b) return m;
  if (!consistent(a, b)) throw CastCompileError(a, b);
  if (b.is_unknown()) {
    if (is_ground_image(a)) return AnnTerm::inject(m, *ground_of(a));
    Type star_fun = Type::arrow(Type::unknown(), Type::unknown());
    return AnnTerm::inject(compile_cast_ann(a, star_fun, m), Ground::fun());
  }
  if (a.is_unknown()) {
    if (is_ground_image(b)) return AnnTerm::project(m, *ground_of(b));
    Type star_fun = Type::arrow(Type::unknown(), Type::unknown());
    return compile_cast_ann(star_fun, b, AnnTerm::project(m, Ground::fun()));
  }
  AnnTerm x = compile_cast_ann(b.dom(), a.dom(), AnnTerm::var(0));
  AnnTerm call = AnnTerm::app(ann_shift(m), x);
  return AnnTerm::lam(b.dom(), compile_cast_ann(a.cod(), b.cod(), call));
}

}  // namespace castlab

#endif
