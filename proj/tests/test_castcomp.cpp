#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "castlab/castlab.hpp"
#include "test_util.hpp"

using namespace castlab;

namespace {

std::vector<Type> all_types(int depth) {
  std::vector<Type> out = {Type::unknown(), Type::nat(), Type::boolean()};
  if (depth <= 1) return out;
  std::vector<Type> sub = all_types(depth - 1);
  for (const Type& a : sub)
    for (const Type& b : sub) out.push_back(Type::arrow(a, b));
  return out;
}

}  // namespace

TEST_CASE("identity casts vanish", "[castcomp]") {
  Term m = Term::nat(2);
  CHECK(compile_cast(Type::nat(), Type::nat(), m) == m);
  Type uu = Type::arrow(Type::unknown(), Type::unknown());
  CHECK(compile_cast(uu, uu, Term::lam(Term::var(0))) == Term::lam(Term::var(0)));
  CHECK(compile_cast(Type::unknown(), Type::unknown(), Term::blame()) == Term::blame());
}

TEST_CASE("casts to and from * at ground images", "[castcomp]") {
  Term two = Term::nat(2);
  CHECK(compile_cast(Type::nat(), Type::unknown(), two) ==
        Term::inject(two, Ground::nat()));
  CHECK(compile_cast(Type::boolean(), Type::unknown(), Term::boolean(true)) ==
        Term::inject(Term::boolean(true), Ground::boolean()));
  CHECK(compile_cast(Type::unknown(), Type::nat(), Term::var(0)) ==
        Term::project(Term::var(0), Ground::nat()));
  Type uu = Type::arrow(Type::unknown(), Type::unknown());
  Term id = Term::lam(Term::var(0));
  CHECK(compile_cast(uu, Type::unknown(), id) == Term::inject(id, Ground::fun()));
  CHECK(compile_cast(Type::unknown(), uu, Term::var(0)) ==
        Term::project(Term::var(0), Ground::fun()));
}

TEST_CASE("non-ground arrows factor through * -> *", "[castcomp]") {
  Type nn = Type::arrow(Type::nat(), Type::nat());
  Term m = Term::var(0);
  // Eta-expand to * -> *, then one injection at Fun: the function's
  // argument is projected back to Nat, its result injected.
  Term expect = Term::inject(
      Term::lam(Term::inject(
          Term::app(shift_term(m), Term::project(Term::var(0), Ground::nat())),
          Ground::nat())),
      Ground::fun());
  CHECK(compile_cast(nn, Type::unknown(), m) == expect);
  // And back: project at Fun, then eta-expand to Nat -> Nat.
  Term back = compile_cast(Type::unknown(), nn, m);
  Term proj = Term::project(m, Ground::fun());
  CHECK(back ==
        Term::lam(Term::project(
            Term::app(shift_term(proj), Term::inject(Term::var(0), Ground::nat())),
            Ground::nat())));
}

TEST_CASE("inconsistent endpoints are compile errors", "[castcomp]") {
  CHECK_THROWS_AS(compile_cast(Type::nat(), Type::boolean(), Term::nat(1)),
                  CastCompileError);
  CHECK_THROWS_AS(compile_cast(Type::boolean(), Type::nat(), Term::boolean(true)),
                  CastCompileError);
  Type nn = Type::arrow(Type::nat(), Type::nat());
  CHECK_THROWS_AS(compile_cast(Type::nat(), nn, Term::nat(1)), CastCompileError);
  CHECK_THROWS_AS(compile_cast_ann(Type::nat(), Type::boolean(), AnnTerm::nat(1)),
                  CastCompileError);
  try {
    compile_cast(Type::nat(), Type::boolean(), Term::nat(1));
  } catch (const CastCompileError& e) {
    CHECK(e.from() == Type::nat());
    CHECK(e.to() == Type::boolean());
  }
}

TEST_CASE("base round trips collapse to the original literal", "[castcomp]") {
  Term two = Term::nat(2);
  Term round = compile_cast(Type::unknown(), Type::nat(),
                            compile_cast(Type::nat(), Type::unknown(), two));
  Outcome o = eval(round, 10);
  REQUIRE(o.kind == Outcome::Kind::Value);
  CHECK(*o.value == two);
  CHECK(o.steps == 1);  // one collapse

  Term tf = Term::boolean(false);
  Outcome ob = eval(compile_cast(Type::unknown(), Type::boolean(),
                                 compile_cast(Type::boolean(), Type::unknown(), tf)),
                    10);
  REQUIRE(ob.kind == Outcome::Kind::Value);
  CHECK(*ob.value == tf);

  // A mismatched round trip collides instead.
  Outcome bad = eval(compile_cast(Type::unknown(), Type::boolean(),
                                  compile_cast(Type::nat(), Type::unknown(), two)),
                     10);
  CHECK(bad.kind == Outcome::Kind::Blame);
  CHECK(bad.steps == 1);
}

TEST_CASE("arrow round trips behave like the original function", "[castcomp]") {
  // inc-shaped: lam (x:Nat) x cast out to * and back, applied to 2,
  // still evaluates to 2.
  Type nn = Type::arrow(Type::nat(), Type::nat());
  Term id_n = Term::lam(Term::var(0));
  Term round = compile_cast(Type::unknown(), nn, compile_cast(nn, Type::unknown(), id_n));
  Outcome o = eval(Term::app(round, Term::nat(2)), 50);
  REQUIRE(o.kind == Outcome::Kind::Value);
  CHECK(*o.value == Term::nat(2));
}

TEST_CASE("compiled casts type-check at the target", "[castcomp]") {
  std::vector<Type> ts = all_types(3);
  REQUIRE(ts.size() == 147);
  std::size_t compiled = 0, refused = 0;
  for (const Type& a : ts) {
    for (const Type& b : ts) {
      if (consistent(a, b)) {
        AnnTerm out = compile_cast_ann(a, b, AnnTerm::blame(a));
        Inferred inf = infer(TypeContext{}, out);
        CHECK(inf.type == b);
        ++compiled;
      } else {
        CHECK_THROWS_AS(compile_cast_ann(a, b, AnnTerm::blame(a)), CastCompileError);
        ++refused;
      }
    }
  }
  CHECK(compiled > 0);
  CHECK(refused > 0);
  CHECK(compiled + refused == ts.size() * ts.size());
}

TEST_CASE("annotated and core compilation erase identically", "[castcomp]") {
  std::vector<Type> ts = all_types(2);
  for (const Type& a : ts) {
    for (const Type& b : ts) {
      if (!consistent(a, b)) continue;
      AnnTerm src = AnnTerm::blame(a);
      CHECK(erase(compile_cast_ann(a, b, src)) == compile_cast(a, b, erase(src)));
    }
  }
}

TEST_CASE("casting a value of the source type stays well typed under eval",
          "[castcomp]") {
  // Round-trip a few concrete values through every consistent depth-2
  // target and make sure evaluation never gets stuck.
  std::vector<Type> ts = all_types(2);
  const struct {
    Type type;
    AnnTerm term;
  } sources[] = {
      {Type::nat(), AnnTerm::nat(3)},
      {Type::boolean(), AnnTerm::boolean(true)},
      {Type::arrow(Type::nat(), Type::nat()),
       AnnTerm::lam(Type::nat(), AnnTerm::var(0))},
      {Type::unknown(), AnnTerm::inject(AnnTerm::nat(3), Ground::nat())},
  };
  for (const auto& s : sources) {
    for (const Type& b : ts) {
      if (!consistent(s.type, b)) continue;
      AnnTerm out = compile_cast_ann(s.type, b, s.term);
      CHECK(infer(TypeContext{}, out).type == b);
      Outcome o = eval(erase(out), 100);  // throws StuckTermError on a bug
      CHECK(o.halted());
    }
  }
}
