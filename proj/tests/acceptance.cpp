// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit
// if anything failed. argv[1] is the CLI binary, used by the last
// criterion to observe the process-level exit code.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "castlab/castlab.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace castlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  std::string label;
  std::optional<std::string> failure;  // empty = pass
  double elapsed = 0;
};

std::vector<AnnTerm>& corpus() {
  static std::vector<AnnTerm> terms = [] {
    std::vector<AnnTerm> out;
    out.reserve(10000);
    for (std::uint64_t i = 0; i < 10000; ++i) out.push_back(testutil::corpus_term(i));
    return out;
  }();
  return terms;
}

// ---------------------------------------------------------------------------

std::optional<std::string> reduction_goldens() {
  struct Golden {
    const char* src;
    RuleKind rule;
    Outcome::Kind kind;
    const char* value;  // printed form, Value only
  };
  const Golden goldens[] = {
      {"((lam (x : Nat) x) (nat 1))", RuleKind::Beta, Outcome::Kind::Value, "(nat 1)"},
      {"(proj Nat (inj Nat (nat 2)))", RuleKind::Collapse, Outcome::Kind::Value,
       "(nat 2)"},
      {"(proj Fun (inj Nat (nat 2)))", RuleKind::Collide, Outcome::Kind::Blame, ""},
  };
  for (const Golden& g : goldens) {
    Term core = infer(TypeContext{}, parse_term(g.src)).core;
    auto s = step(core);
    if (!s) return std::string(g.src) + ": no step";
    if (s->rule != g.rule)
      return std::string(g.src) + ": rule " + to_string(s->rule);
    Outcome o = eval(core, 10);
    if (o.kind != g.kind || o.steps != 1)
      return std::string(g.src) + ": outcome " + std::to_string(o.steps) + " steps";
    if (o.kind == Outcome::Kind::Value && print_term(*o.value) != g.value)
      return std::string(g.src) + ": value " + print_term(*o.value);
  }
  return std::nullopt;
}

std::optional<std::string> corpus_rederivation() {
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const AnnTerm& m = corpus()[i];
    if (m.size() > 12) return "term " + std::to_string(i) + " exceeds size 12";
    Term cur = infer(TypeContext{}, m).core;
    for (int s = 0; s < 64; ++s) {
      auto all = oracle::all_steps(cur);
      auto mine = step(cur);
      if (is_value(cur) || cur.kind() == TermKind::Blame) {
        if (mine || !all.empty())
          return "halted state steps at term " + std::to_string(i);
        break;
      }
      if (!mine) return "stuck at term " + std::to_string(i);
      if (all.size() != 1 || all[0].second != mine->next ||
          all[0].first != to_string(mine->rule))
        return "decomposition mismatch at term " + std::to_string(i);
      cur = mine->next;
    }
  }
  return std::nullopt;
}

Term raw_term(std::mt19937_64& rng, std::size_t depth, std::size_t free_n) {
  auto pick = rng() % (depth == 0 ? 3u : 7u);
  switch (pick) {
    case 0:
      if (free_n > 0) return Term::var(rng() % free_n);
      return Term::nat(static_cast<std::int64_t>(rng() % 5));
    case 1: return Term::nat(static_cast<std::int64_t>(rng() % 5));
    case 2: return Term::blame();
    case 3: return Term::lam(raw_term(rng, depth - 1, free_n + 1));
    case 4:
      return Term::app(raw_term(rng, depth - 1, free_n), raw_term(rng, depth - 1, free_n));
    case 5:
      return Term::inject(raw_term(rng, depth - 1, free_n),
                          rng() % 2 ? Ground::nat() : Ground::fun());
    default:
      return Term::project(raw_term(rng, depth - 1, free_n),
                           rng() % 2 ? Ground::boolean() : Ground::fun());
  }
}

Substitution raw_subst(std::mt19937_64& rng, std::size_t max_prefix, std::size_t depth) {
  Substitution s = Substitution::shift(rng() % 4);
  std::size_t n = rng() % (max_prefix + 1);
  for (std::size_t i = 0; i < n; ++i) s = Substitution::cons(raw_term(rng, depth, 3), s);
  return s;
}

std::optional<std::string> substitution_laws() {
  std::mt19937_64 rng(0x5B57);
  for (int it = 0; it < 1000; ++it) {
    Substitution sigma = raw_subst(rng, 4, 3);
    Term n = raw_term(rng, 4, 4);
    Term v = raw_term(rng, 3, 3);
    if (bracket(subst_apply(sigma.ext(), n), v) !=
        subst_apply(Substitution::cons(v, sigma), n))
      return "ext-sub-cons case " + std::to_string(it);
    std::size_t x = rng() % 6;
    if (subst_apply(sigma, Term::var(x)) != sigma.apply_var(x))
      return "var equation case " + std::to_string(it);
    Term l = raw_term(rng, 3, 3), m = raw_term(rng, 3, 3);
    if (subst_apply(sigma, Term::app(l, m)) !=
        Term::app(subst_apply(sigma, l), subst_apply(sigma, m)))
      return "app equation case " + std::to_string(it);
    if (subst_apply(sigma, Term::lam(n)) != Term::lam(subst_apply(sigma.ext(), n)))
      return "lam equation case " + std::to_string(it);
  }
  for (int it = 0; it < 1000; ++it) {
    Term m = erase(testutil::corpus_term(0x0DD000 + it, 20));
    Substitution sigma = raw_subst(rng, 3, 3);
    if (subst_apply(sigma, m) != oracle::named_subst_apply(sigma, m))
      return "oracle disagreement case " + std::to_string(it);
  }
  return std::nullopt;
}

std::optional<std::string> progress_preservation() {
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    AnnTerm cur = corpus()[i];
    Type at = infer(TypeContext{}, cur).type;
    for (int s = 0; s < 64; ++s) {
      Term core = erase(cur);
      bool halted = is_value(core) || core.kind() == TermKind::Blame;
      auto next = step(core);
      if (!halted && !next) return "progress fails at term " + std::to_string(i);
      if (halted) break;
      auto ann = step_annotated(cur);
      if (!ann || erase(*ann) != next->next)
        return "annotated step diverges at term " + std::to_string(i);
      if (infer(TypeContext{}, *ann).type != at)
        return "preservation fails at term " + std::to_string(i);
      cur = *ann;
    }
  }
  return std::nullopt;
}

std::vector<Type> all_types(int depth) {
  std::vector<Type> out = {Type::unknown(), Type::nat(), Type::boolean()};
  if (depth <= 1) return out;
  std::vector<Type> sub = all_types(depth - 1);
  for (const Type& a : sub)
    for (const Type& b : sub) out.push_back(Type::arrow(a, b));
  return out;
}

std::optional<std::string> precision_criteria() {
  if (refl_prec(Type::unknown()) != TypePrecDeriv::unk_unk()) return "refl at *";
  if (refl_prec(Type::nat()) != TypePrecDeriv::base(Base::Nat)) return "refl at Nat";
  Type arr = Type::arrow(Type::boolean(), Type::unknown());
  if (refl_prec(arr) != TypePrecDeriv::fun(TypePrecDeriv::base(Base::Bool),
                                           TypePrecDeriv::unk_unk()))
    return "refl at arrow";

  for (const Type& a : all_types(4)) {
    auto up = oracle::type_prec_all(Type::unknown(), a);
    auto mine = type_prec(Type::unknown(), a);
    if (up.size() != 1 || !mine || !(*mine == up[0]))
      return "* <= " + to_string(a) + " not unique";
    for (Ground g : {Ground::nat(), Ground::boolean(), Ground::fun()}) {
      auto gall = oracle::type_prec_all(ground_to_type(g), a);
      auto gmine = type_prec(ground_to_type(g), a);
      if (gall.size() > 1 || gmine.has_value() != (gall.size() == 1))
        return to_string(ground_to_type(g)) + " <= " + to_string(a) + " not unique";
      if (gmine && !(*gmine == gall[0]))
        return to_string(ground_to_type(g)) + " <= " + to_string(a) + " differs";
    }
  }

  for (std::uint64_t i = 0; i < 1000; ++i) {
    AnnTerm m = testutil::corpus_term(0x9E1F00 + i);
    Type t = infer(TypeContext{}, m).type;
    PrecSearchResult r = infer_term_prec({}, m, m);
    if (!r.found()) return "self precision misses term " + std::to_string(i);
    if (!(*r.type_deriv == refl_prec(t)))
      return "self precision conclusion differs at term " + std::to_string(i);
    Term core = erase(m);
    if (!validate_term_prec({}, *r.term_deriv, core, core))
      return "validator rejects search output at term " + std::to_string(i);
  }

  // 50 corruptions: five shapes, each provably underivable against a
  // closed blame-free self pair.
  std::size_t rejected = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    Term core = erase(testutil::corpus_term(0x9E1F00 + i));
    const TermPrecDeriv corruptions[] = {
        TermPrecDeriv::var(999),
        TermPrecDeriv::lit(Lit::num(-12345)),
        TermPrecDeriv::blame(Type::boolean()),
        TermPrecDeriv::app(TermPrecDeriv::var(0), TermPrecDeriv::var(0)),
        TermPrecDeriv::inj_l(Ground::boolean(), TermPrecDeriv::lit(Lit::boolean(true))),
    };
    for (const TermPrecDeriv& d : corruptions)
      if (!validate_term_prec({}, d, core, core)) ++rejected;
  }
  if (rejected != 50)
    return "only " + std::to_string(rejected) + "/50 corruptions rejected";
  return std::nullopt;
}

std::optional<std::string> campaign_criterion(double& rate_out) {
  GenConfig cfg;
  cfg.seed = 1;
  cfg.fuel = 1000;
  CampaignReport rep = fuzz_campaign(cfg, 10000);
  rate_out = rep.inconclusive_rate();
  if (rep.totals.violation != 0)
    return std::to_string(rep.totals.violation) + " violations";
  if (!rep.sem_approx_failures.empty())
    return std::to_string(rep.sem_approx_failures.size()) + " sem-approx failures";
  if (rep.totals.inconclusive == 0)
    return "inconclusive rate is zero (no divergers generated)";
  return std::nullopt;
}

std::optional<std::string> cast_compilation() {
  std::vector<Type> ts = all_types(3);
  for (const Type& a : ts) {
    for (const Type& b : ts) {
      if (consistent(a, b)) {
        AnnTerm out = compile_cast_ann(a, b, AnnTerm::blame(a));
        if (infer(TypeContext{}, out).type != b)
          return to_string(a) + " to " + to_string(b) + " misses target";
      } else {
        try {
          compile_cast_ann(a, b, AnnTerm::blame(a));
          return to_string(a) + " to " + to_string(b) + " should refuse";
        } catch (const CastCompileError&) {
        }
      }
    }
  }
  Outcome o = eval(compile_cast(Type::unknown(), Type::nat(),
                                compile_cast(Type::nat(), Type::unknown(), Term::nat(2))),
                   10);
  if (o.kind != Outcome::Kind::Value || !(*o.value == Term::nat(2)))
    return "Nat round trip broken";
  Outcome ob = eval(
      compile_cast(Type::unknown(), Type::boolean(),
                   compile_cast(Type::boolean(), Type::unknown(), Term::boolean(true))),
      10);
  if (ob.kind != Outcome::Kind::Value || !(*ob.value == Term::boolean(true)))
    return "Bool round trip broken";
  try {
    compile_cast(Type::nat(), Type::boolean(), Term::nat(1));
    return "Nat to Bool should refuse";
  } catch (const CastCompileError&) {
  }
  return std::nullopt;
}

std::optional<std::string> violation_detector(const std::string& cli) {
  Verdict v = gradual_verdict(Term::blame(), Term::nat(4), 10);
  if (v.kind != VerdictKind::Violation ||
      *v.violation != ViolationKind::LessBlamesMoreHalts)
    return "library verdict is not a violation";
  if (cli.empty()) return "no CLI binary supplied";
  std::string cmd =
      "'" + cli + "' fuzz --seed 1 --pairs 30 --fuel 100 --adversarial >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 2) return "adversarial fuzz exited " + std::to_string(code);
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::vector<Criterion> results;
  double rate = 0;

  auto run = [&](std::string label, auto&& fn, double budget) {
    Criterion c;
    c.label = std::move(label);
    auto t0 = Clock::now();
    c.failure = fn();
    c.elapsed = seconds_since(t0);
    if (!c.failure && budget > 0 && c.elapsed > budget) {
      std::ostringstream ss;
      ss << "took " << c.elapsed << "s, budget " << budget << "s";
      c.failure = ss.str();
    }
    results.push_back(std::move(c));
  };

  run("reduction rule goldens", reduction_goldens, 1.0);
  run("10k-term corpus step re-derivation", corpus_rederivation, 30.0);
  run("substitution laws and naive oracle", substitution_laws, 10.0);
  run("progress and preservation over the corpus", progress_preservation, 0);
  run("precision derivations, uniqueness, validator", precision_criteria, 0);
  run("seeded campaign: no violations, no approximation failures",
      [&] { return campaign_criterion(rate); }, 300.0);
  run("cast compilation against every small type pair", cast_compilation, 0);
  run("violation detector end to end", [&] { return violation_detector(cli); }, 0);

  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Criterion& c = results[i];
    std::printf("[%s] %zu. %s (%.2fs)", c.failure ? "FAIL" : "PASS", i + 1,
                c.label.c_str(), c.elapsed);
    if (c.failure) {
      std::printf(" -- %s", c.failure->c_str());
      ++failures;
    }
    if (i == 5) std::printf(" [inconclusive-rate %.4f]", rate);
    std::printf("\n");
  }
  return failures == 0 ? 0 : 1;
}
