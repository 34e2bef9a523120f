#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "castlab/castlab.hpp"
#include "test_util.hpp"

using namespace castlab;

namespace {

Outcome fake_value(std::size_t steps) { return Outcome::val(Term::nat(0), steps); }

}  // namespace

TEST_CASE("generation is deterministic and well typed", "[harness]") {
  const Type targets[] = {Type::nat(), Type::boolean(), Type::unknown(),
                          Type::arrow(Type::unknown(), Type::unknown()),
                          Type::arrow(Type::unknown(), Type::nat())};
  std::set<std::string> distinct;
  for (const Type& target : targets) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      GenConfig cfg;
      cfg.seed = 0xF00D + s;
      AnnTerm a = gen_term(cfg, target);
      AnnTerm b = gen_term(cfg, target);
      CHECK(a == b);
      CHECK(infer(TypeContext{}, a).type == target);
      CHECK(a.size() <= cfg.max_size);
      distinct.insert(print_ann_term(a));
    }
  }
  // The spread is real: many different terms across seeds.
  CHECK(distinct.size() > 100);

  std::mt19937_64 r1(42), r2(42);
  CHECK(gen_type(r1, 3) == gen_type(r2, 3));
}

TEST_CASE("starved weights refuse to generate", "[harness]") {
  GenConfig cfg;
  cfg.weights.lit = 0;
  cfg.weights.lam = 0;
  cfg.weights.app = 0;
  CHECK_THROWS_AS(gen_term(cfg, Type::nat()), GenerationExhausted);
}

TEST_CASE("mutation with budget zero is the self pair", "[harness]") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    AnnTerm m = testutil::corpus_term(0xB0B0 + i);
    PrecPair p = abstract_mutate(m, 0, i);
    CHECK(p.less == erase(m));
    CHECK(p.more == erase(m));
    CHECK(p.type_deriv == refl_prec(infer(TypeContext{}, m).type));
    CHECK(validate_term_prec({}, p.term_deriv, p.less, p.more));
  }
}

TEST_CASE("mutation is deterministic and always validated", "[harness]") {
  std::size_t edited = 0;
  for (std::uint64_t i = 0; i < 150; ++i) {
    AnnTerm m = testutil::corpus_term(0xED17 + i);
    for (std::size_t budget : {1u, 2u}) {
      PrecPair p = [&]() {
        try {
          return abstract_mutate(m, budget, i * 7 + budget);
        } catch (const MutationBudgetExhausted&) {
          return abstract_mutate(m, 0, i * 7 + budget);
        }
      }();
      auto c = conclude_term_prec({}, p.term_deriv, p.less, p.more);
      REQUIRE(c.has_value());
      CHECK(*c == p.type_deriv);
      CHECK(p.more == erase(m));  // default mode never edits the right side
      if (p.less != p.more) ++edited;
      try {
        PrecPair q = abstract_mutate(m, budget, i * 7 + budget);
        CHECK(q.less == p.less);
        CHECK(q.more == p.more);
      } catch (const MutationBudgetExhausted&) {
      }
    }
  }
  CHECK(edited > 100);
}

TEST_CASE("each edit shape is reachable", "[harness]") {
  // Root inject and inject+project wrap, from a bare literal.
  AnnTerm four = AnnTerm::nat(4);
  bool saw_root = false, saw_wrap = false;
  for (std::uint64_t s = 0; s < 20; ++s) {
    PrecPair p = abstract_mutate(four, 1, s);
    CHECK(p.more == Term::nat(4));
    if (p.less == Term::inject(Term::nat(4), Ground::nat())) saw_root = true;
    if (p.less == Term::project(Term::inject(Term::nat(4), Ground::nat()), Ground::nat()))
      saw_wrap = true;
  }
  CHECK(saw_root);
  CHECK(saw_wrap);

  // Domain relaxation on a root lambda.
  AnnTerm id_n = AnnTerm::lam(Type::nat(), AnnTerm::var(0));
  bool saw_relax = false;
  for (std::uint64_t s = 0; s < 30 && !saw_relax; ++s) {
    PrecPair p = abstract_mutate(id_n, 1, s);
    if (p.less == Term::lam(Term::project(Term::var(0), Ground::nat()))) saw_relax = true;
  }
  CHECK(saw_relax);

  // A lambda in applied position must not relax: the application would
  // stop typing. The pair always validates whatever edit was chosen.
  AnnTerm applied = AnnTerm::app(id_n, AnnTerm::nat(2));
  for (std::uint64_t s = 0; s < 30; ++s) {
    PrecPair p = abstract_mutate(applied, 2, s);
    auto c = conclude_term_prec({}, p.term_deriv, p.less, p.more);
    REQUIRE(c.has_value());
    CHECK(*c == p.type_deriv);
    // The left side still types, at whatever the derivation concludes.
    CHECK(check_core(TypeContext{}, p.less, c->less()));
  }

  // Adversarial mode can blame the right side.
  bool saw_blame = false;
  AnnTerm host = AnnTerm::app(id_n, AnnTerm::nat(2));
  for (std::uint64_t s = 0; s < 40 && !saw_blame; ++s) {
    try {
      PrecPair p = abstract_mutate(host, 1, s, true);
      std::string printed = print_term(p.more);
      if (printed.find("blame") != std::string::npos) {
        saw_blame = true;
        CHECK(validate_term_prec({}, p.term_deriv, p.less, p.more));
      }
    } catch (const MutationBudgetExhausted&) {
    }
  }
  CHECK(saw_blame);
}

TEST_CASE("verdict decision table", "[harness]") {
  Outcome value0 = fake_value(0);
  Outcome blame1 = Outcome::blamed(1);
  Outcome tout = Outcome::timeout(100);

  // More precise side blaming settles everything.
  for (const Outcome& less : {value0, blame1, tout})
    CHECK(gradual_verdict_outcomes(less, blame1).kind == VerdictKind::Consistent);

  CHECK(gradual_verdict_outcomes(value0, value0).kind == VerdictKind::Consistent);

  Verdict v = gradual_verdict_outcomes(blame1, value0);
  CHECK(v.kind == VerdictKind::Violation);
  CHECK(*v.violation == ViolationKind::LessBlamesMoreHalts);

  CHECK(*gradual_verdict_outcomes(tout, value0).reason ==
        InconclusiveReason::LessTimeoutMoreValue);
  CHECK(*gradual_verdict_outcomes(value0, tout).reason ==
        InconclusiveReason::MoreTimeoutLessValue);
  CHECK(*gradual_verdict_outcomes(blame1, tout).reason ==
        InconclusiveReason::MoreTimeoutLessBlame);
  CHECK(*gradual_verdict_outcomes(tout, tout).reason ==
        InconclusiveReason::BothDivergeSoFar);

  // Term-level wrapper, including the canonical violating pair.
  CHECK(gradual_verdict(Term::blame(), Term::nat(4), 10).kind == VerdictKind::Violation);
  CHECK(gradual_verdict(testutil::omega_loop(), testutil::omega_loop(), 50).kind ==
        VerdictKind::Inconclusive);
}

TEST_CASE("semantic approximation table", "[harness]") {
  Outcome value2 = fake_value(2);
  Outcome blame2 = Outcome::blamed(2);
  Outcome tout = Outcome::timeout(100);

  // k = 0 holds vacuously in both directions for any outcomes.
  for (const Outcome& a : {value2, blame2, tout})
    for (const Outcome& b : {value2, blame2, tout})
      for (Direction d : {Direction::Le, Direction::Ge})
        CHECK(sem_approx_outcomes(d, a, b, 0) == ThreeValued::Holds);

  // A probe that is still running at k holds.
  CHECK(sem_approx_outcomes(Direction::Le, tout, value2, 8) == ThreeValued::Holds);
  CHECK(sem_approx_outcomes(Direction::Le, value2, blame2, 2) == ThreeValued::Holds);
  CHECK(sem_approx_outcomes(Direction::Ge, value2, blame2, 2) == ThreeValued::Holds);

  // Le: the less side halting early consults the more side.
  CHECK(sem_approx_outcomes(Direction::Le, value2, value2, 8) == ThreeValued::Holds);
  CHECK(sem_approx_outcomes(Direction::Le, value2, tout, 8) == ThreeValued::Unknown);
  CHECK(sem_approx_outcomes(Direction::Le, blame2, blame2, 8) == ThreeValued::Holds);
  CHECK(sem_approx_outcomes(Direction::Le, blame2, value2, 8) == ThreeValued::Fails);
  CHECK(sem_approx_outcomes(Direction::Le, blame2, tout, 8) == ThreeValued::Unknown);

  // Ge: the more side halting early consults the less side.
  CHECK(sem_approx_outcomes(Direction::Ge, value2, value2, 8) == ThreeValued::Holds);
  CHECK(sem_approx_outcomes(Direction::Ge, blame2, value2, 8) == ThreeValued::Fails);
  CHECK(sem_approx_outcomes(Direction::Ge, tout, value2, 8) == ThreeValued::Unknown);
  CHECK(sem_approx_outcomes(Direction::Ge, value2, blame2, 8) == ThreeValued::Holds);

  // Term-level probes.
  CHECK(sem_approx(Direction::Le, Term::blame(), Term::nat(4), 1, 10) ==
        ThreeValued::Fails);
  CHECK(sem_approx(Direction::Ge, Term::blame(), Term::nat(4), 1, 10) ==
        ThreeValued::Fails);
  Term round = Term::project(Term::inject(Term::nat(2), Ground::nat()), Ground::nat());
  for (std::size_t k : kSemApproxKs) {
    CHECK(sem_approx(Direction::Le, round, Term::nat(2), k, 100) != ThreeValued::Fails);
    CHECK(sem_approx(Direction::Ge, round, Term::nat(2), k, 100) != ThreeValued::Fails);
  }
}

TEST_CASE("campaigns reproduce byte for byte", "[harness]") {
  GenConfig cfg;
  cfg.seed = 11;
  cfg.fuel = 200;
  CampaignReport a = fuzz_campaign(cfg, 120);
  CampaignReport b = fuzz_campaign(cfg, 120);
  CHECK(campaign_report_to_json(a).dump() == campaign_report_to_json(b).dump());
  GenConfig other = cfg;
  other.seed = 12;
  CHECK(campaign_report_to_json(a).dump() !=
        campaign_report_to_json(fuzz_campaign(other, 120)).dump());
}

TEST_CASE("default campaigns report no violations", "[harness]") {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.fuel = 300;
  CampaignReport rep = fuzz_campaign(cfg, 400);
  CHECK(rep.totals.violation == 0);
  CHECK(rep.violations.empty());
  CHECK(rep.sem_approx_failures.empty());
  CHECK(rep.totals.consistent + rep.totals.violation + rep.totals.inconclusive == 400);
  CHECK(rep.inconclusive_rate() >= 0.0);
  CHECK(rep.inconclusive_rate() <= 1.0);
}

TEST_CASE("adversarial campaigns catch the planted violation", "[harness]") {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.fuel = 200;
  CampaignReport rep = fuzz_campaign(cfg, 50, true);
  REQUIRE(rep.totals.violation >= 1);
  REQUIRE_FALSE(rep.violations.empty());
  const ViolationRecord& v = rep.violations.front();
  CHECK(v.pair_index == 0);
  CHECK(v.planted_control);
  CHECK(v.kind == "less-blames-more-halts");
  CHECK(v.less == "blame");
  CHECK(v.more == "(nat 4)");
  CHECK(v.less_trace.empty());  // both sides halt immediately
  CHECK(v.more_trace.empty());

  json j = campaign_report_to_json(rep);
  CHECK(j["config"]["adversarial"] == true);
  CHECK(j["violations"][0]["planted-control"] == true);
  CHECK(j["violations"][0]["kind"] == "less-blames-more-halts");
  CHECK(j["totals"]["violation"].get<std::size_t>() == rep.totals.violation);
}

TEST_CASE("pair seeds are spread", "[harness]") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(detail::pair_seed(1, i));
  CHECK(seen.size() == 1000);
  CHECK(detail::pair_seed(1, 5) == detail::pair_seed(1, 5));
  CHECK(detail::pair_seed(1, 5) != detail::pair_seed(2, 5));
}

TEST_CASE("derivation json shapes", "[harness]") {
  json var = term_prec_to_json(TermPrecDeriv::var(2));
  CHECK(var["rule"] == "var");
  CHECK(var["index"] == 2);

  AnnTerm inj4 = AnnTerm::inject(AnnTerm::nat(4), Ground::nat());
  PrecSearchResult r = infer_term_prec({}, inj4, AnnTerm::nat(4));
  REQUIRE(r.found());
  json cast = term_prec_to_json(*r.term_deriv);
  CHECK(cast["rule"] == "inj-L");
  CHECK(cast["ground"] == "Nat");
  CHECK(cast["children"][0]["rule"] == "lit");

  std::vector<TraceEntry> trace;
  eval_traced(Term::project(Term::inject(Term::nat(2), Ground::nat()), Ground::nat()),
              10, trace);
  json tj = trace_to_json(trace);
  REQUIRE(tj.size() == 1);
  CHECK(tj[0]["rule"] == "collapse");
  CHECK(tj[0]["term-after"] == "(nat 2)");
}
