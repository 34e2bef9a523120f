#ifndef CASTLAB_CAMPAIGN_HPP
#define CASTLAB_CAMPAIGN_HPP

// Randomized gradual-guarantee campaign: generate a well-typed term,
// mutate it into a validated precision pair, evaluate both sides, and
// check the verdict plus step-indexed approximation in both directions.
// Every pair is derived deterministically from (cfg.seed, pair index),
// so a campaign with the same config reproduces byte for byte.
//
// Adversarial mode additionally tries blame-insertion edits and plants
// one known violating pair (blame vs. (nat 4)) at index 0. That pair is
// not derivable in the precision relation and skips pair validation; it
// exists to prove the violation detector and the nonzero exit path are
// live. It is flagged planted_control in the report.

#include <cstdint>
#include <string>
#include <vector>

#include "castlab/generate.hpp"
#include "castlab/mutate.hpp"
#include "castlab/reduce.hpp"
#include "castlab/syntax.hpp"
#include "castlab/verdict.hpp"

namespace castlab {

struct CampaignTotals {
  std::size_t consistent = 0;
  std::size_t violation = 0;
  std::size_t inconclusive = 0;
};

struct ViolationRecord {
  std::size_t pair_index = 0;
  std::uint64_t seed = 0;
  std::string less, more;  // concrete syntax
  std::string kind;
  bool planted_control = false;
  std::vector<TraceEntry> less_trace, more_trace;
};

struct SemApproxFailure {
  std::size_t pair_index = 0;
  std::uint64_t seed = 0;
  Direction dir = Direction::Le;
  std::size_t k = 0;
  std::string less, more;
};

inline constexpr std::size_t kSemApproxKs[] = {0, 1, 2, 4, 8};

struct CampaignReport {
  GenConfig cfg;
  std::size_t n_pairs = 0;
  bool adversarial = false;
  CampaignTotals totals;
  std::vector<ViolationRecord> violations;
  std::vector<SemApproxFailure> sem_approx_failures;

  double inconclusive_rate() const {
    return n_pairs == 0 ? 0.0
                        : double(totals.inconclusive) / double(n_pairs);
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t pair_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  return splitmix64(campaign_seed ^ splitmix64(index + 1));
}

}  // namespace detail

inline CampaignReport fuzz_campaign(const GenConfig& cfg, std::size_t n_pairs,
                                    bool adversarial = false) {
  CampaignReport rep;
  rep.cfg = cfg;
  rep.n_pairs = n_pairs;
  rep.adversarial = adversarial;

  for (std::size_t i = 0; i < n_pairs; ++i) {
    std::uint64_t seed = detail::pair_seed(cfg.seed, i);

    struct BuiltPair {
      Term less, more;
      bool planted;
    };
    BuiltPair built = [&]() -> BuiltPair {
      if (adversarial && i == 0) return {Term::blame(), Term::nat(4), true};
      std::mt19937_64 rng(seed);
      Type target = gen_type(rng, cfg.type_depth);
      GenConfig gcfg = cfg;
      gcfg.seed = rng();
      AnnTerm more_ann = [&] {
        for (int attempt = 0;; ++attempt) {
          try {
            return gen_term(gcfg, target);
          } catch (const GenerationExhausted&) {
            if (attempt >= 8) throw;
            gcfg.seed = rng();
          }
        }
      }();
      std::size_t budget = detail::draw(rng, 3);
      bool adv_pair = adversarial && detail::draw(rng, 4) == 0;
      std::uint64_t mseed = rng();
      PrecPair pair = [&] {
        try {
          return abstract_mutate(more_ann, budget, mseed, adv_pair);
        } catch (const MutationBudgetExhausted&) {
          return abstract_mutate(more_ann, 0, mseed, false);
        }
      }();
      return {pair.less, pair.more, false};
    }();
    const Term& less = built.less;
    const Term& more = built.more;
    bool planted = built.planted;

    Outcome o_less = eval(less, cfg.fuel);
    Outcome o_more = eval(more, cfg.fuel);
    Verdict v = gradual_verdict_outcomes(o_less, o_more);
    switch (v.kind) {
      case VerdictKind::Consistent: ++rep.totals.consistent; break;
      case VerdictKind::Violation: ++rep.totals.violation; break;
      case VerdictKind::Inconclusive: ++rep.totals.inconclusive; break;
    }
    if (v.kind == VerdictKind::Violation) {
      ViolationRecord rec;
      rec.pair_index = i;
      rec.seed = seed;
      rec.less = print_term(less);
      rec.more = print_term(more);
      rec.kind = to_string(*v.violation);
      rec.planted_control = planted;
      eval_traced(less, cfg.fuel, rec.less_trace);
      eval_traced(more, cfg.fuel, rec.more_trace);
      rep.violations.push_back(std::move(rec));
    }
    for (Direction dir : {Direction::Le, Direction::Ge}) {
      for (std::size_t k : kSemApproxKs) {
        if (sem_approx_outcomes(dir, o_less, o_more, k) == ThreeValued::Fails) {
          rep.sem_approx_failures.push_back(SemApproxFailure{
              i, seed, dir, k, print_term(less), print_term(more)});
        }
      }
    }
  }
  return rep;
}

}  // namespace castlab

#endif
