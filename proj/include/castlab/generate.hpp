#ifndef CASTLAB_GENERATE_HPP
#define CASTLAB_GENERATE_HPP

// Seeded, type-directed generation of closed well-typed terms.
//
// Determinism matters more than statistical niceties here: draws come
// straight from mt19937_64 (whose sequence the standard pins down)
// rather than the distribution classes, whose output is
// implementation-defined. Same config, same target, same term,
// everywhere.

#include <cassert>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "castlab/term.hpp"
#include "castlab/types.hpp"

namespace castlab {

// Relative weights for the production picked at each node. Zero
// disables a production; disabling too much can starve a target type.
struct GenWeights {
  unsigned var = 3;
  unsigned lit = 2;
  unsigned lam = 3;
  unsigned app = 4;
  unsigned inject = 3;
  unsigned project = 3;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_size = 12;
  std::size_t type_depth = 3;
  GenWeights weights{};
  std::size_t fuel = 1000;
};

class GenerationExhausted : public std::runtime_error {
 public:
  explicit GenerationExhausted(const Type& target)
      : std::runtime_error("generation exhausted at type " + to_string(target)) {}
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  assert(n > 0);
  return rng() % n;
}

// Smallest term inhabiting a type: literals at bases, a lambda chain
// down the codomain at arrows, an injected literal at *.
inline std::size_t min_term_size(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base: return 1;
    case Type::Kind::Unknown: return 2;
    case Type::Kind::Arrow: return 1 + min_term_size(t.cod());
  }
  return 1;
}

inline AnnTerm minimal_term(std::mt19937_64& rng, const Type& t, std::size_t& budget) {
  assert(budget >= min_term_size(t));
  switch (t.kind()) {
    case Type::Kind::Base:
      budget -= 1;
      if (t.base_kind() == Base::Nat) return AnnTerm::nat((std::int64_t)draw(rng, 100));
      return AnnTerm::boolean(draw(rng, 2) == 0);
    case Type::Kind::Unknown: {
      budget -= 1;
      Base b = draw(rng, 2) == 0 ? Base::Nat : Base::Bool;
      Type bt = Type::base(b);
      return AnnTerm::inject(minimal_term(rng, bt, budget), Ground::base(b));
    }
    case Type::Kind::Arrow: {
      budget -= 1;
      return AnnTerm::lam(t.dom(), minimal_term(rng, t.cod(), budget));
    }
  }
  budget -= 1;
  return AnnTerm::nat(0);
}

inline Type gen_type_impl(std::mt19937_64& rng, std::size_t depth) {
  // Leaves *, Nat, Bool equally likely; arrows roughly a third of
  // draws while depth remains.
  if (depth > 1 && draw(rng, 3) == 0)
    return Type::arrow(gen_type_impl(rng, depth - 1), gen_type_impl(rng, depth - 1));
  switch (draw(rng, 3)) {
    case 0: return Type::unknown();
    case 1: return Type::nat();
    default: return Type::boolean();
  }
}

inline bool minimal_enabled(const GenWeights& w, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base: return w.lit > 0;
    case Type::Kind::Unknown: return w.inject > 0 && w.lit > 0;
    case Type::Kind::Arrow: return w.lam > 0 && minimal_enabled(w, t.cod());
  }
  return false;
}

struct GenState {
  std::mt19937_64 rng;
  const GenConfig* cfg;
  std::vector<Type> ctx;  // index 0 innermost
};

inline AnnTerm gen_at(GenState& st, const Type& target, std::size_t& budget);

inline AnnTerm gen_app(GenState& st, const Type& target, std::size_t& budget) {
  // Pick an argument type the remaining budget can afford.
  Type a = Type::nat();
  for (int tries = 0; tries < 4; ++tries) {
    Type cand = gen_type_impl(st.rng, st.cfg->type_depth);
    if (budget >= 1 + 1 + min_term_size(target) + min_term_size(cand)) {
      a = cand;
      break;
    }
  }
  budget -= 1;
  Type fn_type = Type::arrow(a, target);
  std::size_t reserve = min_term_size(a);
  std::size_t fn_budget = budget - reserve;
  AnnTerm fn = gen_at(st, fn_type, fn_budget);
  budget = fn_budget + reserve;
  AnnTerm arg = gen_at(st, a, budget);
  return AnnTerm::app(fn, arg);
}

inline AnnTerm gen_at(GenState& st, const Type& target, std::size_t& budget) {
  assert(budget >= min_term_size(target));
  const GenWeights& w = st.cfg->weights;

  enum class P { Var, Lit, Lam, App, Inject, Project, Omega, Minimal };
  struct Cand {
    P p;
    unsigned weight;
  };
  std::vector<Cand> cands;

  std::vector<std::size_t> var_hits;
  for (std::size_t i = 0; i < st.ctx.size(); ++i)
    if (st.ctx[i] == target) var_hits.push_back(i);
  if (!var_hits.empty() && w.var > 0 && budget >= 1) cands.push_back({P::Var, w.var});

  if (target.is_base() && w.lit > 0 && budget >= 1) cands.push_back({P::Lit, w.lit});
  if (target.is_arrow() && w.lam > 0 && budget >= 1 + min_term_size(target.cod()))
    cands.push_back({P::Lam, w.lam});
  if (w.app > 0 && budget >= 3 + min_term_size(target))
    cands.push_back({P::App, w.app});
  if (target.is_unknown() && w.inject > 0 && budget >= 2)
    cands.push_back({P::Inject, w.inject});
  if (is_ground_image(target) && w.project > 0 && budget >= 3)
    cands.push_back({P::Project, w.project});
  // Self-application through *, the one shape here that can diverge.
  // Random assembly never finds it, and campaigns need nonterminating
  // programs to classify, so it gets a small deliberate weight.
  if (target.is_unknown() && budget >= 12 && w.lam > 0 && w.app > 0 &&
      w.inject > 0 && w.project > 0)
    cands.push_back({P::Omega, 1});

  if (cands.empty()) {
    // Nothing affordable is enabled. Fall back to the minimal
    // inhabitant, but only when every production it uses has weight;
    // otherwise the weights genuinely starve this type.
    if (!minimal_enabled(w, target)) throw GenerationExhausted(target);
    return minimal_term(st.rng, target, budget);
  }

  std::uint64_t total = 0;
  for (const Cand& c : cands) total += c.weight;
  std::uint64_t pick = detail::draw(st.rng, total);
  P chosen = cands.back().p;
  for (const Cand& c : cands) {
    if (pick < c.weight) {
      chosen = c.p;
      break;
    }
    pick -= c.weight;
  }

  switch (chosen) {
    case P::Var: {
      budget -= 1;
      std::size_t i = var_hits[detail::draw(st.rng, var_hits.size())];
      return AnnTerm::var(i);
    }
    case P::Lit: {
      budget -= 1;
      if (target.base_kind() == Base::Nat)
        return AnnTerm::nat((std::int64_t)detail::draw(st.rng, 100));
      return AnnTerm::boolean(detail::draw(st.rng, 2) == 0);
    }
    case P::Lam: {
      budget -= 1;
      st.ctx.insert(st.ctx.begin(), target.dom());
      AnnTerm body = gen_at(st, target.cod(), budget);
      st.ctx.erase(st.ctx.begin());
      return AnnTerm::lam(target.dom(), body);
    }
    case P::App: return gen_app(st, target, budget);
    case P::Inject: {
      // Ground choice: Fun only when the *->* body is affordable.
      budget -= 1;
      Ground g = Ground::nat();
      std::uint64_t r = detail::draw(st.rng, budget >= 3 ? 3 : 2);
      if (r == 0) g = Ground::nat();
      else if (r == 1) g = Ground::boolean();
      else g = Ground::fun();
      AnnTerm body = gen_at(st, ground_to_type(g), budget);
      return AnnTerm::inject(body, g);
    }
    case P::Project: {
      budget -= 1;
      AnnTerm body = gen_at(st, Type::unknown(), budget);
      return AnnTerm::project(body, *ground_of(target));
    }
    case P::Omega: {
      budget -= 12;
      AnnTerm om = AnnTerm::lam(
          Type::unknown(),
          AnnTerm::app(AnnTerm::project(AnnTerm::var(0), Ground::fun()),
                       AnnTerm::var(0)));
      return AnnTerm::app(om, AnnTerm::inject(om, Ground::fun()));
    }
    case P::Minimal: break;
  }
  return minimal_term(st.rng, target, budget);
}

}  // namespace detail

inline Type gen_type(std::mt19937_64& rng, std::size_t depth) {
  return detail::gen_type_impl(rng, depth == 0 ? 1 : depth);
}

// Generate a closed term of the target type. Size never exceeds
// max(cfg.max_size, smallest inhabitant of the target).
inline AnnTerm gen_term(const GenConfig& cfg, const Type& target) {
  detail::GenState st{std::mt19937_64(cfg.seed), &cfg, {}};
  for (int attempt = 0;; ++attempt) {
    std::size_t budget = cfg.max_size;
    if (budget < detail::min_term_size(target)) budget = detail::min_term_size(target);
    try {
      return detail::gen_at(st, target, budget);
    } catch (const GenerationExhausted&) {
      if (attempt >= 2) throw;
    }
  }
}

}  // namespace castlab

#endif
