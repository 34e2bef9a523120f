#ifndef CASTLAB_MUTATE_HPP
#define CASTLAB_MUTATE_HPP

// Turn one well-typed term into a (less precise, more precise) pair
// with a checked precision derivation. Edits, chosen by seed:
//
//   root inject      left root of ground-image type gets wrapped in an
//                    injection; the pair's left type moves to *.
//   inject+project   an inner ground-image subterm on the left becomes
//                    proj(inj(s)); its type is unchanged, so the edit
//                    is local. The derivation closes with proj-L over
//                    inj-L at the same conclusion as before.
//   relax domain     a lambda whose domain is a ground image gets
//                    domain * on the left, with a compensating
//                    projection at each occurrence of its variable.
//   blame right      (adversarial only) a right-side subterm becomes
//                    blame. Off by default.
//
// An edit is committed only if the edited pair still has a derivation
// that validates; sites where the surrounding term stops relating (a
// lambda in applied position cannot relax its domain without breaking
// the application) are skipped, not repaired. Every returned pair
// passes validate_term_prec; budget 0 returns the self pair.

#include <cassert>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "castlab/generate.hpp"
#include "castlab/precision.hpp"
#include "castlab/term.hpp"
#include "castlab/typecheck.hpp"

namespace castlab {

struct PrecPair {
  Term less;
  Term more;
  TypePrecDeriv type_deriv;
  TermPrecDeriv term_deriv;
};

class MutationBudgetExhausted : public std::runtime_error {
 public:
  MutationBudgetExhausted() : std::runtime_error("no applicable mutation site remains") {}
};

namespace detail {

enum class EditKind { RootInject, WrapInjProj, RelaxLam, BlameRight };

struct EditSite {
  EditKind kind;
  std::vector<unsigned> path;  // child indices from the root (App: 0 fn, 1 arg)
  Ground ground = Ground::nat();
  Type type = Type::unknown();  // BlameRight: replaced subterm's type
};

// One pass: compute each node's type, record applicable sites.
inline Type collect_sites(const AnnTerm& m, TypeContext& ctx, std::vector<unsigned>& path,
                          std::vector<EditSite>& out, bool left_side) {
  Type t = Type::unknown();
  switch (m.kind()) {
    case TermKind::Var: {
      auto found = ctx.lookup(m.var_index());
      assert(found);
      t = *found;
      break;
    }
    case TermKind::Lit: t = Type::base(m.literal().type_of()); break;
    case TermKind::Blame: t = m.blame_ann(); break;
    case TermKind::Lam: {
      if (left_side && is_ground_image(m.lam_dom()))
        out.push_back(EditSite{EditKind::RelaxLam, path, *ground_of(m.lam_dom())});
      TypeContext inner = ctx.extended(m.lam_dom());
      path.push_back(0);
      Type body = collect_sites(m.body(), inner, path, out, left_side);
      path.pop_back();
      t = Type::arrow(m.lam_dom(), body);
      break;
    }
    case TermKind::App: {
      path.push_back(0);
      Type f = collect_sites(m.fn(), ctx, path, out, left_side);
      path.back() = 1;
      collect_sites(m.arg(), ctx, path, out, left_side);
      path.pop_back();
      assert(f.is_arrow());
      t = f.cod();
      break;
    }
    case TermKind::Inject: {
      path.push_back(0);
      collect_sites(m.body(), ctx, path, out, left_side);
      path.pop_back();
      t = Type::unknown();
      break;
    }
    case TermKind::Project: {
      path.push_back(0);
      collect_sites(m.body(), ctx, path, out, left_side);
      path.pop_back();
      t = ground_to_type(m.ground());
      break;
    }
  }
  if (left_side && is_ground_image(t)) {
    out.push_back(EditSite{EditKind::WrapInjProj, path, *ground_of(t)});
    if (path.empty()) out.push_back(EditSite{EditKind::RootInject, path, *ground_of(t)});
  }
  if (!left_side) out.push_back(EditSite{EditKind::BlameRight, path, Ground::nat(), t});
  return t;
}

template <class F>
AnnTerm rebuild_at(const AnnTerm& m, const std::vector<unsigned>& path, std::size_t i,
                   const F& transform) {
  if (i == path.size()) return transform(m);
  switch (m.kind()) {
    case TermKind::Lam:
      return AnnTerm::lam(m.lam_dom(), rebuild_at(m.body(), path, i + 1, transform));
    case TermKind::App:
      if (path[i] == 0)
        return AnnTerm::app(rebuild_at(m.fn(), path, i + 1, transform), m.arg());
      return AnnTerm::app(m.fn(), rebuild_at(m.arg(), path, i + 1, transform));
    case TermKind::Inject:
      return AnnTerm::inject(rebuild_at(m.body(), path, i + 1, transform), m.ground());
    case TermKind::Project:
      return AnnTerm::project(rebuild_at(m.body(), path, i + 1, transform), m.ground());
    default: assert(false && "path into a leaf"); return m;
  }
}

// Wrap each occurrence of binder depth d with a projection at g.
inline AnnTerm project_occurrences(const AnnTerm& m, std::size_t d, Ground g) {
  switch (m.kind()) {
    case TermKind::Var:
      if (m.var_index() == d) return AnnTerm::project(m, g);
      return m;
    case TermKind::Lam:
      return AnnTerm::lam(m.lam_dom(), project_occurrences(m.body(), d + 1, g));
    case TermKind::App:
      return AnnTerm::app(project_occurrences(m.fn(), d, g),
                          project_occurrences(m.arg(), d, g));
    case TermKind::Inject:
      return AnnTerm::inject(project_occurrences(m.body(), d, g), m.ground());
    case TermKind::Project:
      return AnnTerm::project(project_occurrences(m.body(), d, g), m.ground());
    default: return m;
  }
}

inline AnnTerm apply_left_edit(const AnnTerm& less, const EditSite& site) {
  switch (site.kind) {
    case EditKind::RootInject:
      return AnnTerm::inject(less, site.ground);
    case EditKind::WrapInjProj:
      return rebuild_at(less, site.path, 0, [&](const AnnTerm& s) {
        return AnnTerm::project(AnnTerm::inject(s, site.ground), site.ground);
      });
    case EditKind::RelaxLam:
      return rebuild_at(less, site.path, 0, [&](const AnnTerm& s) {
        assert(s.kind() == TermKind::Lam);
        return AnnTerm::lam(Type::unknown(),
                            project_occurrences(s.body(), 0, site.ground));
      });
    default: assert(false); return less;
  }
}

}  // namespace detail

inline PrecPair abstract_mutate(const AnnTerm& more, std::size_t budget, std::uint64_t seed,
                                bool adversarial = false) {
  std::mt19937_64 rng(seed);
  AnnTerm less_ann = more;
  AnnTerm more_ann = more;

  for (std::size_t round = 0; round < budget; ++round) {
    std::vector<detail::EditSite> sites;
    {
      TypeContext ctx;
      std::vector<unsigned> path;
      detail::collect_sites(less_ann, ctx, path, sites, true);
      if (adversarial && more_ann.kind() != TermKind::Blame) {
        TypeContext rctx;
        std::vector<unsigned> rpath;
        detail::collect_sites(more_ann, rctx, rpath, sites, false);
      }
    }
    if (sites.empty()) throw MutationBudgetExhausted();

    // Try sites in a seeded random order until one applies.
    std::vector<std::size_t> order(sites.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[detail::draw(rng, i)]);

    bool applied = false;
    for (std::size_t idx : order) {
      const detail::EditSite& site = sites[idx];
      if (site.kind == detail::EditKind::BlameRight) {
        AnnTerm cand = detail::rebuild_at(more_ann, site.path, 0, [&](const AnnTerm&) {
          return AnnTerm::blame(site.type);
        });
        PrecSearchResult r = infer_term_prec({}, less_ann, cand);
        if (r.found() &&
            validate_term_prec({}, *r.term_deriv, erase(less_ann), erase(cand))) {
          more_ann = cand;
          applied = true;
          break;
        }
        continue;  // filtered out, e.g. left and right types diverged here
      }
      AnnTerm cand = detail::apply_left_edit(less_ann, site);
      PrecSearchResult r = infer_term_prec({}, cand, more_ann);
      if (r.found() &&
          validate_term_prec({}, *r.term_deriv, erase(cand), erase(more_ann))) {
        less_ann = cand;
        applied = true;
        break;
      }
    }
    if (!applied) throw MutationBudgetExhausted();
  }

  PrecSearchResult r = infer_term_prec({}, less_ann, more_ann);
  assert(r.found() && "mutation edits always leave a derivable pair");
  if (!r.found()) throw MutationBudgetExhausted();
  Term less = erase(less_ann), more_core = erase(more_ann);
  assert(validate_term_prec({}, *r.term_deriv, less, more_core));
  return PrecPair{less, more_core, *r.type_deriv, *r.term_deriv};
}

}  // namespace castlab

#endif
