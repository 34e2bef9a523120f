#ifndef CASTLAB_JSON_IO_HPP
#define CASTLAB_JSON_IO_HPP

// JSON views of derivations, traces and campaign reports. Key order is
// insertion order (ordered_json) so serialized reports are stable:
// same config, same bytes.

#include <string>
#include <vector>

#include "json.hpp"

#include "castlab/campaign.hpp"
#include "castlab/precision.hpp"
#include "castlab/reduce.hpp"
#include "castlab/syntax.hpp"

namespace castlab {

using json = nlohmann::ordered_json;

inline json term_prec_to_json(const TermPrecDeriv& d) {
  using R = TermPrecDeriv::Rule;
  json j;
  switch (d.rule()) {
    case R::Var:
      j["rule"] = "var";
      j["index"] = d.var_index();
      break;
    case R::Lit:
      j["rule"] = "lit";
      j["lit"] = to_string(d.literal());
      break;
    case R::App:
      j["rule"] = "app";
      j["children"] = json::array(
          {term_prec_to_json(d.fn_deriv()), term_prec_to_json(d.arg_deriv())});
      break;
    case R::Lam:
      j["rule"] = "lam";
      j["dom-less"] = to_string(d.dom_prec().less());
      j["dom-more"] = to_string(d.dom_prec().more());
      j["children"] = json::array({term_prec_to_json(d.body_deriv())});
      break;
    case R::InjL:
    case R::InjR:
    case R::ProjL:
    case R::ProjR: {
      const char* name = d.rule() == R::InjL    ? "inj-L"
                         : d.rule() == R::InjR  ? "inj-R"
                         : d.rule() == R::ProjL ? "proj-L"
                                                : "proj-R";
      j["rule"] = name;
      j["ground"] = to_string(d.ground());
      j["children"] = json::array({term_prec_to_json(d.sub_deriv())});
      break;
    }
    case R::Blame:
      j["rule"] = "blame";
      j["type"] = to_string(d.blame_type());
      break;
  }
  return j;
}

inline json trace_to_json(const std::vector<TraceEntry>& trace) {
  json arr = json::array();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    json e;
    e["index"] = i;
    e["rule"] = to_string(trace[i].rule);
    e["term-after"] = print_term(trace[i].after);
    arr.push_back(std::move(e));
  }
  return arr;
}

inline json campaign_report_to_json(const CampaignReport& rep) {
  json cfg;
  cfg["seed"] = rep.cfg.seed;
  cfg["pairs"] = rep.n_pairs;
  cfg["fuel"] = rep.cfg.fuel;
  cfg["max-size"] = rep.cfg.max_size;
  cfg["type-depth"] = rep.cfg.type_depth;
  cfg["adversarial"] = rep.adversarial;
  json w;
  w["var"] = rep.cfg.weights.var;
  w["lit"] = rep.cfg.weights.lit;
  w["lam"] = rep.cfg.weights.lam;
  w["app"] = rep.cfg.weights.app;
  w["inject"] = rep.cfg.weights.inject;
  w["project"] = rep.cfg.weights.project;
  cfg["weights"] = std::move(w);

  json totals;
  totals["consistent"] = rep.totals.consistent;
  totals["violation"] = rep.totals.violation;
  totals["inconclusive"] = rep.totals.inconclusive;

  json violations = json::array();
  for (const ViolationRecord& v : rep.violations) {
    json e;
    e["pair-index"] = v.pair_index;
    e["seed"] = v.seed;
    e["kind"] = v.kind;
    e["planted-control"] = v.planted_control;
    e["pair"] = {{"less", v.less}, {"more", v.more}};
    e["traces"] = {{"less", trace_to_json(v.less_trace)},
                   {"more", trace_to_json(v.more_trace)}};
    violations.push_back(std::move(e));
  }

  json failures = json::array();
  for (const SemApproxFailure& f : rep.sem_approx_failures) {
    json e;
    e["pair-index"] = f.pair_index;
    e["seed"] = f.seed;
    e["dir"] = to_string(f.dir);
    e["k"] = f.k;
    e["pair"] = {{"less", f.less}, {"more", f.more}};
    failures.push_back(std::move(e));
  }

  json j;
  j["config"] = std::move(cfg);
  j["totals"] = std::move(totals);
  j["violations"] = std::move(violations);
  j["sem_approx_failures"] = std::move(failures);
  return j;
}

}  // namespace castlab

#endif
