// castlab command-line front end.
//
// Exit codes: 0 success, 1 negative result (type error, cast error,
// underivable precision, semapprox Fails), 2 campaign violation,
// 3 usage or parse error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"

#include "castlab/castlab.hpp"

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool use_color() {
  if (const char* v = std::getenv("GG_COLOR")) {
    if (v == std::string_view("1")) return true;
    if (v == std::string_view("0")) return false;
  }
  return isatty(fileno(stdout)) != 0;
}

std::string paint(const std::string& s, const char* code) {
  if (!use_color()) return s;
  return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
}

std::string steps_str(std::size_t n) {
  return n == 1 ? "1 step" : std::to_string(n) + " steps";
}

int cmd_typecheck(const std::string& file) {
  castlab::AnnTerm t = castlab::parse_term(read_file(file));
  castlab::Inferred inf = castlab::infer(castlab::TypeContext{}, t);
  std::cout << castlab::to_string(inf.type) << "\n";
  return 0;
}

int cmd_run(const std::string& file, std::size_t fuel, bool trace) {
  castlab::AnnTerm t = castlab::parse_term(read_file(file));
  castlab::Inferred inf = castlab::infer(castlab::TypeContext{}, t);
  std::vector<castlab::TraceEntry> tr;
  castlab::Outcome o = castlab::eval_traced(inf.core, fuel, tr);
  switch (o.kind) {
    case castlab::Outcome::Kind::Value:
      std::cout << paint("value", "32") << " " << castlab::print_term(*o.value)
                << " after " << steps_str(o.steps) << "\n";
      break;
    case castlab::Outcome::Kind::Blame:
      std::cout << paint("blame", "31") << " after " << steps_str(o.steps) << "\n";
      break;
    case castlab::Outcome::Kind::Timeout:
      std::cout << paint("timeout", "33") << " after " << steps_str(o.steps) << "\n";
      break;
  }
  if (trace) std::cout << castlab::trace_to_json(tr).dump(2) << "\n";
  return 0;
}

int cmd_cast(const std::string& file, const std::string& from_s, const std::string& to_s) {
  castlab::Type from = castlab::parse_type(from_s);
  castlab::Type to = castlab::parse_type(to_s);
  castlab::AnnTerm t = castlab::parse_term(read_file(file));
  castlab::Term core = castlab::check(castlab::TypeContext{}, t, from);
  castlab::Term out = castlab::compile_cast(from, to, core);
  std::cout << castlab::print_term(out) << "\n";
  return 0;
}

int cmd_prec(const std::string& less_file, const std::string& more_file) {
  castlab::AnnTerm less = castlab::parse_term(read_file(less_file));
  castlab::AnnTerm more = castlab::parse_term(read_file(more_file));
  castlab::PrecSearchResult r = castlab::infer_term_prec({}, less, more);
  if (r.found()) {
    std::cout << castlab::term_prec_to_json(*r.term_deriv).dump(2) << "\n";
    return 0;
  }
  std::cout << "not derivable\n";
  return 1;
}

int cmd_semapprox(const std::string& less_file, const std::string& more_file,
                  const std::string& dir_s, std::size_t k, std::size_t fuel) {
  if (fuel < k) throw UsageError("--fuel must be at least k");
  castlab::AnnTerm less = castlab::parse_term(read_file(less_file));
  castlab::AnnTerm more = castlab::parse_term(read_file(more_file));
  castlab::Term lc = castlab::infer(castlab::TypeContext{}, less).core;
  castlab::Term mc = castlab::infer(castlab::TypeContext{}, more).core;
  castlab::Direction dir =
      dir_s == "le" ? castlab::Direction::Le : castlab::Direction::Ge;
  castlab::ThreeValued v = castlab::sem_approx(dir, lc, mc, k, fuel);
  const char* code = v == castlab::ThreeValued::Holds   ? "32"
                     : v == castlab::ThreeValued::Fails ? "31"
                                                        : "33";
  std::cout << paint(castlab::to_string(v), code) << "\n";
  return v == castlab::ThreeValued::Fails ? 1 : 0;
}

int cmd_fuzz(std::uint64_t seed, std::size_t pairs, std::size_t fuel,
             const std::string& json_out, bool adversarial) {
  castlab::GenConfig cfg;
  cfg.seed = seed;
  cfg.fuel = fuel;
  castlab::CampaignReport rep = castlab::fuzz_campaign(cfg, pairs, adversarial);

  char rate[32];
  std::snprintf(rate, sizeof rate, "%.6f", rep.inconclusive_rate());
  std::cout << "pairs                " << rep.n_pairs << "\n";
  std::cout << "consistent           " << rep.totals.consistent << "\n";
  std::string viol = std::to_string(rep.totals.violation);
  std::cout << "violation            "
            << paint(viol, rep.totals.violation == 0 ? "32" : "31") << "\n";
  std::cout << "inconclusive         " << rep.totals.inconclusive << "\n";
  std::cout << "inconclusive-rate    " << rate << "\n";
  std::cout << "sem-approx-failures  " << rep.sem_approx_failures.size() << "\n";

  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + json_out + "'");
    out << castlab::campaign_report_to_json(rep).dump(2) << "\n";
  }
  return rep.totals.violation > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"castlab: a workbench for a gradually typed cast calculus"};
  app.require_subcommand(1);

  std::string file, file_less, file_more, from_s, to_s, dir_s = "le", json_out;
  std::size_t fuel = 1000, k = 0, pairs = 1000;
  std::uint64_t seed = 0;
  bool trace = false, adversarial = false;

  auto* tc = app.add_subcommand("typecheck", "Infer the type of a closed program");
  tc->add_option("file", file, "program file")->required();

  auto* run = app.add_subcommand("run", "Evaluate a closed program");
  run->add_option("file", file, "program file")->required();
  run->add_option("--fuel", fuel, "maximum number of steps")->capture_default_str();
  run->add_flag("--trace", trace, "also print the reduction trace as JSON");

  auto* cast = app.add_subcommand("cast", "Compile a cast around a checked program");
  cast->add_option("file", file, "program file")->required();
  cast->add_option("--from", from_s, "source type")->required();
  cast->add_option("--to", to_s, "target type")->required();

  auto* prec = app.add_subcommand("prec", "Search for a precision derivation");
  prec->add_option("less", file_less, "less precise program")->required();
  prec->add_option("more", file_more, "more precise program")->required();

  auto* sa = app.add_subcommand("semapprox", "Check step-indexed approximation");
  sa->add_option("less", file_less, "less precise program")->required();
  sa->add_option("more", file_more, "more precise program")->required();
  sa->add_option("--dir", dir_s, "direction")->check(CLI::IsMember({"le", "ge"}));
  sa->add_option("-k,--index", k, "step index")->required();
  sa->add_option("--fuel", fuel, "maximum number of steps")->capture_default_str();

  auto* fuzz = app.add_subcommand("fuzz", "Run a gradual-guarantee campaign");
  fuzz->add_option("--seed", seed, "campaign seed")->capture_default_str();
  fuzz->add_option("--pairs", pairs, "number of pairs")->capture_default_str();
  fuzz->add_option("--fuel", fuel, "steps per evaluation")->capture_default_str();
  fuzz->add_option("--json", json_out, "write the full report to this file");
  fuzz->add_flag("--adversarial", adversarial, "try blame edits and plant a control pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (app.got_subcommand(tc)) return cmd_typecheck(file);
    if (app.got_subcommand(run)) return cmd_run(file, fuel, trace);
    if (app.got_subcommand(cast)) return cmd_cast(file, from_s, to_s);
    if (app.got_subcommand(prec)) return cmd_prec(file_less, file_more);
    if (app.got_subcommand(sa)) return cmd_semapprox(file_less, file_more, dir_s, k, fuel);
    if (app.got_subcommand(fuzz)) return cmd_fuzz(seed, pairs, fuel, json_out, adversarial);
  } catch (const castlab::TypeCheckError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const castlab::CastCompileError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const castlab::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
