#ifndef CASTLAB_VERDICT_HPP
#define CASTLAB_VERDICT_HPP

// Fuel-bounded observation of a pair against the gradual guarantee,
// and the step-indexed approximation probes.
//
// What finite evidence can settle: the more precise side blaming
// discharges every clause at once; both halting at values is
// consistent; the less precise side blaming while the more precise
// halts at a value refutes a clause outright (reduction is
// deterministic, so one observed halt is the only behavior). A timeout
// on a side whose behavior a clause needs leaves the verdict
// inconclusive. The converse violation (more side halts, less side
// provably diverges) needs a non-halting proof no amount of fuel
// provides, so that verdict kind exists but is never produced.

#include <cassert>
#include <cstddef>
#include <optional>
#include <string>

#include "castlab/reduce.hpp"
#include "castlab/term.hpp"

namespace castlab {

enum class VerdictKind { Consistent, Violation, Inconclusive };

enum class ViolationKind {
  LessBlamesMoreHalts,
  MoreHaltsLessDoesnt,  // see header comment: never produced
};

enum class InconclusiveReason {
  BothDivergeSoFar,
  LessTimeoutMoreValue,
  MoreTimeoutLessValue,
  MoreTimeoutLessBlame,
};

inline std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Consistent: return "consistent";
    case VerdictKind::Violation: return "violation";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::string to_string(ViolationKind v) {
  switch (v) {
    case ViolationKind::LessBlamesMoreHalts: return "less-blames-more-halts";
    case ViolationKind::MoreHaltsLessDoesnt: return "more-halts-less-doesnt";
  }
  return "?";
}

inline std::string to_string(InconclusiveReason r) {
  switch (r) {
    case InconclusiveReason::BothDivergeSoFar: return "both-diverge-so-far";
    case InconclusiveReason::LessTimeoutMoreValue: return "less-timeout-more-value";
    case InconclusiveReason::MoreTimeoutLessValue: return "more-timeout-less-value";
    case InconclusiveReason::MoreTimeoutLessBlame: return "more-timeout-less-blame";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind;
  std::optional<ViolationKind> violation;
  std::optional<InconclusiveReason> reason;

  static Verdict consistent() { return {VerdictKind::Consistent, {}, {}}; }
  static Verdict violation_of(ViolationKind v) { return {VerdictKind::Violation, v, {}}; }
  static Verdict inconclusive(InconclusiveReason r) {
    return {VerdictKind::Inconclusive, {}, r};
  }
};

inline Verdict gradual_verdict_outcomes(const Outcome& less, const Outcome& more) {
  using K = Outcome::Kind;
  if (more.kind == K::Blame) return Verdict::consistent();
  if (more.kind == K::Value) {
    switch (less.kind) {
      case K::Value: return Verdict::consistent();
      case K::Blame: return Verdict::violation_of(ViolationKind::LessBlamesMoreHalts);
      case K::Timeout:
        return Verdict::inconclusive(InconclusiveReason::LessTimeoutMoreValue);
    }
  }
  // more timed out
  switch (less.kind) {
    case K::Value: return Verdict::inconclusive(InconclusiveReason::MoreTimeoutLessValue);
    case K::Blame: return Verdict::inconclusive(InconclusiveReason::MoreTimeoutLessBlame);
    case K::Timeout: return Verdict::inconclusive(InconclusiveReason::BothDivergeSoFar);
  }
  return Verdict::inconclusive(InconclusiveReason::BothDivergeSoFar);
}

inline Verdict gradual_verdict(const Term& less, const Term& more, std::size_t fuel) {
  return gradual_verdict_outcomes(eval(less, fuel), eval(more, fuel));
}

enum class ThreeValued { Holds, Fails, Unknown };
enum class Direction { Le, Ge };

inline std::string to_string(ThreeValued v) {
  switch (v) {
    case ThreeValued::Holds: return "Holds";
    case ThreeValued::Fails: return "Fails";
    case ThreeValued::Unknown: return "Unknown";
  }
  return "?";
}

inline std::string to_string(Direction d) { return d == Direction::Le ? "le" : "ge"; }

// Step-indexed approximation at index k, decided from full-fuel
// outcomes of both sides (fuel >= k required).
//
// Le probes the less precise side: a reduction of length exactly k
// exists unless the term halts earlier, in which case a halt at a
// value needs the other side to halt somehow, and a halt at blame
// needs the other side to blame. Ge probes the more precise side,
// whose blame satisfies the relation by itself.
inline ThreeValued sem_approx_outcomes(Direction dir, const Outcome& less,
                                       const Outcome& more, std::size_t k) {
  using K = Outcome::Kind;
  const Outcome& probe = dir == Direction::Le ? less : more;
  const Outcome& other = dir == Direction::Le ? more : less;

  if (probe.kind == K::Timeout || probe.steps >= k) return ThreeValued::Holds;

  if (dir == Direction::Le) {
    if (probe.kind == K::Value) {
      if (other.kind == K::Timeout) return ThreeValued::Unknown;
      return ThreeValued::Holds;  // value or blame on the more side both work
    }
    // less side blamed before k steps
    switch (other.kind) {
      case K::Blame: return ThreeValued::Holds;
      case K::Value: return ThreeValued::Fails;
      case K::Timeout: return ThreeValued::Unknown;
    }
  } else {
    if (probe.kind == K::Blame) return ThreeValued::Holds;
    // more side halted at a value before k steps
    switch (other.kind) {
      case K::Value: return ThreeValued::Holds;
      case K::Blame: return ThreeValued::Fails;
      case K::Timeout: return ThreeValued::Unknown;
    }
  }
  return ThreeValued::Unknown;
}

inline ThreeValued sem_approx(Direction dir, const Term& less, const Term& more,
                              std::size_t k, std::size_t fuel) {
  assert(fuel >= k);
  return sem_approx_outcomes(dir, eval(less, fuel), eval(more, fuel), k);
}

}  // namespace castlab

#endif
