#pragma once

#include "specsynth/constraints/formula.hpp"

#include <atomic>
#include <cstdint>
#include <functional>

namespace specsynth {

enum class SatResult { Sat, Unsat, Unknown };
enum class Validity { Valid, Invalid, Unknown };

const char *toString(SatResult r);
const char *toString(Validity v);

struct SatAnswer {
  SatResult result = SatResult::Unknown;
  Assignment model; // populated for Sat
};

struct ImpliesAnswer {
  Validity result = Validity::Unknown;
  Assignment witness; // a model of premise ∧ ¬conclusion when Invalid
};

/// Process-wide query counters, used to report the unknown rate.
struct SolverStats {
  std::atomic<std::uint64_t> satQueries{0};
  std::atomic<std::uint64_t> satUnknown{0};

  static SolverStats &global();
  void reset() {
    satQueries = 0;
    satUnknown = 0;
  }
};

/// Case split over disjunctive clauses; each branch is decided by
/// union-find over addresses plus Fourier-Motzkin with integer tightening.
/// A Sat answer always comes with a verified integer model; Unknown is
/// returned when model construction fails or a budget is exhausted.
SatAnswer checkSat(const Formula &f);

/// Valid iff every model of `premise` satisfies `conclusion`, decided per
/// conclusion clause as unsatisfiability of premise ∧ ¬clause.
ImpliesAnswer implies(const Formula &premise, const Formula &conclusion);

/// Equivalent formula with equalities propagated by substitution and
/// tautologies, duplicates and subsumed clauses dropped. Unsatisfiable
/// input yields Formula::False().
Formula simplify(const Formula &f);

/// Visits, in a fixed order, every assignment of integers in [lo, hi] to
/// the integer symbols of `f` and of object identities 0..maxAddrObjects
/// (0 = NULL) to its address terms that satisfies `f`. Returning false
/// from `visit` stops the enumeration.
void enumerateModels(const Formula &f, Int lo, Int hi, int maxAddrObjects,
                     const std::function<bool(const Assignment &)> &visit);

std::vector<Assignment> allModels(const Formula &f, Int lo, Int hi, int maxAddrObjects);

} // namespace specsynth
