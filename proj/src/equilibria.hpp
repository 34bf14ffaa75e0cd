#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evaluation.hpp"
#include "profiles.hpp"

namespace stratprof {

// Local fact recorded for a node definition: the two child utilities for the
// owning agent (affine in n) and the margin whose nonnegativity for every
// n >= 0 discharges the local side condition.  The margin is oriented by the
// preference order: utility of the chosen child minus the other child under
// higher-is-better, the reverse under lower-is-better.
struct NodeInequality {
    std::string agent;
    Choice choice = Choice::Left;
    AffineExpr chosen_utility;
    AffineExpr other_utility;
    AffineExpr margin;
};

// Status of one definition's claim "equilibrium for every n >= 0" after the
// fixpoint iteration has stabilized.
struct SgpeClaim {
    enum class Status { Holds, RefutedLocally, ChildRetracted };
    Status status = Status::Holds;
    std::optional<NodeInequality> inequality;   // node definitions only
    std::optional<AffinePoint> witness;         // when refuted locally
    std::optional<std::string> retracted_child; // when a child was retracted
    int round = 0;                              // retraction round, 0 = survived
};

// Outcome of the symbolic check.  When certified, every reachable definition
// carries a surviving claim whose inequality holds for all n >= 0 under the
// declared parameter bounds; otherwise the first retracted definition names a
// concrete counterexample.
struct SgpeOutcome {
    bool certified = false;
    PrefOrder pref = PrefOrder::LowerIsBetter;
    std::map<std::string, SgpeClaim> claims;  // definitions reachable from the root
    std::optional<std::string> first_retracted;
    std::optional<AffinePoint> witness;
    // Set when the check never started because some reachable play diverges;
    // that alone refutes the equilibrium.
    std::optional<std::string> diverging_def;
};

// Greatest-fixpoint equilibrium check over definitions, quantified over all
// n >= 0 and all parameter values at or above their declared bounds.  Every
// definition starts out assumed good; a node is retracted when its local
// inequality has a counterexample or one of its children was retracted.
// Throws ParamUnboundError if a needed parameter has no declared bound.
SgpeOutcome check_sgpe(const ProfileSystem &sys, PrefOrder pref);

// One edit of a realized play: at unrolling level `level` (root = 0), the
// node produced by `def` takes `new_choice` instead of its recorded choice.
struct DeviationEdit {
    std::string def;
    int level = 0;
    Choice new_choice = Choice::Left;
};

// A finitely-convertible profile witnessing a profitable deviation.
struct DeviationWitness {
    std::string agent;
    std::vector<DeviationEdit> edits;
    long long original_utility = 0;
    long long deviation_utility = 0;
};

struct NashVerdict {
    enum class Kind { NotNash, NashUpToDepth, VacuouslyNash };
    Kind kind = Kind::VacuouslyNash;
    int depth_bound = 0;
    std::optional<DeviationWitness> witness;  // present for NotNash
};

// Bounded deviation search at a concrete instance.  Follows the recorded
// choices everywhere except at the deviating agent's own nodes, where both
// branches are explored, up to `depth_bound` node layers; a reached leaf that
// strictly improves the agent's utility refutes the equilibrium.  Absence of
// a witness within the bound is reported as such, not as a proof.  An
// instance whose own play diverges satisfies the definition vacuously.
// Throws InvalidBoundError when depth_bound < 1 and ParamUnboundError when a
// parameter value is missing.
NashVerdict check_nash(const ProfileInstance &inst, PrefOrder pref, int depth_bound,
                       const ParamValues &params);

inline int default_nash_depth(const ProfileSystem &sys) {
    return 4 * static_cast<int>(sys.defs.size());
}

// Builds the deviated profile a witness describes as a system of its own:
// level-indexed copies of the original definitions up to the deepest edit,
// falling back to the shared originals below.  Re-evaluating it reproduces
// the claimed deviation utility; used to confirm witnesses independently.
ProfileSystem deviated_system(const ProfileSystem &sys, const ProfileInstance &inst,
                              const DeviationWitness &witness);

// True iff re-evaluation of the deviated profile confirms both claimed
// utilities and the strict preference.
bool verify_deviation(const ProfileSystem &sys, const ProfileInstance &inst,
                      const DeviationWitness &witness, PrefOrder pref, const ParamValues &params);

// Random-profile harness for "every subgame perfect equilibrium is a Nash
// equilibrium" at the finite-oracle level.  The checkers are injectable so a
// deliberately corrupted one can demonstrate that the harness catches bugs.
struct ImplicationReport {
    int generated = 0;
    int sgpe_count = 0;
    std::vector<std::string> violations;  // rendering of each offending profile
};

ImplicationReport sgpe_implies_nash_suite(
    std::uint64_t seed, int count,
    const std::function<bool(const FiniteProfile &, PrefOrder)> &sgpe_check,
    const std::function<bool(const FiniteProfile &, PrefOrder)> &nash_check);

ImplicationReport sgpe_implies_nash_suite(std::uint64_t seed, int count);

}  // namespace stratprof
