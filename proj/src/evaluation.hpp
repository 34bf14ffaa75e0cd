#pragma once

#include <optional>
#include <string>
#include <vector>

#include "profiles.hpp"

namespace stratprof {

// The realized play of an instance: the definitions visited when following
// recorded choices, each with the shift accumulated so far.  Ends either at a
// leaf definition or at the first repeated definition, which proves the play
// goes on forever (the chosen successor of a definition never depends on n).
struct PathStep {
    std::string def;
    Choice taken = Choice::Left;
    long long shift_so_far = 0;
};

struct ChosenPath {
    std::vector<PathStep> steps;
    std::optional<std::string> leaf_def;   // set when the play reaches a leaf
    std::optional<std::string> cycle_def;  // first repeated definition otherwise
    long long total_shift = 0;             // shift accumulated at the terminal

    bool reaches_leaf() const { return leaf_def.has_value(); }
};

ChosenPath chosen_path(const ProfileInstance &inst);

// True iff the realized play of the instance ends at a leaf.
bool leads_to_leaf(const ProfileInstance &inst);

// The agent's utility along the realized play.  Defined(expr) when the play
// reaches a leaf (the leaf payoff with n replaced by n + total shift, then by
// the instance's concrete step when it has one), Diverges otherwise.
struct UtilityResult {
    std::optional<AffineExpr> value;

    bool defined() const { return value.has_value(); }
    const AffineExpr &expr() const { return *value; }
    static UtilityResult defined_as(AffineExpr e) { return UtilityResult{std::move(e)}; }
    static UtilityResult diverges() { return UtilityResult{std::nullopt}; }
};

// Throws AgentUnknownError for an agent outside the declared set.
UtilityResult utility(const ProfileInstance &inst, const std::string &agent);

// Whether every subprofile reachable from the instance through either child
// leads to a leaf: the greatest fixpoint of "my own play reaches a leaf and
// both children satisfy the same".  On failure names a reachable definition
// whose play diverges.
struct AlwaysLeadsResult {
    bool holds = false;
    std::optional<std::string> failing_def;
};

AlwaysLeadsResult always_leads_to_leaf(const ProfileInstance &inst);

}  // namespace stratprof
