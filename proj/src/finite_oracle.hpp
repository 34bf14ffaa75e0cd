#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "profiles.hpp"

namespace stratprof {

// How to cut a parametric system down to a finite profile: expand this many
// node layers and close every hole with the padding leaf.
struct TruncationPolicy {
    int depth = 0;
    Payoff padding;
};

// Whether s and t differ only in choices at nodes owned by the agent.  Both
// trees must share shape, node agents and leaf payoffs; anything else is a
// ShapeMismatchError.
bool convertible(const FiniteProfile &s, const FiniteProfile &t, const std::string &agent);

// Literal Nash check by enumeration: for each agent, every reassignment of
// the choices at that agent's nodes is a convertible profile; none of them
// may strictly improve that agent's realized utility.
bool brute_nash(const FiniteProfile &s, PrefOrder pref);

// Literal bottom-up equilibrium check: a leaf qualifies, and a node qualifies
// when both children do and the recorded choice picks a child whose realized
// utility for the owning agent is at least as preferred as the other's.
bool brute_sgpe(const FiniteProfile &s, PrefOrder pref);

// All choice assignments of the given game (its recorded choices are
// ignored) obtainable by bottom-up optimal selection, branching on ties.
// The result set is exactly the set of assignments passing brute_sgpe.
std::vector<FiniteProfilePtr> backward_induction(const FiniteProfile &game, PrefOrder pref);

// Expand policy.depth layers of the system's root and close the holes.
// Throws ParamUnboundError when a leaf mentions a parameter with no value.
FiniteProfilePtr truncate(const ProfileSystem &sys, const TruncationPolicy &policy,
                          const ParamValues &params);

// Embeds a finite profile as a cycle-free ProfileSystem (definitions d0, d1,
// ... in preorder), so that the symbolic checkers can be run against it.
ProfileSystem embed_finite(const FiniteProfile &profile, std::vector<std::string> agents);

// Enumeration of every profile over two agents with trees of at most
// `max_levels` node layers and per-agent leaf utilities drawn from `values`.
// Shapes, agent assignments, choices and leaf payoffs are all exhausted.
void for_each_profile(int max_levels, const std::vector<std::string> &agents,
                      const std::vector<long long> &values,
                      const std::function<void(const FiniteProfilePtr &)> &fn);

// Same exhaustion without choices: one callback per game, where a game is a
// shape plus node agents plus leaf payoffs.  Recorded choices in the callback
// argument are all Left and are to be ignored.
void for_each_game(int max_levels, const std::vector<std::string> &agents,
                   const std::vector<long long> &values,
                   const std::function<void(const FiniteProfilePtr &)> &fn);

// All 2^(node count) choice assignments of a game.
std::vector<FiniteProfilePtr> all_choice_assignments(const FiniteProfile &game);

// Seeded random profile over the given agents, at most `max_depth` node
// layers, utilities uniform over [0, value_range].
FiniteProfilePtr random_profile(std::mt19937_64 &rng, int max_depth,
                                const std::vector<std::string> &agents, long long value_range);

}  // namespace stratprof
