#pragma once

#include <string>

#include "profiles.hpp"

namespace stratprof::fixtures {

inline FiniteProfilePtr leaf(long long alice, long long bob) {
    return FiniteProfile::leaf(Payoff{{"Alice", alice}, {"Bob", bob}});
}

inline FiniteProfilePtr node(const std::string &agent, Choice c, FiniteProfilePtr l,
                             FiniteProfilePtr r) {
    return FiniteProfile::node(agent, c, std::move(l), std::move(r));
}

// The two-node example profiles: Alice moves at the root, either toward Bob
// or to a leaf paying her 1; Bob's node selects between leaves (2,0) and
// (0,1).  In s0 Alice heads to Bob, whose recorded choice reaches (2,0), so
// Alice's utility in s0 is 2.  s1 differs from s0 only in Alice's choice.
inline FiniteProfilePtr bob_node(Choice bob_choice = Choice::Left) {
    return node("Bob", bob_choice, leaf(2, 0), leaf(0, 1));
}

inline FiniteProfilePtr s0() { return node("Alice", Choice::Left, bob_node(), leaf(1, 2)); }
inline FiniteProfilePtr s1() { return node("Alice", Choice::Right, bob_node(), leaf(1, 2)); }

// The same game solved: Bob picks the leaf paying him 1, Alice then prefers
// her own leaf.  Passes both equilibrium oracles under higher-is-better.
inline FiniteProfilePtr s_solved() {
    return node("Alice", Choice::Right, bob_node(Choice::Right), leaf(1, 2));
}

// System with a reachable diverging play tucked in an unchosen branch: the
// root's recorded choice reaches a leaf, the other branch loops on itself.
inline ProfileSystem lurking_loop() {
    ProfileSystem sys;
    sys.agents = {"Alice", "Bob"};
    sys.defs.push_back(
        {"top", NodeDef{"Alice", Choice::Right, Ref{"loop", 0}, Ref{"done", 0}}});
    sys.defs.push_back(
        {"loop", NodeDef{"Bob", Choice::Left, Ref{"loop", 0}, Ref{"loop", 0}}});
    sys.defs.push_back({"done", LeafDef{UtilityFn{{"Alice", AffineExpr::number(1)},
                                                  {"Bob", AffineExpr::number(1)}}}});
    sys.root_def = "top";
    sys.root_n = 0;
    return sys;
}

}  // namespace stratprof::fixtures
