#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "affine.hpp"

namespace stratprof {

// The two choices an agent can record at a node.
enum class Choice { Left, Right };

inline char choice_letter(Choice c) { return c == Choice::Left ? 'l' : 'r'; }
inline Choice other_choice(Choice c) { return c == Choice::Left ? Choice::Right : Choice::Left; }

// Which of two utilities the owning agent likes better.  Utilities in a
// system are plain integers; whether they are payoffs (higher wins) or costs
// (lower wins) is a property of the check, not of the data.
enum class PrefOrder { HigherIsBetter, LowerIsBetter };

// "b is at least as good as a" under the given order.
inline bool weakly_preferred(PrefOrder pref, long long a, long long b) {
    return pref == PrefOrder::HigherIsBetter ? a <= b : a >= b;
}
inline bool strictly_preferred(PrefOrder pref, long long a, long long b) {
    return pref == PrefOrder::HigherIsBetter ? a < b : a > b;
}

// Per-agent payoff expressions at a leaf; total on the declared agent set.
using UtilityFn = std::map<std::string, AffineExpr>;

// Per-agent concrete payoffs, used by finite profiles and unrolled leaves.
using Payoff = std::map<std::string, long long>;

// Reference to another definition; the child denotes `target` evaluated at
// n + shift.  Shifts are never negative, which keeps every reachable step
// counter nonnegative.
struct Ref {
    std::string target;
    long long shift = 0;
    bool operator==(const Ref &) const = default;
};

struct LeafDef {
    UtilityFn payoff;
    bool operator==(const LeafDef &) const = default;
};

struct NodeDef {
    std::string agent;
    Choice choice = Choice::Left;
    Ref left, right;

    const Ref &child(Choice c) const { return c == Choice::Left ? left : right; }
    const Ref &chosen() const { return child(choice); }
    const Ref &unchosen() const { return child(other_choice(choice)); }
    bool operator==(const NodeDef &) const = default;
};

using ProfileDef = std::variant<LeafDef, NodeDef>;

// A finite set of mutually recursive definitions denoting one (finite,
// cyclic-infinite, or parametric-infinite) strategy profile tree.
struct ProfileSystem {
    std::vector<std::string> agents;                 // declaration order
    std::vector<std::pair<std::string, long long>> params;  // name, lower bound
    std::vector<std::pair<std::string, ProfileDef>> defs;   // declaration order
    std::string root_def;
    long long root_n = 0;

    const ProfileDef *find(const std::string &name) const;
    bool has_agent(const std::string &name) const;
    std::optional<long long> param_bound(const std::string &name) const;
    ParamBounds bounds() const;
    bool operator==(const ProfileSystem &) const = default;
};

// Marks an instance quantified over every step value n >= n_min.
struct ForAllN {
    long long n_min = 0;
    bool operator==(const ForAllN &) const = default;
};

// A pointer-free name for one subtree of the infinite unrolling: a definition
// of `system` taken at a concrete step value or at all of them.
struct ProfileInstance {
    const ProfileSystem *system = nullptr;
    std::string def;
    std::variant<long long, ForAllN> n = 0LL;

    bool concrete() const { return std::holds_alternative<long long>(n); }
    long long n_value() const { return std::get<long long>(n); }
    // The affine expression this instance's step stands for: a number when
    // concrete, the variable n when symbolic.
    AffineExpr step_expr() const {
        return concrete() ? AffineExpr::number(n_value()) : AffineExpr::step();
    }
};

inline ProfileInstance root_instance(const ProfileSystem &sys) {
    return ProfileInstance{&sys, sys.root_def, sys.root_n};
}
inline ProfileInstance symbolic_instance(const ProfileSystem &sys, long long n_min = 0) {
    return ProfileInstance{&sys, sys.root_def, ForAllN{n_min}};
}

// Ordinary inductive binary strategy-profile tree with concrete integer
// payoffs.  Immutable; subtrees are shared freely.
class FiniteProfile;
using FiniteProfilePtr = std::shared_ptr<const FiniteProfile>;

class FiniteProfile {
public:
    static FiniteProfilePtr leaf(Payoff payoff);
    static FiniteProfilePtr node(std::string agent, Choice choice, FiniteProfilePtr left,
                                 FiniteProfilePtr right);

    bool is_leaf() const { return !left_; }
    const Payoff &payoff() const { return payoff_; }  // leaves only
    const std::string &agent() const { return agent_; }
    Choice choice() const { return choice_; }
    const FiniteProfilePtr &left() const { return left_; }
    const FiniteProfilePtr &right() const { return right_; }
    const FiniteProfilePtr &child(Choice c) const { return c == Choice::Left ? left_ : right_; }

    // Payoff map of the leaf reached by following recorded choices.  A finite
    // profile always reaches one.
    const Payoff &realized() const;
    long long realized_for(const std::string &agent) const;

    int height() const;       // node layers; a leaf has height 0
    int node_count() const;
    bool same_shape(const FiniteProfile &o) const;  // shape, agents and payoffs
    bool equal(const FiniteProfile &o) const;       // shape plus choices

    std::string to_string() const;

private:
    FiniteProfile() = default;
    Payoff payoff_;
    std::string agent_;
    Choice choice_ = Choice::Left;
    FiniteProfilePtr left_, right_;
};

// Result of expanding finitely many layers of an instance: a finite tree
// whose unexpanded ends are explicit holes naming the definition and the
// concrete step value they stand for.
class Unrolled;
using UnrolledPtr = std::shared_ptr<const Unrolled>;

class Unrolled {
public:
    enum class Kind { Leaf, Node, Hole };

    static UnrolledPtr leaf(Payoff payoff);
    static UnrolledPtr node(std::string agent, Choice choice, UnrolledPtr left, UnrolledPtr right);
    static UnrolledPtr hole(std::string def, long long n);

    Kind kind() const { return kind_; }
    const Payoff &payoff() const { return payoff_; }
    const std::string &agent() const { return agent_; }
    Choice choice() const { return choice_; }
    const UnrolledPtr &left() const { return left_; }
    const UnrolledPtr &right() const { return right_; }
    const std::string &hole_def() const { return agent_; }  // shares the name slot
    long long hole_n() const { return hole_n_; }

    int count_nodes() const;  // leaves, nodes and holes together
    bool has_hole() const;
    std::string to_string() const;

    // Restriction of this expansion to `depth` layers, deeper parts becoming
    // holes again; holes need their (def, n) labels, so this only succeeds on
    // trees produced by unroll().  Used to state expansion monotonicity.
    bool equal(const Unrolled &o) const;

private:
    Unrolled() = default;
    Kind kind_ = Kind::Leaf;
    Payoff payoff_;
    std::string agent_;
    Choice choice_ = Choice::Left;
    UnrolledPtr left_, right_;
    long long hole_n_ = 0;
};

// One validation finding; validate() reports every violation it can see
// rather than stopping at the first.
struct Diagnostic {
    std::string code;  // stable machine-readable tag, e.g. "dangling-ref"
    std::string where; // offending definition, or "system"
    std::string message;
};

// Empty iff the system satisfies all structural invariants: nonempty agent
// set, all references resolve, shifts and the root step are nonnegative,
// leaf payoffs are total on the agent set and mention only declared
// parameters, node agents are declared.
std::vector<Diagnostic> validate(const ProfileSystem &sys);

// Expands `depth` node layers of a concrete instance.  Leaf definitions
// materialize at any depth; node definitions at depth 0 become holes.  Leaf
// payoffs are evaluated to concrete integers, so every parameter mentioned
// needs a value.  Throws ParamUnboundError otherwise.
UnrolledPtr unroll(const ProfileInstance &inst, int depth, const ParamValues &params = {});

// Replaces every hole of an expansion with the given padding leaf.
FiniteProfilePtr fill_holes(const UnrolledPtr &tree, const Payoff &padding);

// Whether two instances denote equal trees, decided by coinductive closure
// over (definition, definition, step offset) triples.  Requires both
// instances concrete or both symbolic; throws AgentMismatchError when the
// systems declare different agent sets.
bool bisimilar(const ProfileInstance &a, const ProfileInstance &b);

}  // namespace stratprof
