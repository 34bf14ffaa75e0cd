#include "finite_oracle.hpp"

#include <algorithm>

#include "errors.hpp"

namespace stratprof {

bool convertible(const FiniteProfile &s, const FiniteProfile &t, const std::string &agent) {
    if (s.is_leaf() != t.is_leaf()) throw ShapeMismatchError();
    if (s.is_leaf()) {
        if (s.payoff() != t.payoff()) throw ShapeMismatchError();
        return true;
    }
    if (s.agent() != t.agent()) throw ShapeMismatchError();
    if (s.agent() != agent && s.choice() != t.choice()) return false;
    return convertible(*s.left(), *t.left(), agent) && convertible(*s.right(), *t.right(), agent);
}

namespace {

// Collect the nodes owned by one agent in preorder; flipping subsets of them
// enumerates exactly the profiles convertible for that agent.
void collect_owned(const FiniteProfilePtr &s, const std::string &agent,
                   std::vector<const FiniteProfile *> &out) {
    if (s->is_leaf()) return;
    if (s->agent() == agent) out.push_back(s.get());
    collect_owned(s->left(), agent, out);
    collect_owned(s->right(), agent, out);
}

FiniteProfilePtr with_flips(const FiniteProfilePtr &s,
                            const std::vector<const FiniteProfile *> &flipped) {
    if (s->is_leaf()) return s;
    Choice c = s->choice();
    if (std::find(flipped.begin(), flipped.end(), s.get()) != flipped.end())
        c = other_choice(c);
    return FiniteProfile::node(s->agent(), c, with_flips(s->left(), flipped),
                               with_flips(s->right(), flipped));
}

}  // namespace

bool brute_nash(const FiniteProfile &s, PrefOrder pref) {
    // Work on a shared handle so unchanged subtrees can be reused verbatim
    // while deviations are rebuilt.
    FiniteProfilePtr self = s.is_leaf()
                                ? FiniteProfile::leaf(s.payoff())
                                : FiniteProfile::node(s.agent(), s.choice(), s.left(), s.right());
    std::vector<std::string> agents;
    for (const auto &[a, u] : self->realized()) {
        (void)u;
        agents.push_back(a);
    }
    for (const auto &agent : agents) {
        long long u0 = self->realized_for(agent);
        std::vector<const FiniteProfile *> owned;
        collect_owned(self, agent, owned);
        for (std::uint64_t mask = 1; mask < (1ULL << owned.size()); ++mask) {
            std::vector<const FiniteProfile *> flipped;
            for (std::size_t i = 0; i < owned.size(); ++i)
                if (mask & (1ULL << i)) flipped.push_back(owned[i]);
            FiniteProfilePtr deviated = with_flips(self, flipped);
            if (strictly_preferred(pref, u0, deviated->realized_for(agent))) return false;
        }
    }
    return true;
}

bool brute_sgpe(const FiniteProfile &s, PrefOrder pref) {
    if (s.is_leaf()) return true;
    if (!brute_sgpe(*s.left(), pref) || !brute_sgpe(*s.right(), pref)) return false;
    long long chosen = s.child(s.choice())->realized_for(s.agent());
    long long other = s.child(other_choice(s.choice()))->realized_for(s.agent());
    return weakly_preferred(pref, other, chosen);
}

std::vector<FiniteProfilePtr> backward_induction(const FiniteProfile &game, PrefOrder pref) {
    if (game.is_leaf()) return {FiniteProfile::leaf(game.payoff())};
    std::vector<FiniteProfilePtr> out;
    for (const auto &l : backward_induction(*game.left(), pref)) {
        for (const auto &r : backward_induction(*game.right(), pref)) {
            long long ul = l->realized_for(game.agent());
            long long ur = r->realized_for(game.agent());
            if (weakly_preferred(pref, ur, ul))
                out.push_back(FiniteProfile::node(game.agent(), Choice::Left, l, r));
            if (weakly_preferred(pref, ul, ur))
                out.push_back(FiniteProfile::node(game.agent(), Choice::Right, l, r));
        }
    }
    return out;
}

FiniteProfilePtr truncate(const ProfileSystem &sys, const TruncationPolicy &policy,
                          const ParamValues &params) {
    return fill_holes(unroll(root_instance(sys), policy.depth, params), policy.padding);
}

namespace {

void embed_walk(const FiniteProfile &p, ProfileSystem &sys, int &counter) {
    std::string name = "d" + std::to_string(counter++);
    if (p.is_leaf()) {
        UtilityFn payoff;
        for (const auto &[a, u] : p.payoff()) payoff[a] = AffineExpr::number(u);
        sys.defs.push_back({name, LeafDef{std::move(payoff)}});
        return;
    }
    std::size_t slot = sys.defs.size();
    sys.defs.push_back({name, ProfileDef{}});
    std::string left_name = "d" + std::to_string(counter);
    embed_walk(*p.left(), sys, counter);
    std::string right_name = "d" + std::to_string(counter);
    embed_walk(*p.right(), sys, counter);
    sys.defs[slot].second = NodeDef{p.agent(), p.choice(), Ref{left_name, 0}, Ref{right_name, 0}};
}

}  // namespace

ProfileSystem embed_finite(const FiniteProfile &profile, std::vector<std::string> agents) {
    ProfileSystem sys;
    sys.agents = std::move(agents);
    int counter = 0;
    embed_walk(profile, sys, counter);
    sys.root_def = "d0";
    sys.root_n = 0;
    return sys;
}

namespace {

// All shapes with at most `levels` node layers, as skeleton trees whose
// agents/choices/payoffs are placeholders to be rewritten by the decorators.
void shapes_upto(int levels, std::vector<FiniteProfilePtr> &out) {
    out.push_back(FiniteProfile::leaf({}));
    if (levels == 0) return;
    std::vector<FiniteProfilePtr> sub;
    shapes_upto(levels - 1, sub);
    for (const auto &l : sub)
        for (const auto &r : sub) out.push_back(FiniteProfile::node("", Choice::Left, l, r));
}

void leaves_count(const FiniteProfile &p, int &leaves, int &nodes) {
    if (p.is_leaf()) {
        ++leaves;
        return;
    }
    ++nodes;
    leaves_count(*p.left(), leaves, nodes);
    leaves_count(*p.right(), leaves, nodes);
}

// Rebuild a skeleton with agents, payoffs and (optionally) choices taken from
// the index vectors, consuming one entry per node/leaf in preorder.
FiniteProfilePtr decorate(const FiniteProfile &skel, const std::vector<std::string> &agents,
                          const std::vector<long long> &values,
                          const std::vector<int> &agent_ix, const std::vector<int> &payoff_ix,
                          const std::uint64_t *choice_mask, int &node_at, int &leaf_at) {
    if (skel.is_leaf()) {
        Payoff payoff;
        int ix = payoff_ix[leaf_at++];
        for (const auto &a : agents) {
            payoff[a] = values[ix % values.size()];
            ix /= static_cast<int>(values.size());
        }
        return FiniteProfile::leaf(std::move(payoff));
    }
    int me = node_at++;
    Choice c = Choice::Left;
    if (choice_mask && (*choice_mask >> me) & 1) c = Choice::Right;
    auto l = decorate(*skel.left(), agents, values, agent_ix, payoff_ix, choice_mask, node_at, leaf_at);
    auto r = decorate(*skel.right(), agents, values, agent_ix, payoff_ix, choice_mask, node_at, leaf_at);
    return FiniteProfile::node(agents[agent_ix[me]], c, std::move(l), std::move(r));
}

void enumerate(int max_levels, const std::vector<std::string> &agents,
               const std::vector<long long> &values, bool with_choices,
               const std::function<void(const FiniteProfilePtr &)> &fn) {
    std::vector<FiniteProfilePtr> shapes;
    shapes_upto(max_levels, shapes);
    const int payoff_combos_per_leaf = [&] {
        int c = 1;
        for (std::size_t i = 0; i < agents.size(); ++i) c *= static_cast<int>(values.size());
        return c;
    }();
    for (const auto &shape : shapes) {
        int leaves = 0, nodes = 0;
        leaves_count(*shape, leaves, nodes);
        std::vector<int> agent_ix(nodes, 0), payoff_ix(leaves, 0);
        auto advance = [](std::vector<int> &v, int radix) {
            for (auto &x : v) {
                if (++x < radix) return true;
                x = 0;
            }
            return false;
        };
        do {
            std::fill(payoff_ix.begin(), payoff_ix.end(), 0);
            do {
                if (!with_choices) {
                    int n = 0, l = 0;
                    fn(decorate(*shape, agents, values, agent_ix, payoff_ix, nullptr, n, l));
                    continue;
                }
                for (std::uint64_t mask = 0; mask < (1ULL << nodes); ++mask) {
                    int n = 0, l = 0;
                    fn(decorate(*shape, agents, values, agent_ix, payoff_ix, &mask, n, l));
                }
            } while (advance(payoff_ix, payoff_combos_per_leaf));
        } while (advance(agent_ix, static_cast<int>(agents.size())));
    }
}

}  // namespace

void for_each_profile(int max_levels, const std::vector<std::string> &agents,
                      const std::vector<long long> &values,
                      const std::function<void(const FiniteProfilePtr &)> &fn) {
    enumerate(max_levels, agents, values, true, fn);
}

void for_each_game(int max_levels, const std::vector<std::string> &agents,
                   const std::vector<long long> &values,
                   const std::function<void(const FiniteProfilePtr &)> &fn) {
    enumerate(max_levels, agents, values, false, fn);
}

std::vector<FiniteProfilePtr> all_choice_assignments(const FiniteProfile &game) {
    if (game.is_leaf()) return {FiniteProfile::leaf(game.payoff())};
    std::vector<FiniteProfilePtr> out;
    for (const auto &l : all_choice_assignments(*game.left())) {
        for (const auto &r : all_choice_assignments(*game.right())) {
            out.push_back(FiniteProfile::node(game.agent(), Choice::Left, l, r));
            out.push_back(FiniteProfile::node(game.agent(), Choice::Right, l, r));
        }
    }
    return out;
}

FiniteProfilePtr random_profile(std::mt19937_64 &rng, int max_depth,
                                const std::vector<std::string> &agents, long long value_range) {
    std::uniform_int_distribution<long long> value(0, value_range);
    std::uniform_int_distribution<int> coin(0, 1);
    if (max_depth == 0 || coin(rng) == 0) {
        Payoff payoff;
        for (const auto &a : agents) payoff[a] = value(rng);
        return FiniteProfile::leaf(std::move(payoff));
    }
    std::uniform_int_distribution<std::size_t> pick(0, agents.size() - 1);
    auto l = random_profile(rng, max_depth - 1, agents, value_range);
    auto r = random_profile(rng, max_depth - 1, agents, value_range);
    return FiniteProfile::node(agents[pick(rng)], coin(rng) == 0 ? Choice::Left : Choice::Right,
                               std::move(l), std::move(r));
}

}  // namespace stratprof
