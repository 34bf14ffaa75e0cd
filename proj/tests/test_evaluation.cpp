#include <random>

#include "doctest.h"

#include "dollar.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "finite_oracle.hpp"
#include "fixtures.hpp"

using namespace stratprof;

TEST_CASE("the realized play of the give-up profile stops at once") {
    ProfileSystem sys = build_profile(DollarProfile::AsBs);
    ChosenPath path = chosen_path(root_instance(sys));
    REQUIRE(path.steps.size() == 1);
    CHECK(path.steps[0].def == "dolAsBs");
    CHECK(path.steps[0].taken == Choice::Right);
    CHECK(path.steps[0].shift_so_far == 0);
    REQUIRE(path.reaches_leaf());
    CHECK(*path.leaf_def == "stop_alice");
    CHECK(path.total_shift == 0);
}

TEST_CASE("a leaf instance has an empty play") {
    ProfileSystem sys = build_profile(DollarProfile::AsBs);
    ChosenPath path = chosen_path(ProfileInstance{&sys, "stop_bob", 4});
    CHECK(path.steps.empty());
    CHECK(path.reaches_leaf());
}

TEST_CASE("a repeated definition along the play proves divergence") {
    ProfileSystem sys = fixtures::lurking_loop();
    ChosenPath path = chosen_path(ProfileInstance{&sys, "loop", 0});
    CHECK_FALSE(path.reaches_leaf());
    CHECK(*path.cycle_def == "loop");
}

TEST_CASE("leads-to-leaf across the stock systems") {
    ProfileSystem asbs = build_profile(DollarProfile::AsBs);
    ProfileSystem acbs = build_profile(DollarProfile::AcBs);
    CHECK(leads_to_leaf(root_instance(asbs)));
    CHECK(leads_to_leaf(symbolic_instance(acbs)));  // uniform in n
    ProfileSystem loop = fixtures::lurking_loop();
    CHECK(leads_to_leaf(root_instance(loop)));  // recorded choice avoids the loop
    CHECK_FALSE(leads_to_leaf(ProfileInstance{&loop, "loop", 0}));
}

TEST_CASE("the worked two-node example pays Alice 2") {
    ProfileSystem sys = embed_finite(*fixtures::s0(), {"Alice", "Bob"});
    UtilityResult u = utility(root_instance(sys), "Alice");
    REQUIRE(u.defined());
    CHECK(u.expr() == AffineExpr::number(2));
    CHECK(utility(root_instance(sys), "Bob").expr() == AffineExpr::number(0));
}

TEST_CASE("a leaf's utility is its payoff entry") {
    ProfileSystem sys = build_profile(DollarProfile::AsBs);
    ProfileInstance leaf{&sys, "stop_bob", ForAllN{0}};
    AffineExpr expected = AffineExpr::step() + AffineExpr::number(1);
    CHECK(utility(leaf, "Alice").expr() == expected);
    ProfileInstance at3{&sys, "stop_bob", 3};
    CHECK(utility(at3, "Alice").expr() == AffineExpr::number(4));
}

TEST_CASE("symbolic utilities of the one-sided profiles") {
    ProfileSystem asbc = build_profile(DollarProfile::AsBc);
    // Alice gives up at once: she pays v + n, Bob pays his sunk bids n.
    CHECK(utility(symbolic_instance(asbc), "Bob").expr() == AffineExpr::step());
    CHECK(utility(symbolic_instance(asbc), "Alice").expr() ==
          AffineExpr::param("v") + AffineExpr::step());

    ProfileSystem acbs = build_profile(DollarProfile::AcBs);
    // Alice bids, Bob gives up: Alice pays n + 1, Bob pays v + n.
    CHECK(utility(symbolic_instance(acbs), "Alice").expr() ==
          AffineExpr::step() + AffineExpr::number(1));
    CHECK(utility(symbolic_instance(acbs), "Bob").expr() ==
          AffineExpr::param("v") + AffineExpr::step());
}

TEST_CASE("diverging plays have no utility") {
    ProfileSystem loop = fixtures::lurking_loop();
    CHECK_FALSE(utility(ProfileInstance{&loop, "loop", 0}, "Alice").defined());
    CHECK_THROWS_AS(utility(root_instance(loop), "Carol"), AgentUnknownError);
}

TEST_CASE("always-leads-to-leaf inspects unchosen branches too") {
    ProfileSystem asbs = build_profile(DollarProfile::AsBs);
    ProfileSystem acbs = build_profile(DollarProfile::AcBs);
    CHECK(always_leads_to_leaf(root_instance(asbs)).holds);
    CHECK(always_leads_to_leaf(root_instance(acbs)).holds);

    ProfileSystem loop = fixtures::lurking_loop();
    AlwaysLeadsResult res = always_leads_to_leaf(root_instance(loop));
    CHECK_FALSE(res.holds);
    CHECK(*res.failing_def == "loop");
}

namespace {

ProfileSystem random_system(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> def_count(1, 4);
    std::uniform_int_distribution<int> percent(0, 99);
    std::uniform_int_distribution<long long> small(-3, 3);
    std::uniform_int_distribution<long long> small_pos(0, 3);
    std::uniform_int_distribution<long long> shift(0, 2);
    std::uniform_int_distribution<int> coin(0, 1);

    ProfileSystem sys;
    sys.agents = {"Alice", "Bob"};
    bool with_param = percent(rng) < 40;
    if (with_param) sys.params = {{"v", small_pos(rng)}};

    int defs = def_count(rng);
    std::uniform_int_distribution<int> pick_def(0, defs - 1);
    for (int i = 0; i < defs; ++i) {
        std::string name = "d" + std::to_string(i);
        if (percent(rng) < 40) {
            UtilityFn payoff;
            for (const auto &agent : sys.agents) {
                AffineExpr e = AffineExpr::number(small(rng));
                if (coin(rng)) e += AffineExpr::step().scaled(small_pos(rng));
                if (with_param && coin(rng)) e += AffineExpr::param("v").scaled(small(rng));
                payoff[agent] = e;
            }
            sys.defs.push_back({name, LeafDef{std::move(payoff)}});
        } else {
            NodeDef node;
            node.agent = sys.agents[coin(rng)];
            node.choice = coin(rng) ? Choice::Left : Choice::Right;
            node.left = Ref{"d" + std::to_string(pick_def(rng)), shift(rng)};
            node.right = Ref{"d" + std::to_string(pick_def(rng)), shift(rng)};
            sys.defs.push_back({name, std::move(node)});
        }
    }
    sys.root_def = "d0";
    sys.root_n = small_pos(rng);
    return sys;
}

}  // namespace

TEST_CASE("evaluation laws on random systems") {
    std::mt19937_64 rng(2024);
    int diverging = 0, defined = 0;
    for (int trial = 0; trial < 500; ++trial) {
        ProfileSystem sys = random_system(rng);
        REQUIRE(validate(sys).empty());
        ParamValues params;
        for (const auto &[p, bound] : sys.params) params[p] = bound + 1;

        ProfileInstance root = root_instance(sys);
        bool reaches = leads_to_leaf(root);

        // existence: a play that reaches a leaf has a utility for every agent
        for (const auto &agent : sys.agents) {
            UtilityResult u = utility(root, agent);
            CHECK(u.defined() == reaches);
            (reaches ? defined : diverging) += 1;

            // uniqueness: evaluating twice gives the same expression
            if (reaches) CHECK(utility(root, agent).expr() == u.expr());
        }

        // one-step invariance: a node instance has the utility of the child
        // its recorded choice selects
        for (const auto &[name, def] : sys.defs) {
            const auto *node = std::get_if<NodeDef>(&def);
            if (!node) continue;
            const Ref &next = node->chosen();
            for (const auto &agent : sys.agents) {
                UtilityResult before = utility(ProfileInstance{&sys, name, ForAllN{0}}, agent);
                UtilityResult after = utility(ProfileInstance{&sys, next.target, ForAllN{0}}, agent);
                CHECK(before.defined() == after.defined());
                if (before.defined()) CHECK(before.expr() == after.expr().shifted(next.shift));
            }
        }

        // agreement with naive unrolling at concrete n
        if (reaches) {
            int depth = static_cast<int>(sys.defs.size()) + 1;
            FiniteProfilePtr coarse =
                fill_holes(unroll(root, depth, params), Payoff{{"Alice", -999}, {"Bob", -999}});
            for (const auto &agent : sys.agents)
                CHECK(coarse->realized_for(agent) == utility(root, agent).expr().eval(0, params));
        }

        // every reachable instance of an always-terminating profile terminates
        if (always_leads_to_leaf(root).holds) {
            std::vector<std::string> frontier{root.def};
            for (int step = 0; step < 2 * static_cast<int>(sys.defs.size()); ++step) {
                std::vector<std::string> next;
                for (const auto &name : frontier) {
                    CHECK(leads_to_leaf(ProfileInstance{&sys, name, 0}));
                    if (const auto *node = std::get_if<NodeDef>(sys.find(name))) {
                        next.push_back(node->left.target);
                        next.push_back(node->right.target);
                    }
                }
                frontier = std::move(next);
            }
        }
    }
    // the generator must exercise both outcomes
    CHECK(defined > 0);
    CHECK(diverging > 0);
}
