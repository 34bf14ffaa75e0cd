#include "equilibria.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "finite_oracle.hpp"

namespace stratprof {

namespace {

// Symbolic utility of `ref` seen from a node at step n: the target's own
// utility expression with n moved forward by the reference shift.
AffineExpr child_utility(const ProfileSystem &sys, const Ref &ref, const std::string &agent) {
    ProfileInstance child{&sys, ref.target, ForAllN{0}};
    return utility(child, agent).expr().shifted(ref.shift);
}

std::vector<std::string> reachable_defs(const ProfileSystem &sys, const std::string &from) {
    std::vector<std::string> order{from};
    std::set<std::string> seen{from};
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (const auto *node = std::get_if<NodeDef>(sys.find(order[i]))) {
            for (const Ref &ref : {node->left, node->right})
                if (seen.insert(ref.target).second) order.push_back(ref.target);
        }
    }
    return order;
}

}  // namespace

SgpeOutcome check_sgpe(const ProfileSystem &sys, PrefOrder pref) {
    SgpeOutcome out;
    out.pref = pref;

    // A reachable diverging play falsifies the "always leads to a leaf"
    // premise outright.
    AlwaysLeadsResult altl = always_leads_to_leaf(root_instance(sys));
    if (!altl.holds) {
        out.certified = false;
        out.diverging_def = altl.failing_def;
        out.first_retracted = altl.failing_def;
        return out;
    }

    ParamBounds bounds = sys.bounds();
    std::vector<std::string> order = reachable_defs(sys, sys.root_def);

    // Round 1: discharge every local inequality in isolation.
    for (const auto &name : order) {
        SgpeClaim claim;
        if (const auto *node = std::get_if<NodeDef>(sys.find(name))) {
            NodeInequality ineq;
            ineq.agent = node->agent;
            ineq.choice = node->choice;
            ineq.chosen_utility = child_utility(sys, node->chosen(), node->agent);
            ineq.other_utility = child_utility(sys, node->unchosen(), node->agent);
            ineq.margin = pref == PrefOrder::HigherIsBetter
                              ? ineq.chosen_utility - ineq.other_utility
                              : ineq.other_utility - ineq.chosen_utility;
            if (!forall_nonneg(ineq.margin, bounds)) {
                claim.status = SgpeClaim::Status::RefutedLocally;
                claim.witness = falsifying_point(ineq.margin, bounds);
                claim.round = 1;
            }
            claim.inequality = std::move(ineq);
        }
        out.claims.emplace(name, std::move(claim));
    }

    // Later rounds: a node whose child lost its claim loses its own.
    int round = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        ++round;
        for (const auto &name : order) {
            SgpeClaim &claim = out.claims.at(name);
            if (claim.status != SgpeClaim::Status::Holds) continue;
            const auto *node = std::get_if<NodeDef>(sys.find(name));
            if (!node) continue;
            for (const Ref &ref : {node->left, node->right}) {
                if (out.claims.at(ref.target).status != SgpeClaim::Status::Holds) {
                    claim.status = SgpeClaim::Status::ChildRetracted;
                    claim.retracted_child = ref.target;
                    claim.round = round;
                    changed = true;
                    break;
                }
            }
        }
    }

    out.certified = out.claims.at(sys.root_def).status == SgpeClaim::Status::Holds;
    if (!out.certified) {
        for (const auto &name : order) {
            const SgpeClaim &claim = out.claims.at(name);
            if (claim.status == SgpeClaim::Status::RefutedLocally) {
                out.first_retracted = name;
                out.witness = claim.witness;
                break;
            }
        }
    }
    return out;
}

namespace {

struct DeviationSearch {
    const ProfileSystem &sys;
    const std::string &agent;
    PrefOrder pref;
    int depth_bound;
    const ParamValues &params;
    long long original;

    std::optional<DeviationWitness> best;

    void consider(long long value, std::vector<DeviationEdit> &edits) {
        if (!strictly_preferred(pref, original, value)) return;
        if (best && !strictly_preferred(pref, best->deviation_utility, value)) return;
        DeviationWitness w;
        w.agent = agent;
        w.edits = edits;
        w.original_utility = original;
        w.deviation_utility = value;
        best = std::move(w);
    }

    void walk(const std::string &def, long long n, int level, std::vector<DeviationEdit> &edits) {
        const ProfileDef *d = sys.find(def);
        if (const auto *leaf = std::get_if<LeafDef>(d)) {
            consider(leaf->payoff.at(agent).eval(n, params), edits);
            return;
        }
        if (level >= depth_bound) return;  // bound reached without a leaf
        const auto &node = std::get<NodeDef>(*d);
        const Ref &follow = node.chosen();
        walk(follow.target, n + follow.shift, level + 1, edits);
        if (node.agent == agent) {
            const Ref &flip = node.unchosen();
            edits.push_back(DeviationEdit{def, level, other_choice(node.choice)});
            walk(flip.target, n + flip.shift, level + 1, edits);
            edits.pop_back();
        }
    }
};

}  // namespace

NashVerdict check_nash(const ProfileInstance &inst, PrefOrder pref, int depth_bound,
                       const ParamValues &params) {
    if (depth_bound < 1) throw InvalidBoundError();
    NashVerdict verdict;
    verdict.depth_bound = depth_bound;
    if (!leads_to_leaf(inst)) {
        verdict.kind = NashVerdict::Kind::VacuouslyNash;
        return verdict;
    }
    for (const auto &agent : inst.system->agents) {
        long long original = utility(inst, agent).expr().eval(0, params);
        DeviationSearch search{*inst.system, agent, pref, depth_bound, params, original, {}};
        std::vector<DeviationEdit> edits;
        search.walk(inst.def, inst.n_value(), 0, edits);
        if (search.best) {
            verdict.kind = NashVerdict::Kind::NotNash;
            verdict.witness = std::move(search.best);
            return verdict;
        }
    }
    verdict.kind = NashVerdict::Kind::NashUpToDepth;
    return verdict;
}

namespace {

std::string level_name(const std::string &def, int level) {
    return def + "@" + std::to_string(level);
}

}  // namespace

ProfileSystem deviated_system(const ProfileSystem &sys, const ProfileInstance &inst,
                              const DeviationWitness &witness) {
    int max_level = 0;
    for (const auto &e : witness.edits) max_level = std::max(max_level, e.level);

    auto edited_choice = [&witness](const std::string &def, int level) -> std::optional<Choice> {
        for (const auto &e : witness.edits)
            if (e.def == def && e.level == level) return e.new_choice;
        return std::nullopt;
    };

    ProfileSystem dev;
    dev.agents = sys.agents;
    dev.params = sys.params;
    // Level-indexed copies down to the deepest edit, sharing the original
    // definitions below that.
    for (int level = 0; level <= max_level; ++level) {
        for (const auto &[name, def] : sys.defs) {
            ProfileDef copy = def;
            if (auto *node = std::get_if<NodeDef>(&copy)) {
                if (auto c = edited_choice(name, level)) node->choice = *c;
                if (level < max_level) {
                    node->left.target = level_name(node->left.target, level + 1);
                    node->right.target = level_name(node->right.target, level + 1);
                }
            }
            dev.defs.push_back({level_name(name, level), std::move(copy)});
        }
    }
    for (const auto &d : sys.defs) dev.defs.push_back(d);
    dev.root_def = level_name(inst.def, 0);
    dev.root_n = inst.n_value();
    return dev;
}

bool verify_deviation(const ProfileSystem &sys, const ProfileInstance &inst,
                      const DeviationWitness &witness, PrefOrder pref, const ParamValues &params) {
    UtilityResult original = utility(inst, witness.agent);
    if (!original.defined()) return false;
    if (original.expr().eval(0, params) != witness.original_utility) return false;

    ProfileSystem dev = deviated_system(sys, inst, witness);
    UtilityResult deviated = utility(root_instance(dev), witness.agent);
    if (!deviated.defined()) return false;
    if (deviated.expr().eval(0, params) != witness.deviation_utility) return false;
    return strictly_preferred(pref, witness.original_utility, witness.deviation_utility);
}

ImplicationReport sgpe_implies_nash_suite(
    std::uint64_t seed, int count,
    const std::function<bool(const FiniteProfile &, PrefOrder)> &sgpe_check,
    const std::function<bool(const FiniteProfile &, PrefOrder)> &nash_check) {
    ImplicationReport report;
    std::mt19937_64 rng(seed);
    const std::vector<std::string> agents{"Alice", "Bob"};
    for (int i = 0; i < count; ++i) {
        FiniteProfilePtr p = random_profile(rng, 5, agents, 2);
        ++report.generated;
        for (PrefOrder pref : {PrefOrder::HigherIsBetter, PrefOrder::LowerIsBetter}) {
            if (!sgpe_check(*p, pref)) continue;
            ++report.sgpe_count;
            if (!nash_check(*p, pref)) report.violations.push_back(p->to_string());
        }
    }
    return report;
}

ImplicationReport sgpe_implies_nash_suite(std::uint64_t seed, int count) {
    return sgpe_implies_nash_suite(
        seed, count, [](const FiniteProfile &p, PrefOrder pref) { return brute_sgpe(p, pref); },
        [](const FiniteProfile &p, PrefOrder pref) { return brute_nash(p, pref); });
}

}  // namespace stratprof
