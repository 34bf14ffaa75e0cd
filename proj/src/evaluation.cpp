#include "evaluation.hpp"

#include <set>
#include <vector>

#include "errors.hpp"

namespace stratprof {

ChosenPath chosen_path(const ProfileInstance &inst) {
    const ProfileSystem &sys = *inst.system;
    ChosenPath path;
    std::set<std::string> visited;
    std::string cur = inst.def;
    long long shift = 0;
    for (;;) {
        const ProfileDef *def = sys.find(cur);
        if (std::holds_alternative<LeafDef>(*def)) {
            path.leaf_def = cur;
            path.total_shift = shift;
            return path;
        }
        if (!visited.insert(cur).second) {
            path.cycle_def = cur;
            path.total_shift = shift;
            return path;
        }
        const auto &node = std::get<NodeDef>(*def);
        path.steps.push_back(PathStep{cur, node.choice, shift});
        shift += node.chosen().shift;
        cur = node.chosen().target;
    }
}

bool leads_to_leaf(const ProfileInstance &inst) {
    return chosen_path(inst).reaches_leaf();
}

UtilityResult utility(const ProfileInstance &inst, const std::string &agent) {
    const ProfileSystem &sys = *inst.system;
    if (!sys.has_agent(agent)) throw AgentUnknownError(agent);
    ChosenPath path = chosen_path(inst);
    if (!path.reaches_leaf()) return UtilityResult::diverges();
    const auto &leaf = std::get<LeafDef>(*sys.find(*path.leaf_def));
    AffineExpr expr = leaf.payoff.at(agent).shifted(path.total_shift);
    if (inst.concrete()) expr = expr.at_step(inst.n_value());
    return UtilityResult::defined_as(std::move(expr));
}

AlwaysLeadsResult always_leads_to_leaf(const ProfileInstance &inst) {
    const ProfileSystem &sys = *inst.system;
    // Which definitions a play can enter never depends on n, so the check
    // runs over definitions: collect everything reachable through either
    // child and require each one's own play to reach a leaf.  BFS order makes
    // the reported counterexample deterministic.
    std::vector<std::string> queue{inst.def};
    std::set<std::string> seen{inst.def};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const std::string &name = queue[i];
        ProfileInstance here{inst.system, name, 0LL};
        if (!leads_to_leaf(here)) return AlwaysLeadsResult{false, name};
        const ProfileDef *def = sys.find(name);
        if (const auto *node = std::get_if<NodeDef>(def)) {
            for (const Ref &ref : {node->left, node->right})
                if (seen.insert(ref.target).second) queue.push_back(ref.target);
        }
    }
    return AlwaysLeadsResult{true, std::nullopt};
}

}  // namespace stratprof
