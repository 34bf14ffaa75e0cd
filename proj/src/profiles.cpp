#include "profiles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "errors.hpp"

namespace stratprof {

const ProfileDef *ProfileSystem::find(const std::string &name) const {
    for (const auto &[n, d] : defs)
        if (n == name) return &d;
    return nullptr;
}

bool ProfileSystem::has_agent(const std::string &name) const {
    return std::find(agents.begin(), agents.end(), name) != agents.end();
}

std::optional<long long> ProfileSystem::param_bound(const std::string &name) const {
    for (const auto &[p, b] : params)
        if (p == name) return b;
    return std::nullopt;
}

ParamBounds ProfileSystem::bounds() const {
    ParamBounds b;
    for (const auto &[p, lo] : params) b[p] = lo;
    return b;
}

FiniteProfilePtr FiniteProfile::leaf(Payoff payoff) {
    auto p = std::shared_ptr<FiniteProfile>(new FiniteProfile());
    p->payoff_ = std::move(payoff);
    return p;
}

FiniteProfilePtr FiniteProfile::node(std::string agent, Choice choice, FiniteProfilePtr left,
                                     FiniteProfilePtr right) {
    auto p = std::shared_ptr<FiniteProfile>(new FiniteProfile());
    p->agent_ = std::move(agent);
    p->choice_ = choice;
    p->left_ = std::move(left);
    p->right_ = std::move(right);
    return p;
}

const Payoff &FiniteProfile::realized() const {
    const FiniteProfile *cur = this;
    while (!cur->is_leaf()) cur = cur->child(cur->choice_).get();
    return cur->payoff_;
}

long long FiniteProfile::realized_for(const std::string &agent) const {
    return realized().at(agent);
}

int FiniteProfile::height() const {
    if (is_leaf()) return 0;
    return 1 + std::max(left_->height(), right_->height());
}

int FiniteProfile::node_count() const {
    if (is_leaf()) return 0;
    return 1 + left_->node_count() + right_->node_count();
}

bool FiniteProfile::same_shape(const FiniteProfile &o) const {
    if (is_leaf() != o.is_leaf()) return false;
    if (is_leaf()) return payoff_ == o.payoff_;
    return agent_ == o.agent_ && left_->same_shape(*o.left_) && right_->same_shape(*o.right_);
}

bool FiniteProfile::equal(const FiniteProfile &o) const {
    if (is_leaf() != o.is_leaf()) return false;
    if (is_leaf()) return payoff_ == o.payoff_;
    return agent_ == o.agent_ && choice_ == o.choice_ && left_->equal(*o.left_) &&
           right_->equal(*o.right_);
}

std::string FiniteProfile::to_string() const {
    if (is_leaf()) {
        std::string out = "{";
        bool first = true;
        for (const auto &[a, u] : payoff_) {
            if (!first) out += ",";
            first = false;
            out += a + ":" + std::to_string(u);
        }
        return out + "}";
    }
    return "(" + agent_ + " " + std::string(1, choice_letter(choice_)) + " " +
           left_->to_string() + " " + right_->to_string() + ")";
}

UnrolledPtr Unrolled::leaf(Payoff payoff) {
    auto p = std::shared_ptr<Unrolled>(new Unrolled());
    p->kind_ = Kind::Leaf;
    p->payoff_ = std::move(payoff);
    return p;
}

UnrolledPtr Unrolled::node(std::string agent, Choice choice, UnrolledPtr left, UnrolledPtr right) {
    auto p = std::shared_ptr<Unrolled>(new Unrolled());
    p->kind_ = Kind::Node;
    p->agent_ = std::move(agent);
    p->choice_ = choice;
    p->left_ = std::move(left);
    p->right_ = std::move(right);
    return p;
}

UnrolledPtr Unrolled::hole(std::string def, long long n) {
    auto p = std::shared_ptr<Unrolled>(new Unrolled());
    p->kind_ = Kind::Hole;
    p->agent_ = std::move(def);
    p->hole_n_ = n;
    return p;
}

int Unrolled::count_nodes() const {
    if (kind_ != Kind::Node) return 1;
    return 1 + left_->count_nodes() + right_->count_nodes();
}

bool Unrolled::has_hole() const {
    if (kind_ == Kind::Hole) return true;
    if (kind_ == Kind::Leaf) return false;
    return left_->has_hole() || right_->has_hole();
}

std::string Unrolled::to_string() const {
    switch (kind_) {
        case Kind::Hole:
            return "hole(" + agent_ + "," + std::to_string(hole_n_) + ")";
        case Kind::Leaf: {
            std::string out = "{";
            bool first = true;
            for (const auto &[a, u] : payoff_) {
                if (!first) out += ",";
                first = false;
                out += a + ":" + std::to_string(u);
            }
            return out + "}";
        }
        case Kind::Node:
            return "(" + agent_ + " " + std::string(1, choice_letter(choice_)) + " " +
                   left_->to_string() + " " + right_->to_string() + ")";
    }
    return {};
}

bool Unrolled::equal(const Unrolled &o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Hole:
            return agent_ == o.agent_ && hole_n_ == o.hole_n_;
        case Kind::Leaf:
            return payoff_ == o.payoff_;
        case Kind::Node:
            return agent_ == o.agent_ && choice_ == o.choice_ && left_->equal(*o.left_) &&
                   right_->equal(*o.right_);
    }
    return false;
}

std::vector<Diagnostic> validate(const ProfileSystem &sys) {
    std::vector<Diagnostic> out;
    auto report = [&out](std::string code, std::string where, std::string msg) {
        out.push_back(Diagnostic{std::move(code), std::move(where), std::move(msg)});
    };

    if (sys.agents.empty()) report("empty-agent-set", "system", "at least one agent is required");
    std::set<std::string> agent_set(sys.agents.begin(), sys.agents.end());
    if (agent_set.size() != sys.agents.size())
        report("duplicate-agent", "system", "an agent is declared twice");

    std::set<std::string> param_set;
    for (const auto &[p, lo] : sys.params) {
        (void)lo;
        if (p == "n") report("reserved-name", "system", "'n' cannot be a parameter");
        if (!param_set.insert(p).second)
            report("duplicate-param", "system", "parameter '" + p + "' is declared twice");
    }

    std::set<std::string> def_names;
    for (const auto &[name, def] : sys.defs) {
        (void)def;
        if (!def_names.insert(name).second)
            report("duplicate-def", name, "definition '" + name + "' appears twice");
    }

    auto check_ref = [&](const std::string &where, const Ref &ref) {
        if (!def_names.count(ref.target))
            report("dangling-ref", where, "reference to undefined '" + ref.target + "'");
        if (ref.shift < 0)
            report("negative-shift", where, "shift " + std::to_string(ref.shift) + " is negative");
    };

    for (const auto &[name, def] : sys.defs) {
        if (const auto *node = std::get_if<NodeDef>(&def)) {
            if (!agent_set.count(node->agent))
                report("undeclared-agent", name, "agent '" + node->agent + "' is not declared");
            check_ref(name, node->left);
            check_ref(name, node->right);
        } else {
            const auto &payoff = std::get<LeafDef>(def).payoff;
            for (const auto &a : sys.agents)
                if (!payoff.count(a))
                    report("utility-not-total", name, "no payoff for agent '" + a + "'");
            for (const auto &[a, expr] : payoff) {
                if (!agent_set.count(a))
                    report("unknown-agent-in-payoff", name, "agent '" + a + "' is not declared");
                for (const auto &[p, c] : expr.coeff_param) {
                    if (c != 0 && !param_set.count(p))
                        report("undeclared-param", name, "parameter '" + p + "' is not declared");
                }
            }
        }
    }

    if (!def_names.count(sys.root_def))
        report("dangling-root", "system", "root '" + sys.root_def + "' is not defined");
    if (sys.root_n < 0)
        report("negative-root-n", "system", "root step " + std::to_string(sys.root_n) + " is negative");
    return out;
}

namespace {

UnrolledPtr unroll_def(const ProfileSystem &sys, const std::string &name, long long n, int depth,
                       const ParamValues &params) {
    const ProfileDef *def = sys.find(name);
    if (const auto *leaf = std::get_if<LeafDef>(def)) {
        Payoff payoff;
        for (const auto &[a, expr] : leaf->payoff) payoff[a] = expr.eval(n, params);
        return Unrolled::leaf(std::move(payoff));
    }
    const auto &node = std::get<NodeDef>(*def);
    if (depth == 0) return Unrolled::hole(name, n);
    return Unrolled::node(node.agent, node.choice,
                          unroll_def(sys, node.left.target, n + node.left.shift, depth - 1, params),
                          unroll_def(sys, node.right.target, n + node.right.shift, depth - 1, params));
}

}  // namespace

UnrolledPtr unroll(const ProfileInstance &inst, int depth, const ParamValues &params) {
    return unroll_def(*inst.system, inst.def, inst.n_value(), depth, params);
}

FiniteProfilePtr fill_holes(const UnrolledPtr &tree, const Payoff &padding) {
    switch (tree->kind()) {
        case Unrolled::Kind::Hole:
            return FiniteProfile::leaf(padding);
        case Unrolled::Kind::Leaf:
            return FiniteProfile::leaf(tree->payoff());
        case Unrolled::Kind::Node:
            return FiniteProfile::node(tree->agent(), tree->choice(),
                                       fill_holes(tree->left(), padding),
                                       fill_holes(tree->right(), padding));
    }
    return nullptr;
}

namespace {

// Set of step offsets seen for one definition pair.  Kept explicit while
// small; pairs revisited with ever-new offsets (drifting cycles) collapse
// into an arithmetic progression identified by a representative offset and
// the gcd of all observed differences.
struct OffsetSet {
    std::set<long long> seen;
    bool widened = false;
    long long base = 0;
    long long modulus = 0;

    static constexpr std::size_t widen_limit = 8;

    bool contains(long long d) const {
        if (!widened) return seen.count(d) != 0;
        long long diff = d - base;
        return modulus == 0 ? diff == 0 : diff % modulus == 0;
    }

    // Returns true if the set changed (the pair needs re-expansion).
    bool add(long long d) {
        if (contains(d)) return false;
        if (!widened) {
            seen.insert(d);
            if (seen.size() <= widen_limit) return true;
            widened = true;
            base = *seen.begin();
            modulus = 0;
            for (long long x : seen) modulus = std::gcd(modulus, x - base);
            seen.clear();
            return true;
        }
        modulus = std::gcd(modulus, d - base);
        return true;
    }
};

// f(n) == g(n + delta) as an identity of affine expressions.
bool leaf_expr_matches(const AffineExpr &f, const AffineExpr &g, long long delta) {
    return f.coeff_n == g.coeff_n && f.coeff_param == g.coeff_param &&
           f.constant == g.constant + g.coeff_n * delta;
}

bool leaf_matches(const UtilityFn &f, const UtilityFn &g, const OffsetSet &offsets) {
    if (f.size() != g.size()) return false;
    for (const auto &[agent, fe] : f) {
        auto it = g.find(agent);
        if (it == g.end()) return false;
        const AffineExpr &ge = it->second;
        if (!offsets.widened) {
            for (long long d : offsets.seen)
                if (!leaf_expr_matches(fe, ge, d)) return false;
        } else {
            // Along the whole progression: the step coefficient must be
            // insensitive to the modulus, plus equality at the representative.
            if (ge.coeff_n * offsets.modulus != 0) return false;
            if (!leaf_expr_matches(fe, ge, offsets.base)) return false;
        }
    }
    return true;
}

}  // namespace

bool bisimilar(const ProfileInstance &a, const ProfileInstance &b) {
    const ProfileSystem &sa = *a.system;
    const ProfileSystem &sb = *b.system;
    if (std::set<std::string>(sa.agents.begin(), sa.agents.end()) !=
        std::set<std::string>(sb.agents.begin(), sb.agents.end()))
        throw AgentMismatchError();

    long long start_offset = 0;
    if (a.concrete() != b.concrete()) return false;
    if (a.concrete()) start_offset = b.n_value() - a.n_value();

    std::map<std::pair<std::string, std::string>, OffsetSet> pairs;
    std::vector<std::pair<std::string, std::string>> work;

    auto claim = [&](const std::string &d1, const std::string &d2, long long delta) {
        auto &set = pairs[{d1, d2}];
        if (set.add(delta)) work.push_back({d1, d2});
    };

    claim(a.def, b.def, start_offset);
    while (!work.empty()) {
        auto [d1, d2] = work.back();
        work.pop_back();
        // Snapshot: expanding this pair may add offsets to its own set.
        const OffsetSet offsets = pairs[{d1, d2}];
        const ProfileDef *p1 = sa.find(d1);
        const ProfileDef *p2 = sb.find(d2);
        const auto *n1 = std::get_if<NodeDef>(p1);
        const auto *n2 = std::get_if<NodeDef>(p2);
        if ((n1 == nullptr) != (n2 == nullptr)) return false;
        if (!n1) {
            if (!leaf_matches(std::get<LeafDef>(*p1).payoff, std::get<LeafDef>(*p2).payoff, offsets))
                return false;
            continue;
        }
        if (n1->agent != n2->agent || n1->choice != n2->choice) return false;
        // Propagate every offset of this pair into the child pairs.
        auto push_children = [&](long long d) {
            claim(n1->left.target, n2->left.target, d + n2->left.shift - n1->left.shift);
            claim(n1->right.target, n2->right.target, d + n2->right.shift - n1->right.shift);
        };
        if (!offsets.widened) {
            for (long long d : offsets.seen) push_children(d);
        } else {
            push_children(offsets.base);
            if (offsets.modulus != 0) push_children(offsets.base + offsets.modulus);
        }
    }
    return true;
}

}  // namespace stratprof
