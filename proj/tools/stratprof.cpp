#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dollar.hpp"
#include "dot.hpp"
#include "dsl.hpp"
#include "equilibria.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "finite_oracle.hpp"
#include "lazy_trees.hpp"
#include "profiles.hpp"

namespace {

// Exit codes: 0 property holds/certified, 1 refuted, 2 bounded or unknown,
// 3 input error.
constexpr int kHolds = 0;
constexpr int kRefuted = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

stratprof::ProfileSystem load_system(const std::string &path) {
    try {
        return stratprof::parse_validated(slurp(path));
    } catch (const stratprof::ParseError &e) {
        throw InputError(path + ": " + e.what());
    }
}

stratprof::ParamValues parse_params(const std::vector<std::string> &raw) {
    stratprof::ParamValues params;
    for (const auto &entry : raw) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InputError("--param expects NAME=INT, got '" + entry + "'");
        try {
            params[entry.substr(0, eq)] = std::stoll(entry.substr(eq + 1));
        } catch (const std::exception &) {
            throw InputError("--param expects NAME=INT, got '" + entry + "'");
        }
    }
    return params;
}

stratprof::PrefOrder parse_pref(const std::string &pref) {
    if (pref == "lo") return stratprof::PrefOrder::LowerIsBetter;
    if (pref == "hi") return stratprof::PrefOrder::HigherIsBetter;
    throw InputError("--pref expects 'lo' or 'hi'");
}

int run_sgpe(const std::string &file, const std::string &pref_text) {
    using namespace stratprof;
    ProfileSystem sys = load_system(file);
    SgpeOutcome outcome = check_sgpe(sys, parse_pref(pref_text));
    if (outcome.certified) {
        std::cout << "certified: subgame perfect for every n >= 0\n";
        for (const auto &[def, claim] : outcome.claims) {
            if (!claim.inequality) {
                std::cout << "  " << def << ": leaf\n";
                continue;
            }
            const auto &iq = *claim.inequality;
            std::cout << "  " << def << ": " << iq.agent << " picks " << choice_letter(iq.choice)
                      << ", margin " << iq.margin.to_string() << " >= 0\n";
        }
        return kHolds;
    }
    if (outcome.diverging_def) {
        std::cout << "refuted: play from '" << *outcome.diverging_def
                  << "' never reaches a leaf\n";
        return kRefuted;
    }
    std::cout << "refuted: definition '" << *outcome.first_retracted << "' fails";
    if (outcome.witness) {
        std::cout << " at n=" << outcome.witness->n;
        for (const auto &[p, v] : outcome.witness->params) std::cout << ", " << p << "=" << v;
    }
    std::cout << "\n";
    return kRefuted;
}

int run_nash(const std::string &file, long long n, const std::vector<std::string> &raw_params,
             std::optional<int> depth, const std::string &pref_text) {
    using namespace stratprof;
    if (n < 0) throw InputError("--n must be nonnegative");
    ProfileSystem sys = load_system(file);
    ParamValues params = parse_params(raw_params);
    ProfileInstance inst{&sys, sys.root_def, n};
    int bound = depth.value_or(default_nash_depth(sys));
    NashVerdict verdict;
    try {
        verdict = check_nash(inst, parse_pref(pref_text), bound, params);
    } catch (const InvalidBoundError &e) {
        throw InputError(e.what());
    }
    switch (verdict.kind) {
        case NashVerdict::Kind::VacuouslyNash:
            std::cout << "vacuously a Nash equilibrium: the play never reaches a leaf\n";
            return kHolds;
        case NashVerdict::Kind::NashUpToDepth:
            std::cout << "no profitable deviation within depth " << bound
                      << " (bounded verdict, not a proof)\n";
            return kUnknown;
        case NashVerdict::Kind::NotNash: {
            const DeviationWitness &w = *verdict.witness;
            std::cout << "not a Nash equilibrium: " << w.agent << " improves "
                      << w.original_utility << " -> " << w.deviation_utility << " via";
            for (const auto &e : w.edits)
                std::cout << " [" << e.def << " level " << e.level << " -> "
                          << choice_letter(e.new_choice) << "]";
            std::cout << "\n";
            return kRefuted;
        }
    }
    return kInputError;
}

int run_eval(const std::string &file, const std::string &agent, std::optional<long long> n,
             const std::vector<std::string> &raw_params) {
    using namespace stratprof;
    if (n && *n < 0) throw InputError("--n must be nonnegative");
    ProfileSystem sys = load_system(file);
    ParamValues params = parse_params(raw_params);
    ProfileInstance inst{&sys, sys.root_def, ForAllN{0}};
    if (n) inst.n = *n;
    UtilityResult result = [&] {
        try {
            return utility(inst, agent);
        } catch (const AgentUnknownError &e) {
            throw InputError(e.what());
        }
    }();
    if (!result.defined()) {
        std::cout << "diverges: the play never reaches a leaf\n";
        return kRefuted;
    }
    AffineExpr expr = result.expr();
    // Substitute whatever parameter values were given.
    for (const auto &[p, v] : params) {
        auto it = expr.coeff_param.find(p);
        if (it == expr.coeff_param.end()) continue;
        expr.constant += it->second * v;
        expr.coeff_param.erase(it);
    }
    std::cout << "utility(" << agent << ") = " << expr.to_string() << "\n";
    return kHolds;
}

int run_unroll(const std::string &file, int depth, const std::string &dot_path,
               const std::string &pad_path, const std::vector<std::string> &raw_params) {
    using namespace stratprof;
    ProfileSystem sys = load_system(file);
    ParamValues params = parse_params(raw_params);
    if (depth < 0) throw InputError("--depth must be nonnegative");
    UnrolledPtr tree = unroll(root_instance(sys), depth, params);
    std::string dot;
    if (!pad_path.empty()) {
        Payoff padding = [&] {
            try {
                return parse_padding(slurp(pad_path), params);
            } catch (const ParseError &e) {
                throw InputError(pad_path + ": " + e.what());
            }
        }();
        FiniteProfilePtr filled = fill_holes(tree, padding);
        std::cout << filled->to_string() << "\n";
        dot = render_dot(filled);
    } else {
        std::cout << tree->to_string() << "\n";
        dot = render_dot(tree);
    }
    if (!dot_path.empty()) {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out) throw InputError("cannot write '" + dot_path + "'");
        out << dot;
    }
    return kHolds;
}

int run_trees(const std::string &which) {
    using namespace stratprof;
    BuiltinTree tree;
    if (which == "zig")
        tree = BuiltinTree::Zig;
    else if (which == "zag")
        tree = BuiltinTree::Zag;
    else if (which == "backbone")
        tree = BuiltinTree::Backbone;
    else
        throw InputError("expected zig, zag or backbone");
    LazyTreeSystem sys = builtin_tree(tree);
    InfiniteVerdict verdict = is_infinite(sys);
    for (const auto &[name, def] : sys.defs) {
        std::cout << name << " = ";
        if (def.nil)
            std::cout << "nil";
        else
            std::cout << def.left << " . " << def.right;
        std::cout << "\n";
    }
    std::cout << "infinite: " << (verdict.root_infinite ? "true" : "false") << "\n";
    return verdict.root_infinite ? kHolds : kRefuted;
}

int run_dollar(long long v, bool as_json) {
    using namespace stratprof;
    if (v < 1) throw InputError("--v must be at least 1");
    EscalationReport report = escalation_report(v);
    if (as_json)
        std::cout << render_json(report).dump(2) << "\n";
    else
        std::cout << render_text(report);
    bool certified = true, refuted_asbs = false;
    for (const auto &p : report.profiles) {
        if (p.profile == "dolAsBs")
            refuted_asbs = p.verdict == "not-nash";
        else
            certified = certified && p.verdict == "sgpe-certified";
    }
    if (certified && refuted_asbs) return kHolds;
    return kUnknown;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"equilibrium checks for finite and infinite binary strategy profiles"};
    app.require_subcommand(1);

    // check sgpe / check nash
    auto *check = app.add_subcommand("check", "decide an equilibrium property of a game file");
    check->require_subcommand(1);

    std::string sgpe_file, sgpe_pref = "lo";
    auto *sgpe = check->add_subcommand("sgpe", "symbolic subgame-perfection check");
    sgpe->add_option("file", sgpe_file, "game file")->required();
    sgpe->add_option("--pref", sgpe_pref, "utility order: lo (costs) or hi (payoffs)");

    std::string nash_file, nash_pref = "lo";
    long long nash_n = 0;
    std::optional<int> nash_depth;
    std::vector<std::string> nash_params;
    auto *nash = check->add_subcommand("nash", "bounded deviation search at a concrete step");
    nash->add_option("file", nash_file, "game file")->required();
    nash->add_option("--n", nash_n, "step value of the root instance")->required();
    nash->add_option("--param", nash_params, "parameter value NAME=INT (repeatable)");
    nash->add_option("--depth", nash_depth, "search depth bound (default 4x definitions)");
    nash->add_option("--pref", nash_pref, "utility order: lo or hi");

    std::string eval_file, eval_agent;
    std::optional<long long> eval_n;
    std::vector<std::string> eval_params;
    auto *eval = app.add_subcommand("eval", "utility of an agent along the realized play");
    eval->add_option("file", eval_file, "game file")->required();
    eval->add_option("--agent", eval_agent, "agent name")->required();
    eval->add_option("--n", eval_n, "concrete step (omit for symbolic n)");
    eval->add_option("--param", eval_params, "parameter value NAME=INT (repeatable)");

    std::string unroll_file, unroll_dot, unroll_pad;
    int unroll_depth = 0;
    std::vector<std::string> unroll_params;
    auto *unroll_cmd = app.add_subcommand("unroll", "expand finitely many layers of the tree");
    unroll_cmd->add_option("file", unroll_file, "game file")->required();
    unroll_cmd->add_option("--depth", unroll_depth, "layers to expand")->required();
    unroll_cmd->add_option("--dot", unroll_dot, "write a Graphviz rendering here");
    unroll_cmd->add_option("--pad", unroll_pad, "close holes with this leaf file");
    unroll_cmd->add_option("--param", unroll_params, "parameter value NAME=INT (repeatable)");

    std::string trees_which;
    auto *trees = app.add_subcommand("trees", "the stock lazy binary trees and their infiniteness");
    trees->add_option("which", trees_which, "zig, zag or backbone")->required();

    auto *dollar = app.add_subcommand("dollar", "the bidding game bundled with the tool");
    dollar->require_subcommand(1);
    long long dollar_v = 2;
    bool dollar_json = false;
    auto *dollar_report = dollar->add_subcommand("report", "check all three stock profiles");
    dollar_report->add_option("--v", dollar_v, "object value")->required();
    dollar_report->add_flag("--json", dollar_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (sgpe->parsed()) return run_sgpe(sgpe_file, sgpe_pref);
        if (nash->parsed()) return run_nash(nash_file, nash_n, nash_params, nash_depth, nash_pref);
        if (eval->parsed()) return run_eval(eval_file, eval_agent, eval_n, eval_params);
        if (unroll_cmd->parsed())
            return run_unroll(unroll_file, unroll_depth, unroll_dot, unroll_pad, unroll_params);
        if (trees->parsed()) return run_trees(trees_which);
        if (dollar_report->parsed()) return run_dollar(dollar_v, dollar_json);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const stratprof::ParamUnboundError &e) {
        std::cerr << "error: " << e.what() << " (use --param " << e.param << "=...)\n";
        return kInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
