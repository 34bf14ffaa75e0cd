#include "dollar.hpp"

#include <sstream>

namespace stratprof {

std::string dollar_profile_name(DollarProfile which) {
    switch (which) {
        case DollarProfile::AsBs: return "dolAsBs";
        case DollarProfile::AsBc: return "dolAsBc";
        case DollarProfile::AcBs: return "dolAcBs";
    }
    return {};
}

ProfileSystem build_profile(DollarProfile which, const DollarConfig &cfg) {
    long long v_lower = cfg.v_lower < 1 ? 1 : cfg.v_lower;  // the object has value
    Choice alice = which == DollarProfile::AcBs ? Choice::Left : Choice::Right;
    Choice bob = which == DollarProfile::AsBc ? Choice::Left : Choice::Right;
    std::string name = dollar_profile_name(which);
    std::string bob_name = name + "_bob";

    AffineExpr n = AffineExpr::step();
    AffineExpr v = AffineExpr::param("v");
    AffineExpr one = AffineExpr::number(1);

    ProfileSystem sys;
    sys.agents = {"Alice", "Bob"};
    sys.params = {{"v", v_lower}};
    sys.defs.push_back({name, NodeDef{"Alice", alice, Ref{bob_name, 0}, Ref{"stop_alice", 0}}});
    sys.defs.push_back({bob_name, NodeDef{"Bob", bob, Ref{name, 1}, Ref{"stop_bob", 0}}});
    sys.defs.push_back({"stop_alice", LeafDef{UtilityFn{{"Alice", v + n}, {"Bob", n}}}});
    sys.defs.push_back({"stop_bob", LeafDef{UtilityFn{{"Alice", n + one}, {"Bob", v + n}}}});
    sys.root_def = name;
    sys.root_n = 0;
    return sys;
}

EscalationReport escalation_report(long long v) {
    EscalationReport report;
    report.v = v;

    // The two one-sided profiles: certified symbolically, for every n and
    // every object value at or above 1 at once.
    for (DollarProfile which : {DollarProfile::AcBs, DollarProfile::AsBc}) {
        ProfileSystem sys = build_profile(which, DollarConfig{1});
        DollarVerdict verdict;
        verdict.profile = dollar_profile_name(which);
        SgpeOutcome outcome = check_sgpe(sys, PrefOrder::LowerIsBetter);
        verdict.verdict = outcome.certified ? "sgpe-certified" : "unresolved";
        verdict.certificate = std::move(outcome);
        report.profiles.push_back(std::move(verdict));
    }

    // The both-stop profile: concrete deviation search at n = 0.
    {
        ProfileSystem sys = build_profile(DollarProfile::AsBs, DollarConfig{1});
        DollarVerdict verdict;
        verdict.profile = dollar_profile_name(DollarProfile::AsBs);
        ParamValues params{{"v", v}};
        NashVerdict nash =
            check_nash(root_instance(sys), PrefOrder::LowerIsBetter, default_nash_depth(sys), params);
        if (nash.kind == NashVerdict::Kind::NotNash) {
            verdict.verdict = "not-nash";
            verdict.witness = nash.witness;
            verdict.sgpe_refutation = check_sgpe(sys, PrefOrder::LowerIsBetter);
        } else {
            verdict.verdict = "unresolved";
        }
        report.profiles.push_back(std::move(verdict));
    }

    // Finite restriction of the same game, solved exactly.
    {
        ProfileSystem sys = build_profile(DollarProfile::AsBs, DollarConfig{1});
        ParamValues params{{"v", v}};
        report.truncation_depth = 4;
        // Padding: the cut subgame replaced by its own realized outcome under
        // both-stop (the next bidder gives up at the cut level).
        long long cut_n = report.truncation_depth / 2;
        Payoff padding{{"Alice", v + cut_n}, {"Bob", cut_n}};
        FiniteProfilePtr truncated = truncate(sys, TruncationPolicy{report.truncation_depth, padding}, params);
        auto solutions = backward_induction(*truncated, PrefOrder::LowerIsBetter);
        report.truncation_solutions = static_cast<int>(solutions.size());
        report.truncation_root_stops = !solutions.empty();
        for (const auto &sol : solutions) {
            if (sol->choice() != Choice::Right) report.truncation_root_stops = false;
            bool all_stop = true;
            for (const FiniteProfile *cur = sol.get(); !cur->is_leaf();
                 cur = cur->child(Choice::Left).get())
                if (cur->choice() != Choice::Right) all_stop = false;
            if (all_stop) report.truncation_all_stop_solution = true;
        }
    }
    return report;
}

namespace {

void render_claims(std::ostringstream &out, const SgpeOutcome &outcome) {
    for (const auto &[def, claim] : outcome.claims) {
        if (!claim.inequality) {
            out << "    " << def << ": leaf\n";
            continue;
        }
        const NodeInequality &iq = *claim.inequality;
        out << "    " << def << ": " << iq.agent << " picks " << choice_letter(iq.choice)
            << ", chosen " << iq.chosen_utility.to_string() << " vs other "
            << iq.other_utility.to_string() << ", margin " << iq.margin.to_string();
        switch (claim.status) {
            case SgpeClaim::Status::Holds:
                out << " >= 0 for all n >= 0\n";
                break;
            case SgpeClaim::Status::RefutedLocally:
                out << " < 0 at n=" << claim.witness->n;
                for (const auto &[p, val] : claim.witness->params) out << ", " << p << "=" << val;
                out << "\n";
                break;
            case SgpeClaim::Status::ChildRetracted:
                out << " (child " << *claim.retracted_child << " retracted)\n";
                break;
        }
    }
}

}  // namespace

std::string render_text(const EscalationReport &report) {
    std::ostringstream out;
    out << "dollar auction, object value v = " << report.v << " (" << report.convention << ")\n";
    for (const auto &verdict : report.profiles) {
        out << "  " << verdict.profile << ": " << verdict.verdict;
        if (verdict.verdict == "unresolved" && report.v < 2)
            out << " (requires v > 1)";
        out << "\n";
        if (verdict.certificate && verdict.certificate->certified)
            render_claims(out, *verdict.certificate);
        if (verdict.witness) {
            const DeviationWitness &w = *verdict.witness;
            out << "    " << w.agent << " deviates: utility " << w.deviation_utility
                << " beats " << w.original_utility << " via";
            for (const auto &e : w.edits)
                out << " [" << e.def << " level " << e.level << " -> " << choice_letter(e.new_choice)
                    << "]";
            out << "\n";
        }
        if (verdict.sgpe_refutation && !verdict.sgpe_refutation->certified) {
            out << "    hence not subgame perfect; first retracted definition: "
                << verdict.sgpe_refutation->first_retracted.value_or("(none)") << "\n";
        }
    }
    out << "  finite restriction (depth " << report.truncation_depth
        << "): " << report.truncation_solutions << " backward-induction solution(s); "
        << (report.truncation_root_stops ? "the first bidder gives up at the root"
                                         : "the first bidder bids at the root")
        << "; a solution stopping everywhere "
        << (report.truncation_all_stop_solution ? "exists" : "does not exist") << "\n";
    return out.str();
}

namespace {

nlohmann::json claims_json(const SgpeOutcome &outcome) {
    nlohmann::json claims = nlohmann::json::array();
    for (const auto &[def, claim] : outcome.claims) {
        nlohmann::json c;
        c["def"] = def;
        switch (claim.status) {
            case SgpeClaim::Status::Holds: c["status"] = "holds"; break;
            case SgpeClaim::Status::RefutedLocally: c["status"] = "refuted"; break;
            case SgpeClaim::Status::ChildRetracted: c["status"] = "child-retracted"; break;
        }
        if (claim.inequality) {
            c["agent"] = claim.inequality->agent;
            c["choice"] = std::string(1, choice_letter(claim.inequality->choice));
            c["chosen"] = claim.inequality->chosen_utility.to_string();
            c["other"] = claim.inequality->other_utility.to_string();
            c["margin"] = claim.inequality->margin.to_string();
        }
        if (claim.witness) {
            c["witness_n"] = claim.witness->n;
            for (const auto &[p, val] : claim.witness->params) c["witness_" + p] = val;
        }
        claims.push_back(std::move(c));
    }
    return claims;
}

}  // namespace

nlohmann::json render_json(const EscalationReport &report) {
    nlohmann::json j;
    j["v"] = report.v;
    j["convention"] = report.convention;
    j["profiles"] = nlohmann::json::array();
    for (const auto &verdict : report.profiles) {
        nlohmann::json p;
        p["profile"] = verdict.profile;
        p["verdict"] = verdict.verdict;
        if (verdict.certificate && verdict.certificate->certified)
            p["certificate"] = claims_json(*verdict.certificate);
        if (verdict.witness) {
            nlohmann::json w;
            w["agent"] = verdict.witness->agent;
            w["original_utility"] = verdict.witness->original_utility;
            w["deviation_utility"] = verdict.witness->deviation_utility;
            w["edits"] = nlohmann::json::array();
            for (const auto &e : verdict.witness->edits)
                w["edits"].push_back({{"def", e.def},
                                      {"level", e.level},
                                      {"choice", std::string(1, choice_letter(e.new_choice))}});
            p["witness"] = std::move(w);
        }
        j["profiles"].push_back(std::move(p));
    }
    j["truncation"] = {{"depth", report.truncation_depth},
                       {"solutions", report.truncation_solutions},
                       {"root_stops", report.truncation_root_stops},
                       {"all_stop_solution", report.truncation_all_stop_solution}};
    return j;
}

}  // namespace stratprof
