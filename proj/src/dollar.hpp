#pragma once

#include <string>

#include "equilibria.hpp"
#include "finite_oracle.hpp"
#include "profiles.hpp"
#include "json.hpp"

namespace stratprof {

// The three escalation-game profile families, named by who keeps bidding:
// AsBs  both give up at every turn, AsBc  Alice gives up and Bob bids,
// AcBs  Alice bids and Bob gives up.
enum class DollarProfile { AsBs, AsBc, AcBs };

struct DollarConfig {
    long long v_lower = 1;  // declared lower bound for the object value v
};

// The bidding game with recorded choices, as a four-definition system:
//
//   d(n) = Node(Alice, cA, Node(Bob, cB, d(n+1), [n+1, v+n]), [v+n, n])
//
// where [x, y] is the leaf paying Alice x and Bob y, read as costs (lower is
// better).  Stopping costs the stopper the object value plus the bids sunk
// so far; the winner pays only the sunk bids.
ProfileSystem build_profile(DollarProfile which, const DollarConfig &cfg = {});

std::string dollar_profile_name(DollarProfile which);

// One profile's verdict inside the report.
struct DollarVerdict {
    std::string profile;
    std::string verdict;  // "sgpe-certified" | "not-nash" | "unresolved"
    std::optional<SgpeOutcome> certificate;
    std::optional<DeviationWitness> witness;
    std::optional<SgpeOutcome> sgpe_refutation;  // for the not-nash profile
};

// The three headline results in one structure, plus a finite cross-check:
// the two one-sided profiles are certified for every n >= 0 and v >= 1, the
// both-stop profile has a concrete profitable deviation at the given v, and
// a truncation of the game solved by backward induction shows what the
// finite restriction recommends at the root.
struct EscalationReport {
    long long v = 0;
    std::string convention = "utilities are costs; lower is better";
    std::vector<DollarVerdict> profiles;
    int truncation_depth = 0;
    int truncation_solutions = 0;
    bool truncation_root_stops = false;   // every solution stops at the root
    bool truncation_all_stop_solution = false;  // some solution stops everywhere
};

// Runs the checks.  v >= 2 gives the full contrast; v == 1 leaves the
// both-stop profile unresolved because the deviation is not strict there.
EscalationReport escalation_report(long long v);

std::string render_text(const EscalationReport &report);
nlohmann::json render_json(const EscalationReport &report);

}  // namespace stratprof
