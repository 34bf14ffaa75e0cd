#include <fstream>
#include <sstream>

#include "doctest.h"

#include "dollar.hpp"
#include "dsl.hpp"
#include "evaluation.hpp"

using namespace stratprof;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string games_dir() { return STRATPROF_GAMES_DIR; }

}  // namespace

TEST_CASE("a one-leaf document parses") {
    ProfileSystem sys = parse("agents A\ndef x(n) = leaf { A: 0 }\nroot x(0)\n");
    CHECK(sys.agents == std::vector<std::string>{"A"});
    REQUIRE(sys.defs.size() == 1);
    CHECK(std::holds_alternative<LeafDef>(sys.defs[0].second));
    CHECK(sys.root_def == "x");
    CHECK(validate(sys).empty());
}

TEST_CASE("the shipped bidding file denotes the built-in profile") {
    ProfileSystem parsed = parse_validated(read_file(games_dir() + "/dolAcBs.game"));
    ProfileSystem built = build_profile(DollarProfile::AcBs);
    CHECK(bisimilar(root_instance(parsed), root_instance(built)));
    CHECK(parsed == built);
}

TEST_CASE("negative shifts are rejected at parse time") {
    std::string doc = "agents A\ndef x(n) = node A l x(n-1) x(n)\nroot x(0)\n";
    CHECK_THROWS_AS(parse(doc), ParseError);
    try {
        parse(doc);
    } catch (const ParseError &e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("negative shift") != std::string::npos);
    }
}

TEST_CASE("syntax errors carry their position") {
    try {
        parse("agents A\ndef x(n) = node A q x(n) x(n)\nroot x(0)\n");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line == 2);
        CHECK(e.col > 1);
    }
}

TEST_CASE("validation diagnostics surface through parsing") {
    // undeclared agent
    CHECK_THROWS_AS(parse_validated("agents A\ndef x(n) = node B l x(n) x(n)\nroot x(0)\n"),
                    ParseError);
    // dangling reference
    CHECK_THROWS_AS(parse_validated("agents A\ndef x(n) = node A l y(n) x(n)\nroot x(0)\n"),
                    ParseError);
    // undeclared parameter
    CHECK_THROWS_AS(parse_validated("agents A\ndef x(n) = leaf { A: w }\nroot x(0)\n"), ParseError);
}

TEST_CASE("inline bodies become definitions of their own") {
    ProfileSystem sys = parse_validated(
        "agents A B\n"
        "def x(n) = node A l (node B r (leaf { A: 1, B: 2 }) x(n+1)) (leaf { A: 0, B: 0 })\n"
        "root x(0)\n");
    CHECK(sys.defs.size() == 4);
    CHECK(sys.find("x_l") != nullptr);
    CHECK(sys.find("x_l_l") != nullptr);
    CHECK(sys.find("x_r") != nullptr);
    const auto &node = std::get<NodeDef>(*sys.find("x"));
    CHECK(node.left.target == "x_l");
    CHECK(node.right.target == "x_r");
    // generated names dodge user-declared ones
    ProfileSystem clash = parse_validated(
        "agents A\n"
        "def x(n) = node A l (leaf { A: 1 }) x_l(n)\n"
        "def x_l(n) = leaf { A: 2 }\n"
        "root x(0)\n");
    CHECK(clash.find("x_l_") != nullptr);
    CHECK(std::get<NodeDef>(*clash.find("x")).left.target == "x_l_");
}

TEST_CASE("comments and blank lines are ignored") {
    ProfileSystem sys = parse(
        "# a tiny game\n"
        "agents A\n"
        "\n"
        "def x(n) = leaf { A: n + 1 }  # payoff grows with n\n"
        "root x(3)\n");
    CHECK(sys.root_n == 3);
    CHECK(utility(root_instance(sys), "A").expr() == AffineExpr::number(4));
}

TEST_CASE("printing is the inverse of parsing on normalized documents") {
    for (const std::string name :
         {"dolAsBs.game", "dolAsBc.game", "dolAcBs.game", "s0.game", "diverging.game"}) {
        std::string text = read_file(games_dir() + "/" + name);
        ProfileSystem sys = parse_validated(text);
        CHECK(print(sys) == text);
        CHECK(parse(print(sys)) == sys);
    }
    // built systems round-trip through their rendering too
    for (auto which : {DollarProfile::AsBs, DollarProfile::AsBc, DollarProfile::AcBs}) {
        ProfileSystem sys = build_profile(which);
        CHECK(parse(print(sys)) == sys);
    }
}

TEST_CASE("padding files hold a single concrete leaf") {
    Payoff pad = parse_padding("leaf { Alice: 4, Bob: 2 }\n", {});
    CHECK(pad == Payoff{{"Alice", 4}, {"Bob", 2}});
    Payoff with_param = parse_padding("leaf { Alice: v + 1, Bob: 0 }", {{"v", 3}});
    CHECK(with_param.at("Alice") == 4);
    CHECK_THROWS_AS(parse_padding("node A l x(n) x(n)", {}), ParseError);
}

TEST_CASE("oversized integer literals are parse errors") {
    CHECK_THROWS_AS(parse("agents A\ndef x(n) = leaf { A: 99999999999999999999999 }\nroot x(0)\n"),
                    ParseError);
}
