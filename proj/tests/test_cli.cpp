#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "cli_runner.hpp"
#include "json.hpp"

using stratprof::testing::game;
using stratprof::testing::run_cli;

TEST_CASE("exit codes cover certified, refuted, bounded and input errors") {
    CHECK(run_cli("dollar report --v 2").exit_code == 0);
    CHECK(run_cli("check nash " + game("dolAsBs.game") + " --n 0 --param v=2").exit_code == 1);
    CHECK(run_cli("check nash " + game("dolAsBs.game") + " --n 0 --param v=1").exit_code == 2);
    CHECK(run_cli("check sgpe " + game("missing.game")).exit_code == 3);
    CHECK(run_cli("check sgpe " + game("dolAcBs.game") + " --frobnicate").exit_code == 3);
}

TEST_CASE("symbolic subgame-perfection through the command line") {
    auto certified = run_cli("check sgpe " + game("dolAcBs.game"));
    CHECK(certified.exit_code == 0);
    CHECK(certified.output.find("certified") != std::string::npos);
    CHECK(certified.output.find("v - 1") != std::string::npos);

    auto refuted = run_cli("check sgpe " + game("dolAsBs.game"));
    CHECK(refuted.exit_code == 1);
    CHECK(refuted.output.find("dolAsBs") != std::string::npos);

    auto diverging = run_cli("check sgpe " + game("diverging.game"));
    CHECK(diverging.exit_code == 1);
    CHECK(diverging.output.find("never reaches a leaf") != std::string::npos);
}

TEST_CASE("utility evaluation through the command line") {
    auto symbolic = run_cli("eval " + game("dolAsBc.game") + " --agent Bob");
    CHECK(symbolic.exit_code == 0);
    CHECK(symbolic.output.find("utility(Bob) = n") != std::string::npos);

    auto concrete = run_cli("eval " + game("s0.game") + " --agent Alice --n 0");
    CHECK(concrete.exit_code == 0);
    CHECK(concrete.output.find("utility(Alice) = 2") != std::string::npos);

    auto diverging = run_cli("eval " + game("diverging.game") + " --agent Alice");
    CHECK(diverging.exit_code == 1);
    CHECK(diverging.output.find("diverges") != std::string::npos);

    CHECK(run_cli("eval " + game("s0.game") + " --agent Carol").exit_code == 3);
}

TEST_CASE("the stock trees print their equations and verdicts") {
    auto zig = run_cli("trees zig");
    CHECK(zig.exit_code == 0);
    CHECK(zig.output.find("infinite: true") != std::string::npos);
    CHECK(zig.output.find("zig = nil . zag") != std::string::npos);
    CHECK(run_cli("trees backbone").output.find("infinite: true") != std::string::npos);
    CHECK(run_cli("trees escalator").exit_code == 3);
}

TEST_CASE("unrolling renders holes and respects the depth") {
    std::string dot_path = "cli_test_unroll.dot";
    auto res = run_cli("unroll " + game("dolAcBs.game") + " --depth 2 --param v=2 --dot " + dot_path);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("hole(dolAcBs,1)") != std::string::npos);

    std::ifstream in(dot_path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string dot = buf.str();
    std::remove(dot_path.c_str());

    // depth-2 expansion of the bidding game: 2 nodes, 2 leaves, 1 hole
    int labels = 0;
    for (std::size_t at = dot.find("label="); at != std::string::npos;
         at = dot.find("label=", at + 1))
        ++labels;
    CHECK(labels == 5);
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("penwidth=2.0") != std::string::npos);

    auto missing_param = run_cli("unroll " + game("dolAcBs.game") + " --depth 2");
    CHECK(missing_param.exit_code == 3);
}

TEST_CASE("padding turns an unrolling into a finite profile") {
    std::string pad_path = "cli_test_pad.leaf";
    {
        std::ofstream out(pad_path);
        out << "leaf { Alice: 4, Bob: 2 }\n";
    }
    auto res = run_cli("unroll " + game("dolAsBs.game") + " --depth 4 --param v=2 --pad " + pad_path);
    std::remove(pad_path.c_str());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("hole") == std::string::npos);
    CHECK(res.output.find("Alice:4") != std::string::npos);
}

TEST_CASE("the bundled report in both renderings") {
    auto text = run_cli("dollar report --v 2");
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("dolAcBs: sgpe-certified") != std::string::npos);
    CHECK(text.output.find("dolAsBc: sgpe-certified") != std::string::npos);
    CHECK(text.output.find("dolAsBs: not-nash") != std::string::npos);

    auto machine = run_cli("dollar report --v 2 --json");
    CHECK(machine.exit_code == 0);
    auto j = nlohmann::json::parse(machine.output);
    CHECK(j["v"] == 2);
    CHECK(j["profiles"].size() == 3);
    CHECK(j["profiles"][2]["verdict"] == "not-nash");

    CHECK(run_cli("dollar report --v 1").exit_code == 2);
    CHECK(run_cli("dollar report --v 0").exit_code == 3);
}

TEST_CASE("identical invocations give identical output") {
    auto a = run_cli("check sgpe " + game("dolAcBs.game"));
    auto b = run_cli("check sgpe " + game("dolAcBs.game"));
    CHECK(a.output == b.output);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("negative steps and oversized literals are input errors") {
    CHECK(run_cli("check nash " + game("dolAsBs.game") + " --n -1 --param v=2").exit_code == 3);
    CHECK(run_cli("eval " + game("s0.game") + " --agent Alice --n -5").exit_code == 3);
}
