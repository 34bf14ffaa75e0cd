#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace stratprof::testing {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

// Runs the installed command line against the given arguments.
inline CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(STRATPROF_CLI_PATH) + " " + args + " 2>&1";
    CliResult result;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

inline std::string game(const std::string &name) {
    return std::string(STRATPROF_GAMES_DIR) + "/" + name;
}

}  // namespace stratprof::testing
