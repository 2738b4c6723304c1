#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace clitest {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

inline std::string cli_binary() {
    const char* p = std::getenv("JORDET_CLI_BIN");
    if (!p) throw std::runtime_error("JORDET_CLI_BIN not set");
    return p;
}

/// Runs the CLI with the given argument string, capturing stdout+stderr.
/// An optional environment prefix ("VAR=value") is prepended.
inline RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = (env_prefix.empty() ? "" : env_prefix + " ") + cli_binary() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    RunResult res;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

} // namespace clitest
