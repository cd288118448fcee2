#pragma once

// Runs the CLI through the shell and captures stdout, stderr and exit status.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli_run {

struct Result {
    int status = -1;
    std::string out;
    std::string err;
};

inline std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("conics_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Result run(const std::string& args) {
    const auto err_path = scratch_dir() / "stderr.txt";
    const std::string cmd = std::string("'") + CONICS_CLI_PATH + "' " + args + " 2>'" + err_path.string() + "'";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.err = slurp(err_path);
    return r;
}

} // namespace cli_run
