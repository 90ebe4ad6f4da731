#pragma once

// Helpers for driving the built command-line binary from tests: a scratch
// directory, fixture writing, and subprocess capture of stdout/stderr plus
// the exit code. MWCAU_CLI_PATH is injected as a compile definition.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace cliharness {

inline std::string scratch_dir() {
    static std::string dir = [] {
        std::string d = ::testing::TempDir() + "mwcau_cli_" + std::to_string(::getpid());
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string write_fixture(const std::string& name, const std::string& text) {
    std::string path = scratch_dir() + "/" + name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

inline CliRun run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = scratch_dir() + "/stdout" + std::to_string(counter) + ".txt";
    std::string err_path = scratch_dir() + "/stderr" + std::to_string(counter) + ".txt";
    ++counter;
    std::string cmd =
        std::string("\"") + MWCAU_CLI_PATH + "\" " + args + " > " + out_path + " 2> " + err_path;
    int rc = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

// Benchmark outputs are deterministic except for wall-clock fields.
inline std::string strip_timing(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("wall_seconds") == std::string::npos) out += line + "\n";
    return out;
}

}  // namespace cliharness
