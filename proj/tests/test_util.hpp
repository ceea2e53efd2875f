#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

// Runs through the shell, capturing stdout+stderr.
inline CmdResult run_cmd(const std::string& cmd) {
    CmdResult result;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string cli_path() {
    const char* env = std::getenv("SWCERT_CLI");
    return env ? env : "./tools/swcert";
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Fresh scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("swcert_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

inline const char* example1_config_json() {
    return R"({
  "matrices": [[[-0.24, 0.14], [-0.85, -0.89]], [[0.12, 1.12], [1.74, -1.48]]],
  "delta": 2,
  "Delta": 3
})";
}

inline const char* example2_config_json() {
    return R"({
  "matrices": [[[-0.92, 0.0], [0.0, 0.77]], [[1.24, 0.0], [0.0, 0.89]]],
  "delta": 2,
  "Delta": 3,
  "lambda": 0.001
})";
}

}  // namespace testutil
