#pragma once

// Runs the photonsim executable and reads the golden command list. Shared
// by the unit tests and the acceptance binary.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

struct Result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("photonsim_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string quote(const std::string &s) {
    std::string q = "'";
    for (char c : s) {
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return q + "'";
}

inline Result run(const std::vector<std::string> &args, const std::string &env = "") {
    static int counter = 0;
    auto dir = scratch_dir();
    auto out = dir / ("stdout_" + std::to_string(counter));
    auto err = dir / ("stderr_" + std::to_string(counter++));
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += quote(PHOTONSIM_CLI);
    for (const auto &a : args) {
        cmd += " " + quote(a);
    }
    cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
    int status = std::system(cmd.c_str());
    Result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

struct GoldenCase {
    std::string file;
    std::vector<std::string> args;
};

inline std::vector<GoldenCase> golden_cases() {
    std::ifstream f(std::filesystem::path(PHOTONSIM_GOLDEN_DIR) / "commands.txt");
    std::vector<GoldenCase> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ss(line);
        GoldenCase c;
        ss >> c.file;
        std::string a;
        while (ss >> a) {
            c.args.push_back(a);
        }
        out.push_back(c);
    }
    return out;
}

// Runs a golden case with --out and returns the file content.
inline Result run_to_file(const GoldenCase &c, const std::filesystem::path &path, std::string &content) {
    auto args = c.args;
    args.push_back("--out");
    args.push_back(path.string());
    auto r = run(args);
    content = slurp(path);
    return r;
}

}  // namespace cli
