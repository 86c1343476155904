#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eisgeo {

enum class OutputFormat { json, csv, text };

struct RunConfig {
    std::string command;
    std::string D = "3";
    long p = 0;
    int character = 0; // index among the totally odd characters
    std::optional<long> r;
    long N = 30;
    std::string algorithm = "cycle"; // cycle, enum, both
    std::string precision = "double"; // double, extended
    std::optional<std::filesystem::path> cache_dir;
    bool no_cache = false;
    OutputFormat format = OutputFormat::json;
    int threads = 1;
    std::string form; // "a,b,c" for intersect
    long n = 1;       // Hecke index for intersect
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitDomain = 3;

int run(const RunConfig& config, std::ostream& out, std::ostream& err);
// parse argv (without the program name handling done by the caller) and run
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace eisgeo
