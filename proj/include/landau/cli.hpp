#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace landau::cli {

inline constexpr std::uint64_t kMaxX = 100'000'000;

struct RunConfig {
    std::string command;
    std::string field = "0,1";
    std::uint64_t X = 1000;
    // command parameters
    std::uint64_t q = 4;
    std::uint64_t a = 1;
    double alpha = 0.5;
    std::uint64_t k1 = 0;
    std::uint64_t k2 = 1;
    double eta = 0.5;
    int k = 2;
    double base = 2;
    double epsilon = 0.24;
    double M = 0;
    double mass = 0;
    int x0 = 1;
    double k_slack = 5.0;
    double y = 0;
    int n = 4;
    std::string kind = "L";
    std::string g = "1/t";
    std::string seq = "alternating";
    std::string f_table = "liouville";
    std::string g_table = "one";
    std::string op = "convolve";
    std::size_t sets = 20;
    std::size_t max_size = 50;
    std::uint64_t max_norm = 100;
    bool premass = false;
    std::string cache;
    // output
    std::string output_path;
    std::string format = "auto";  // auto, csv or json
    int threads = 0;              // 0 keeps the OpenMP default
    std::uint64_t seed = 1;
};

/// Parses `key = value` lines; '#' starts a comment. Throws InvalidArgument on a malformed line.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Runs one subcommand; args excludes the program name. Returns 0 on
/// success, 1 on a computation error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace landau::cli
