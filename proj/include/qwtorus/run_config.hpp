#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwtorus/enumeration.hpp"
#include "qwtorus/scalar.hpp"

namespace qwtorus::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSchema = "qwtorus/1";

// Exit codes: 0 pass, 1 verification failure, 2 usage or resource errors.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar captured as written.  "1/2" and "3" parse as exact rationals,
// "0.5" as a float; the arithmetic mode of a run follows the syntax and is
// never converted silently.
struct ScalarArg {
    std::string text;
    bool exact = false;
    Rat rational;
    double value = 0;

    static ScalarArg parse(const std::string& s);
};

struct RunConfig {
    std::string command; // enumerate | verify.stationarity | verify.identity |
                         // verify.balance | verify.ergodicity | simulate | connect | info
    int L = 0, N = 0, m1 = 0;
    int m2 = -1; // -1 = all sectors (enumerate only)
    ScalarArg q;
    std::vector<ScalarArg> a;
    bool rational_mode = true;

    std::uint64_t seed = 0;
    double t_max = 0;
    std::uint64_t max_events = 0;
    long samples = 10000;
    int threads = 1;
    std::uint64_t enum_cap = kDefaultEnumCap;
    bool count_only = false;
    int perturb_state = -1;

    std::string init_file, from_file, to_file;
    std::string events_csv, occupation_json, measure_csv;
};

// Parses argv (without the program name) into a validated RunConfig.
// Violated sector bounds are reported with the m1/L + m2/N < 1 inequality
// spelled out.  Throws usage_error.
RunConfig parse_args(const std::vector<std::string>& args);

// Dispatches to the library and writes one JSON report to `out`.
// Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Convenience wrapper used by main(): parse + run with error reporting.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace qwtorus::cli
