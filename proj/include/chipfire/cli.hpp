#pragma once

#include "chipfire/enumerate.hpp"
#include "chipfire/reach.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace chipfire::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_resource = 3,
};

enum class OutputFormat { csv, jsonl, human };

std::string to_string(OutputFormat f);
OutputFormat parse_output_format(const std::string& s);

// "debt,reachable" <-> SweepModes
SweepModes parse_modes(const std::string& s);
std::string to_string(SweepModes m);

/// Everything that determines the output of a count or sweep invocation.
/// canonical() is a stable one-line spelling; parse(canonical()) round-trips.
struct RunSpec {
    std::string graph;                  // graph spec string, canonical spelling
    std::optional<std::string> source;  // explicit source configuration
    Vertex source_vertex = 0;
    std::int64_t c_min = 0;
    std::int64_t c_max = 0;
    SweepModes modes{true, false, false};
    OutputFormat format = OutputFormat::csv;
    ResourceLimits limits;
    unsigned jobs = 1;

    std::string canonical() const;
    static RunSpec parse(const std::string& text);

    friend bool operator==(const RunSpec& a, const RunSpec& b) { return a.canonical() == b.canonical(); }
};

// Entry point shared by the chipfire binary and the tests. Never throws;
// every failure becomes one of the exit codes above with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chipfire::cli
