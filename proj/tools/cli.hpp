#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fractel/spectral_solver.hpp"
#include "fractel/verify.hpp"

namespace fractel::cli {

/// Raised for anything wrong with a configuration file or command line; exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProblemConfig {
    TelegraphProblem problem;
    SolveOptions options;
    int time_points = 11;
    int x_points = 65;
    bool write_solution = true;
    bool write_norms = true;
    bool write_field = true;
};

/// Schema version 1. Unknown fields are rejected; `modes` overrides operator.K.
ProblemConfig parse_problem(const nlohmann::json& j, std::optional<int> modes = {});
ProblemConfig load_problem(const std::filesystem::path& path, std::optional<int> modes = {});

SuiteConfig parse_suite(const nlohmann::json& j);

std::vector<double> output_times(const ProblemConfig& cfg);

/// Writes the requested artifacts; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ProblemConfig& cfg, const SolutionField& field,
                                                 const std::filesystem::path& out_dir);

/// Shortest round-trip text for a double.
std::string format_double(double v);

/// Full command line without the program name. Returns the exit status.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace fractel::cli
