#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdm {

/// Validated inputs of one solver run, mirroring the CLI flags.
struct RunConfig {
    std::string mass_text;
    std::string potential_text;
    std::vector<std::string> params;  // name=value entries
    std::string ordering_text = "BDD";
    std::vector<int> k_list = {20, 30, 40, 50, 60};
    double e_min = 0.0;
    double e_max = 5.5;
    int digit_threshold = 10;
    double grid_step = 0.05;
    std::string format = "json";
    std::string output_path;  // empty -> stdout

    // wavefunction command
    int state = 0;
    double half_width = 8.0;
    int sample_count = 4001;
    int degree_cap = 0;  // 0 -> automatic

    // oracle-check command
    double oracle_half_width = 12.0;
    int oracle_points = 4001;
    bool oracle_refine = true;
    double oracle_tolerance = 1e-6;
};

/// Entry point behind the pdmsolve binary. Returns the process exit code:
/// 0 success, 1 configuration error, 2 numerical failure, 3 oracle mismatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdm
