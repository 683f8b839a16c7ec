#pragma once

#include <string>
#include <vector>

#include "pathgauge/types.hpp"

namespace pathgauge {

// Command-line overrides applied on top of a parsed config.
struct ScenarioOverrides {
    double tol = -1.0;      // quadrature tolerance; negative = keep config value
    int quad_order = -1;    // Gauss-Legendre order; negative = keep config value
    unsigned long long seed = 0;
    bool has_seed = false;  // seed is recorded in the summary, tasks are deterministic
    std::string out_dir = ".";
};

struct ScenarioResult {
    std::string name;
    std::vector<std::string> output_files;
    std::string summary;  // human-readable table for standard output
};

// Parses the JSON config text, runs the task, writes the CSV outputs.
// Validation problems throw validation_error before any file is written.
ScenarioResult run_scenario(const std::string& config_text, const ScenarioOverrides& ov = {});
ScenarioResult run_scenario_file(const std::string& path, const ScenarioOverrides& ov = {});

// The shipped scenarios, one per named preset.
std::vector<std::string> preset_names();
// Config text for a preset; unknown names throw validation_error listing
// close matches.
std::string preset_config(const std::string& name);

// Worker count from PATHGAUGE_THREADS (default 1); results are index-ordered,
// so the thread count never changes any output byte.
int scenario_threads();

}  // namespace pathgauge
