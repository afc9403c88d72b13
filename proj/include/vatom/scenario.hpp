#pragma once

// Scenario configuration, the sweep runner behind the CLI, and its file
// outputs (CSV tracks, a JSON manifest, optional SVG line charts).

#include <map>
#include <string>
#include <vector>

#include "vatom/quantumness.hpp"
#include "vatom/timegrid.hpp"

namespace vatom {

enum class Environment { Pbg, Free };

// Canonical observable order; CSV columns follow it.
extern const std::vector<std::string> kObservableNames;

struct ScenarioConfig {
    std::string name = "run";
    Environment environment = Environment::Pbg;
    // band-gap reservoir (units of beta)
    double omega3c = -1.0;
    // shared splitting (beta units in the gap, gamma31 units in free space)
    double omega32 = 0.1;
    // free space
    double gamma31 = 1.0;
    double gamma21 = 1.0;

    double theta = M_PI / 2.0;
    double phi = 0.0;
    StateKind state_kind = StateKind::TwoLevel;

    double t_max = 20.0;
    double dt = 0.01;

    std::vector<std::string> observables;
    std::vector<double> sweep;      // empty: single run at (phi / omega3c)
    std::string sweep_param = "phi"; // "phi" or "omega3c"

    void validate() const;
    TimeGrid grid() const { return TimeGrid{t_max, dt}; }
};

// Line-oriented `key = value` parser ('#' comments, quoted strings, [v, ...]
// arrays). Errors carry the offending line number.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// The figure families ship as built-in configs; most come in a band-gap and
// a free-space variant.
std::vector<ScenarioConfig> builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

// Observable tracks for one sweep value, plus state-validity diagnostics
// accumulated along the trajectory.
struct SweepResult {
    double sweep_value = 0.0;
    std::map<std::string, ObservableTrack> tracks;
    double chi_backflow_integral = 0.0; // extension summary (only with chi)
    // diagnostics
    double max_trace_defect = 0.0;
    double min_state_eigenvalue = 0.0;
    double max_amplitude_norm = 0.0; // sup_t |A3|^2 + |A2|^2
};

std::vector<SweepResult> compute_scenario(const ScenarioConfig& cfg,
                                          EvalMode mode = EvalMode::Parallel);

struct ScenarioOutput {
    std::vector<std::string> csv_files;
    std::string manifest_file;
    std::vector<std::string> svg_files;
};

ScenarioOutput run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                            bool write_svg = false, EvalMode mode = EvalMode::Parallel);

} // namespace vatom
