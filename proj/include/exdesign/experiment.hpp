#ifndef EXDESIGN_EXPERIMENT_HPP
#define EXDESIGN_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exdesign/fixtures.hpp"
#include "exdesign/report.hpp"

namespace exdesign {

// One run of the experiment driver: a set of built-in fixtures crossed with
// an (alpha, horizon) grid. beta, kappa and gamma are fixed per plan.
struct ExperimentPlan {
    std::vector<std::string> fixtures;  // demo | blocksworld | grid | driverlog | driverlog-sweep
    std::vector<double> alphas = {1.0};
    std::vector<int> horizons = {1};
    std::optional<double> beta;   // default: the fixture's own value
    std::optional<double> kappa;
    std::optional<double> gamma;
    std::uint64_t seed = 1;
    int instances = 5;            // per seeded domain
    int workers = 1;
    bool prune = true;
    std::optional<int> max_design_size;
    double time_limit_secs = 0.0;
    SearchLimits planner_limits;
    std::string out_dir;          // empty: nothing written to disk
    ReportFormat format = ReportFormat::Csv;
};

struct SweepPoint {
    std::string fixture;
    double alpha = 0.0;
    int horizon = 0;
    int design_count = 0;
};

struct ExperimentResult {
    std::vector<ReportRow> rows;
    std::vector<SweepPoint> sweep;
    int cells = 0;
    int failed_cells = 0;
    bool any_timeout = false;
    std::string report_path;  // set when out_dir given
    std::string sweep_path;
};

// Runs every cell (parallel up to plan.workers), collects report rows in a
// fixed order and optionally writes report + sweep files.
ExperimentResult run_experiment(const ExperimentPlan& plan);

}  // namespace exdesign

#endif
