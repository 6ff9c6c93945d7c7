#include "exdesign/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace exdesign {

namespace {

struct Cell {
    std::string label;
    std::shared_ptr<FixtureFiles> files;
    std::shared_ptr<LoadedFixture> fixture;
    std::shared_ptr<EvalCache> cache;  // shared by cells over the same fixture
    double alpha = 1.0;
    int horizon = 1;
    bool is_sweep = false;
    bool use_fixture_settings = false;  // demo cells keep their embedded weights/horizon
};

struct CellResult {
    std::vector<ReportRow> rows;
    std::optional<SweepPoint> sweep;
    bool failed = false;
    bool timeout = false;
};

CellResult run_cell(const Cell& cell, const ExperimentPlan& plan) {
    CellResult out;
    try {
        DesignSpec spec = cell.fixture->design;
        if (!cell.use_fixture_settings) {
            spec.weights.alpha = cell.alpha;
            if (plan.beta) spec.weights.beta = *plan.beta;
            if (plan.kappa) spec.weights.kappa = *plan.kappa;
            if (plan.gamma) spec.gamma = *plan.gamma;
            spec.horizon = cell.horizon;
        }
        if (plan.max_design_size) spec.max_design_size = plan.max_design_size;
        if (plan.time_limit_secs > 0.0) spec.time_limit_secs = plan.time_limit_secs;

        DesignProblem problem{cell.fixture->model.pair, cell.fixture->model.tasks, spec};
        SearchOptions options;
        options.prune = plan.prune;
        options.planner_limits = plan.planner_limits;
        options.cache = cell.cache.get();
        DesignSearchResult result = search(problem, options);

        out.rows = comparison_rows(cell.label, result, spec.longitudinal());
        out.timeout = result.anytime;
        out.failed = result.evaluation.failed;
        if (cell.is_sweep) {
            out.sweep = SweepPoint{cell.files->name, spec.weights.alpha, spec.horizon,
                                   static_cast<int>(result.chosen_ids.size())};
        }
    } catch (const std::exception& e) {
        out.failed = true;
        ReportRow row;
        std::string what = e.what();
        std::replace(what.begin(), what.end(), ',', ';');  // keep the CSV well formed
        row.config = cell.label + "/error: " + what;
        out.rows = {row};
    }
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan) {
    if (plan.fixtures.empty()) throw std::invalid_argument("no fixtures selected");
    if (plan.alphas.empty()) throw std::invalid_argument("empty alpha grid");
    if (plan.horizons.empty()) throw std::invalid_argument("empty horizon grid");
    if (plan.instances < 1) throw std::invalid_argument("instances must be >= 1");
    for (int t : plan.horizons) {
        if (t < 1) throw std::invalid_argument("horizon grid entries must be >= 1");
    }

    std::vector<Cell> cells;
    auto add_fixture_cells = [&](const FixtureFiles& files, bool is_sweep, bool fixture_settings) {
        auto shared_files = std::make_shared<FixtureFiles>(files);
        auto fixture = std::make_shared<LoadedFixture>(load_fixture(files));
        auto cache = std::make_shared<EvalCache>();
        if (fixture_settings) {
            cells.push_back({files.name, shared_files, fixture, cache, 1.0, 1, false, true});
            return;
        }
        for (double alpha : plan.alphas) {
            for (int horizon : plan.horizons) {
                std::ostringstream label;
                label << files.name << "@a" << alpha << "-t" << horizon;
                cells.push_back({label.str(), shared_files, fixture, cache, alpha, horizon,
                                 is_sweep, false});
            }
        }
    };

    for (const std::string& name : plan.fixtures) {
        if (name == "demo") {
            add_fixture_cells(build_demo_fixture(DemoSetting::A), false, true);
            add_fixture_cells(build_demo_fixture(DemoSetting::B), false, true);
            add_fixture_cells(build_demo_fixture(DemoSetting::C), false, true);
        } else if (name == "driverlog-sweep") {
            add_fixture_cells(build_driverlog_sweep_fixture(), true, false);
        } else if (name == "blocksworld" || name == "grid" || name == "driverlog") {
            IpcDomain domain = name == "blocksworld" ? IpcDomain::Blocksworld
                               : name == "grid"      ? IpcDomain::Grid
                                                     : IpcDomain::Driverlog;
            for (int i = 0; i < plan.instances; ++i) {
                add_fixture_cells(build_ipc_fixture(domain, plan.seed + i), false, false);
            }
        } else {
            throw std::invalid_argument("unknown fixture: " + name);
        }
    }

    std::vector<CellResult> results(cells.size());
    const int workers = std::max(1, plan.workers);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            results[i] = run_cell(cells[i], plan);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    ExperimentResult out;
    out.cells = static_cast<int>(cells.size());
    for (const CellResult& r : results) {
        out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
        if (r.sweep) out.sweep.push_back(*r.sweep);
        if (r.failed) ++out.failed_cells;
        if (r.timeout) out.any_timeout = true;
    }

    if (!plan.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(plan.out_dir);
        const char* ext = plan.format == ReportFormat::Csv ? "csv" : "md";
        fs::path report_path = fs::path(plan.out_dir) / (std::string("report.") + ext);
        std::ofstream report(report_path);
        report << write_report(out.rows, plan.format);
        out.report_path = report_path.string();
        if (!out.sweep.empty()) {
            fs::path sweep_path = fs::path(plan.out_dir) / "sweep.csv";
            std::ofstream sweep(sweep_path);
            sweep << "fixture,alpha,horizon,design_count\n";
            for (const SweepPoint& p : out.sweep) {
                sweep << p.fixture << ',' << p.alpha << ',' << p.horizon << ',' << p.design_count
                      << '\n';
            }
            out.sweep_path = sweep_path.string();
        }
    }
    return out;
}

}  // namespace exdesign
