// Command-line front end: one subcommand per pipeline stage.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "exdesign/design_search.hpp"
#include "exdesign/experiment.hpp"
#include "exdesign/explicability.hpp"
#include "exdesign/fixtures.hpp"
#include "exdesign/pddl.hpp"
#include "exdesign/planner.hpp"
#include "exdesign/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kTimeoutWithIncumbent = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

exdesign::Plan read_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read plan file: " + path);
    exdesign::Plan plan;
    std::string line;
    while (std::getline(in, line)) {
        auto semi = line.find(';');
        if (semi != std::string::npos) line.erase(semi);
        std::string cleaned;
        for (char c : line) cleaned.push_back(c == '(' || c == ')' ? ' ' : c);
        std::istringstream tokens(cleaned);
        std::vector<std::string> step;
        std::string tok;
        while (tokens >> tok) step.push_back(tok);
        if (step.empty()) continue;
        std::string name = step[0];
        for (std::size_t i = 1; i < step.size(); ++i) name += " " + step[i];
        plan.steps.push_back(name);
    }
    return plan;
}

exdesign::Task select_task(const exdesign::TaskSpec& spec, int index) {
    if (index < 0 || index >= static_cast<int>(spec.tasks.size())) {
        throw std::invalid_argument("task index out of range (have " +
                                    std::to_string(spec.tasks.size()) + " tasks)");
    }
    return spec.tasks[index];
}

struct DesignOverrides {
    std::optional<double> alpha, beta, kappa, gamma, time_limit;
    std::optional<int> horizon, max_design_size;

    void apply(exdesign::DesignSpec& spec) const {
        if (alpha) spec.weights.alpha = *alpha;
        if (beta) spec.weights.beta = *beta;
        if (kappa) spec.weights.kappa = *kappa;
        if (gamma) spec.gamma = *gamma;
        if (horizon) spec.horizon = *horizon;
        if (time_limit) spec.time_limit_secs = *time_limit;
        if (max_design_size) spec.max_design_size = *max_design_size;
        if (spec.gamma < 0.0 || spec.gamma > 1.0) {
            throw std::invalid_argument("gamma must be in [0, 1]");
        }
        if (spec.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    }
};

void add_override_flags(CLI::App* cmd, DesignOverrides& o) {
    cmd->add_option("--alpha", o.alpha, "inexplicability weight");
    cmd->add_option("--beta", o.beta, "design cost weight");
    cmd->add_option("--kappa", o.kappa, "robot plan cost weight");
    cmd->add_option("--gamma", o.gamma, "per-step attention probability in [0,1]");
    cmd->add_option("--horizon", o.horizon, "time horizon T");
    cmd->add_option("--time-limit-secs", o.time_limit, "design search time limit");
    cmd->add_option("--max-design-size", o.max_design_size, "largest design subset considered");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicability-aware environment design toolkit"};
    app.require_subcommand(1);

    // --- plan ---------------------------------------------------------------
    std::string plan_domain, plan_problem;
    int plan_task = 0;
    std::uint64_t plan_expansions = 5'000'000;
    CLI::App* plan_cmd = app.add_subcommand("plan", "solve one model optimally");
    plan_cmd->add_option("domain", plan_domain, "domain file")->required();
    plan_cmd->add_option("problem", plan_problem, "problem file")->required();
    plan_cmd->add_option("--task", plan_task, "task index (default 0)");
    plan_cmd->add_option("--max-expansions", plan_expansions, "search node budget");

    // --- score --------------------------------------------------------------
    std::string score_robot, score_human, score_problem, score_plan_file;
    int score_task = 0;
    CLI::App* score_cmd = app.add_subcommand("score", "inexplicability of a given robot plan");
    score_cmd->add_option("robot-domain", score_robot)->required();
    score_cmd->add_option("human-domain", score_human)->required();
    score_cmd->add_option("problem", score_problem)->required();
    score_cmd->add_option("plan", score_plan_file, "plan file, one action per line")->required();
    score_cmd->add_option("--task", score_task, "task index (default 0)");

    // --- explicate ----------------------------------------------------------
    std::string exp_robot, exp_human, exp_problem;
    int exp_task = 0;
    CLI::App* exp_cmd = app.add_subcommand("explicate", "most explicable plan for one task");
    exp_cmd->add_option("robot-domain", exp_robot)->required();
    exp_cmd->add_option("human-domain", exp_human)->required();
    exp_cmd->add_option("problem", exp_problem)->required();
    exp_cmd->add_option("--task", exp_task, "task index (default 0)");

    // --- design -------------------------------------------------------------
    std::string des_robot, des_human, des_problem, des_spec, des_log, des_report;
    bool des_no_prune = false;
    std::string des_format = "csv";
    std::uint64_t des_expansions = 5'000'000;
    DesignOverrides des_overrides;
    CLI::App* des_cmd = app.add_subcommand("design", "search the design space");
    des_cmd->add_option("robot-domain", des_robot)->required();
    des_cmd->add_option("human-domain", des_human)->required();
    des_cmd->add_option("problem", des_problem)->required();
    des_cmd->add_option("design-spec", des_spec)->required();
    add_override_flags(des_cmd, des_overrides);
    des_cmd->add_option("--planner-expansions", des_expansions,
                        "per-plan search node budget (separate from the design time limit)");
    des_cmd->add_flag("--no-prune", des_no_prune, "disable relevance pruning");
    des_cmd->add_option("--log", des_log, "write explored-node records to this CSV");
    des_cmd->add_option("--report", des_report, "write the comparison report to this file");
    des_cmd->add_option("--format", des_format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));

    // --- experiment ---------------------------------------------------------
    exdesign::ExperimentPlan ex_plan;
    std::string ex_format = "csv";
    bool ex_no_prune = false;
    double ex_beta = -1.0, ex_kappa = -1.0, ex_gamma = -1.0;
    int ex_max_design = -1;
    CLI::App* ex_cmd = app.add_subcommand("experiment", "fixture sweeps with report emission");
    ex_cmd->add_option("--fixture", ex_plan.fixtures,
                       "demo|blocksworld|grid|driverlog|driverlog-sweep (repeatable)")
        ->required();
    ex_cmd->add_option("--alpha", ex_plan.alphas, "alpha grid (repeatable)");
    ex_cmd->add_option("--horizon", ex_plan.horizons, "horizon grid (repeatable)");
    ex_cmd->add_option("--beta", ex_beta, "design cost weight");
    ex_cmd->add_option("--kappa", ex_kappa, "plan cost weight");
    ex_cmd->add_option("--gamma", ex_gamma, "attention probability");
    ex_cmd->add_option("--seed", ex_plan.seed, "instance generation seed");
    ex_cmd->add_option("--instances", ex_plan.instances, "instances per seeded domain");
    ex_cmd->add_option("--workers", ex_plan.workers, "parallel cells");
    ex_cmd->add_option("--time-limit-secs", ex_plan.time_limit_secs, "per-cell search limit");
    ex_cmd->add_option("--planner-expansions", ex_plan.planner_limits.max_expansions,
                       "per-plan search node budget");
    ex_cmd->add_option("--max-design-size", ex_max_design, "largest design subset");
    ex_cmd->add_flag("--no-prune", ex_no_prune, "disable relevance pruning");
    ex_cmd->add_option("--out", ex_plan.out_dir, "output directory")->required();
    ex_cmd->add_option("--format", ex_format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));

    // --- fixture ------------------------------------------------------------
    std::string fix_name;
    std::uint64_t fix_seed = 1;
    std::string fix_out = ".";
    CLI::App* fix_cmd = app.add_subcommand("fixture", "emit built-in fixture files");
    fix_cmd->add_option("--name", fix_name,
                        "demo-a|demo-b|demo-c|blocksworld|grid|driverlog|driverlog-sweep")
        ->required();
    fix_cmd->add_option("--seed", fix_seed, "generation seed");
    fix_cmd->add_option("--out", fix_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        using namespace exdesign;
        if (*plan_cmd) {
            // A single-model solve still parses through the pair machinery.
            std::string domain = slurp(plan_domain);
            ParsedModel parsed = parse_model_pair(domain, domain, slurp(plan_problem));
            Task task = select_task(parsed.tasks, plan_task);
            const PlanningProblem& base = parsed.pair.robot;
            SearchLimits limits;
            limits.max_expansions = plan_expansions;
            SearchResult result = solve_optimal(base.with_task(task.init, task.goal), limits);
            if (result.outcome == SearchOutcome::Timeout) {
                std::cout << "timeout; lower bound " << result.lower_bound << "\n";
                return kTimeoutWithIncumbent;
            }
            if (!result.solved()) {
                std::cout << "unsolvable\n";
                return kOk;
            }
            std::cout << format_plan(*result.plan);
            std::cout << "; cost " << result.cost << ", expanded " << result.expanded << "\n";
            return kOk;
        }
        if (*score_cmd) {
            ParsedModel parsed =
                parse_model_pair(slurp(score_robot), slurp(score_human), slurp(score_problem));
            ExplicableProblem exp{parsed.pair, select_task(parsed.tasks, score_task)};
            InexplicabilityScore score = score_plan(exp, read_plan_file(score_plan_file));
            if (score.is_infinite()) {
                std::cout << "inexplicability inf (plan invalid in the human model)\n";
            } else {
                std::cout << "inexplicability " << score.value() << " (log " << score.log_value()
                          << ")\n";
            }
            return kOk;
        }
        if (*exp_cmd) {
            ParsedModel parsed =
                parse_model_pair(slurp(exp_robot), slurp(exp_human), slurp(exp_problem));
            ExplicableProblem exp{parsed.pair, select_task(parsed.tasks, exp_task)};
            MostExplicableResult result = most_explicable_plan(exp);
            if (result.evaluation_failed) {
                std::cout << "evaluation failed (planner resource limit)\n";
                return kTimeoutWithIncumbent;
            }
            if (result.plan) {
                std::cout << format_plan(*result.plan);
                std::cout << "; inexplicability " << result.ie_min.value() << " (log "
                          << result.ie_min.log_value() << "), robot cost " << result.robot_cost
                          << "\n";
            } else {
                std::cout << "no jointly valid plan; inexplicability inf, robot cost "
                          << result.robot_cost << "\n";
            }
            return kOk;
        }
        if (*des_cmd) {
            ParsedModel parsed =
                parse_model_pair(slurp(des_robot), slurp(des_human), slurp(des_problem));
            DesignSpec spec = parse_design_spec(slurp(des_spec), parsed.pair);
            des_overrides.apply(spec);
            DesignProblem problem{parsed.pair, parsed.tasks, spec};
            SearchOptions options;
            options.prune = !des_no_prune;
            options.planner_limits.max_expansions = des_expansions;
            DesignSearchResult result = search(problem, options);

            std::cout << "chosen design:";
            if (result.chosen_ids.empty()) std::cout << " (none)";
            for (const std::string& id : result.chosen_ids) std::cout << ' ' << id;
            std::cout << "\nobjective " << result.evaluation.objective << " (baseline "
                      << result.baseline.objective << "), explored " << result.log.size()
                      << " configurations in " << result.time_secs << "s\n";

            auto rows = comparison_rows("design", result, spec.longitudinal());
            std::string report = write_report(
                rows, des_format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv);
            if (des_report.empty()) {
                std::cout << report;
            } else {
                std::ofstream out(des_report);
                out << report;
            }
            if (!des_log.empty()) {
                std::ofstream log(des_log);
                log << "ids,objective,expected_ie,expected_robot_cost,design_cost,failed\n";
                for (const ExploredNode& node : result.log) {
                    std::string ids;
                    for (const std::string& id : node.ids) {
                        if (!ids.empty()) ids += '+';
                        ids += id;
                    }
                    log << ids << ',' << node.objective << ',' << node.expected_ie << ','
                        << node.expected_robot_cost << ',' << node.design_cost << ','
                        << (node.failed ? 1 : 0) << '\n';
                }
            }
            return result.anytime ? kTimeoutWithIncumbent : kOk;
        }
        if (*ex_cmd) {
            if (ex_beta >= 0) ex_plan.beta = ex_beta;
            if (ex_kappa >= 0) ex_plan.kappa = ex_kappa;
            if (ex_gamma >= 0) ex_plan.gamma = ex_gamma;
            if (ex_max_design >= 0) ex_plan.max_design_size = ex_max_design;
            ex_plan.prune = !ex_no_prune;
            ex_plan.format = ex_format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv;
            ExperimentResult result = run_experiment(ex_plan);
            std::cout << "ran " << result.cells << " cells, " << result.failed_cells
                      << " failures\n";
            if (!result.report_path.empty()) std::cout << "report: " << result.report_path << "\n";
            if (!result.sweep_path.empty()) std::cout << "sweep: " << result.sweep_path << "\n";
            return result.any_timeout ? kTimeoutWithIncumbent : kOk;
        }
        if (*fix_cmd) {
            FixtureFiles files;
            if (fix_name == "demo-a") files = build_demo_fixture(DemoSetting::A);
            else if (fix_name == "demo-b") files = build_demo_fixture(DemoSetting::B);
            else if (fix_name == "demo-c") files = build_demo_fixture(DemoSetting::C);
            else if (fix_name == "blocksworld") files = build_ipc_fixture(IpcDomain::Blocksworld, fix_seed);
            else if (fix_name == "grid") files = build_ipc_fixture(IpcDomain::Grid, fix_seed);
            else if (fix_name == "driverlog") files = build_ipc_fixture(IpcDomain::Driverlog, fix_seed);
            else if (fix_name == "driverlog-sweep") files = build_driverlog_sweep_fixture();
            else throw std::invalid_argument("unknown fixture: " + fix_name);
            for (const std::string& path : write_fixture(files, fix_out)) {
                std::cout << path << "\n";
            }
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
