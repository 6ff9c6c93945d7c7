#include "exdesign/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace exdesign {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

double pct_diff(double with_design, double without_design) {
    if (without_design == 0.0 || std::isinf(without_design) || std::isinf(with_design)) return 0.0;
    return (with_design - without_design) / without_design * 100.0;
}

}  // namespace

std::string write_report(const std::vector<ReportRow>& rows, ReportFormat format) {
    std::ostringstream out;
    const char* fields[] = {"config",          "design_size",   "inexplicability",
                            "plan_cost",       "total_cost",    "pct_diff_inexp",
                            "pct_diff_cost",   "pct_diff_total", "time_secs"};
    if (format == ReportFormat::Csv) {
        for (int i = 0; i < 9; ++i) out << (i ? "," : "") << fields[i];
        out << '\n';
        for (const ReportRow& r : rows) {
            out << r.config << ',' << fmt(r.design_size) << ',' << fmt(r.inexplicability) << ','
                << fmt(r.plan_cost) << ',' << fmt(r.total_cost) << ',' << fmt(r.pct_diff_inexp)
                << ',' << fmt(r.pct_diff_cost) << ',' << fmt(r.pct_diff_total) << ','
                << fmt(r.time_secs) << '\n';
        }
        return out.str();
    }
    for (int i = 0; i < 9; ++i) out << "| " << fields[i] << ' ';
    out << "|\n";
    for (int i = 0; i < 9; ++i) out << "| --- ";
    out << "|\n";
    for (const ReportRow& r : rows) {
        out << "| " << r.config << " | " << fmt(r.design_size) << " | " << fmt(r.inexplicability)
            << " | " << fmt(r.plan_cost) << " | " << fmt(r.total_cost) << " | "
            << fmt(r.pct_diff_inexp) << " | " << fmt(r.pct_diff_cost) << " | "
            << fmt(r.pct_diff_total) << " | " << fmt(r.time_secs) << " |\n";
    }
    return out.str();
}

std::vector<ReportRow> comparison_rows(const std::string& label, const DesignSearchResult& result,
                                       const LongitudinalParams& params) {
    const double factor = longitudinal_factor(params);
    ReportRow base;
    base.config = label + "/no_design";
    base.design_size = 0.0;
    base.inexplicability = factor * result.baseline.expected_ie;
    base.plan_cost = result.baseline.expected_robot_cost;
    base.total_cost = result.baseline.objective;
    base.time_secs = result.time_secs;

    ReportRow with;
    with.config = label + "/with_design";
    with.design_size = static_cast<double>(result.chosen_ids.size());
    with.inexplicability = factor * result.evaluation.expected_ie;
    with.plan_cost = result.evaluation.expected_robot_cost;
    with.total_cost = result.evaluation.objective;
    with.pct_diff_inexp = pct_diff(with.inexplicability, base.inexplicability);
    with.pct_diff_cost = pct_diff(with.plan_cost, base.plan_cost);
    with.pct_diff_total = pct_diff(with.total_cost, base.total_cost);
    with.time_secs = result.time_secs;
    return {base, with};
}

}  // namespace exdesign
