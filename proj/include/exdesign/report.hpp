#ifndef EXDESIGN_REPORT_HPP
#define EXDESIGN_REPORT_HPP

#include <string>
#include <vector>

#include "exdesign/design_search.hpp"

namespace exdesign {

enum class ReportFormat { Csv, Markdown };

struct ReportRow {
    std::string config;
    double design_size = 0.0;
    double inexplicability = 0.0;  // horizon-aggregated expected inexplicability
    double plan_cost = 0.0;        // expected robot plan cost per execution
    double total_cost = 0.0;       // scalarized objective
    double pct_diff_inexp = 0.0;
    double pct_diff_cost = 0.0;
    double pct_diff_total = 0.0;
    double time_secs = 0.0;
};

// Header: config,design_size,inexplicability,plan_cost,total_cost,
// pct_diff_inexp,pct_diff_cost,pct_diff_total,time_secs
std::string write_report(const std::vector<ReportRow>& rows, ReportFormat format);

// Two rows per search: the no-design baseline and the chosen design, with
// percentage differences of the second against the first.
std::vector<ReportRow> comparison_rows(const std::string& label, const DesignSearchResult& result,
                                       const LongitudinalParams& params);

}  // namespace exdesign

#endif
