#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/cli/jobspec.hpp"

namespace gevrey::cli {

inline constexpr double no_value = std::numeric_limits<double>::quiet_NaN();

// One CSV row. Unused numeric cells hold NaN and are written empty.
struct report_row {
    std::string kind;
    std::string vector;
    double t = no_value;
    double beta = no_value;
    std::string flavor;
    std::string member;  // true | false | unknown | empty
    double s_low = no_value;
    double s_high = no_value;
    std::string status;
    std::optional<std::int64_t> n;
    double value = no_value;
    double re = no_value;
    double im = no_value;
    std::string detail;
};

struct run_options {
    bool seed_free = false;
    std::optional<double> tol;
    std::optional<std::int64_t> kmax;
    // Command-line flags as given, echoed into the report.
    std::vector<std::pair<std::string, std::string>> flags;
};

struct run_report {
    std::string job_id;
    job_spec job;
    std::vector<report_row> rows;
    std::vector<std::pair<std::string, double>> timings;  // phase, seconds
    bool include_timings = true;
    bool any_unknown = false;
    bool any_error = false;

    // 0 clean, 2 when some verdict is unknown, 1 on errors or contradictions.
    int exit_code() const;
};

// Effective job after applying the overrides in options.
job_spec resolve(const job_spec& job, const run_options& options);

// Never throws for math failures: they become "error" rows.
run_report run(const job_spec& job, const run_options& options = {});

std::string to_csv(const run_report& report);
void emit_csv(const run_report& report, const std::string& path);

}  // namespace gevrey::cli
