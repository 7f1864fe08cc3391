#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "gevrey/asymptotic_law.hpp"
#include "gevrey/log_polar.hpp"

namespace gevrey {

using index_t = std::int64_t;

enum class series_status { converges, diverges, inconclusive };

// How a series decision was reached.
enum class decision_basis {
    exact_finite,     // finitely many nonzero terms, summed exactly
    closed_form,      // comparison against the declared asymptotic expansion
    ratio_tail,       // empirical ratio bound r < 1 over the last three doublings
    log_cap,          // partial sums exceeded the cap
    non_decay,        // terms nondecreasing over the last three doublings at k_max
    budget_exhausted  // neither test fired
};

const char* to_string(series_status s);
const char* to_string(decision_basis b);

struct convergence_certificate {
    series_status status = series_status::inconclusive;
    decision_basis basis = decision_basis::budget_exhausted;
    // log of the partial sum over the evaluated prefix (the value when converged)
    double log_value = neg_inf;
    // log of the error bound on log_value's sum; +inf when the value is
    // unresolved, -inf when exact
    double log_error = pos_inf;
    // evaluated prefix length; for divergence this is the witness prefix
    index_t terms = 0;
    std::string detail;

    bool converges() const { return status == series_status::converges; }
    bool diverges() const { return status == series_status::diverges; }
    bool inconclusive() const { return status == series_status::inconclusive; }
};

struct series_budget {
    index_t k_max = index_t{1} << 20;
    double rel_tol = 1e-10;
    double log_cap = 700.0;
    // Prefix length used to compute the value of a series whose convergence is
    // already decided by its expansion.
    index_t value_sweep = index_t{1} << 20;
};

// The same budget with the value sweep cut short; for callers that only need
// the verdict.
series_budget decision_budget(const series_budget& budget, index_t sweep = 4096);

// sum_{k=1}^{length or infinity} exp(log_term(k)).
struct series_spec {
    std::function<double(index_t)> log_term;
    std::optional<index_t> length;
    std::optional<asymptotic_law> law;
};

// Runs the series protocol: exact summation for finite series; otherwise
// partial sums over k = 1..K, K doubling up to the budget, with tail and
// divergence tests at every doubling. A decisive closed form always takes
// precedence over the numeric tests; the numeric sweep then only supplies the
// value or the witness prefix.
convergence_certificate certify_series(const series_spec& series, const series_budget& budget = {});

}  // namespace gevrey
