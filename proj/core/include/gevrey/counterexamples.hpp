#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gevrey/evolution.hpp"
#include "gevrey/gevrey_classifier.hpp"

namespace gevrey {

enum class plan_case { bounded_real_parts, unbounded_real_parts };

const char* to_string(plan_case c);

// A sequence mu_n = lambda_{m(n)}, m(n) = scale * n^step, drawn from a power
// law family, with
//   Re mu_n < n^-2 |Im mu_n|^{1/beta}
//   |mu_n| > max(n, |mu_{n-1}|)
// and separated disks |lambda - mu_n| < eps_n inside that region, eps_n < 1/n.
// In the unbounded case Re mu_n >= n, so n(k) = k.
struct violating_plan {
    double beta = 1.0;
    plan_case kind = plan_case::bounded_real_parts;
    double omega = 0.0;            // bounded case: sup Re mu_n
    power_law_params parent;       // the family the sequence is drawn from
    index_t scale = 1;
    index_t step = 1;
    power_law_params mu;           // mu_n as a power law in n
    index_t verified_prefix = 0;
    std::vector<double> epsilon;   // eps_n for n <= verified_prefix
    std::string detail;

    complex_value lambda(index_t n) const;
    // eps_n for any n: min(1/(2n), half the modulus gap to the neighbours),
    // halved until sampled boundary points lie in the violating region.
    double epsilon_at(index_t n) const;
};

// Canonical plans: mu_n = 2i n^{2 beta} (bounded) and mu_n = n + 2i n^{3 beta + 1}
// (unbounded). Throws domain_error if an inequality fails on the prefix.
violating_plan build_violating_spectrum(double beta, plan_case kind, index_t prefix = 10000);

// Picks m(n) = scale * n^step inside a family whose region condition is
// violated at beta.
violating_plan select_violating_subsequence(const spectrum_family& sigma, double beta, index_t prefix = 10000);

// Re-checks all plan inequalities on n <= prefix and fills eps_n.
void verify_plan(violating_plan& plan, index_t prefix);

struct counterexample_artifacts {
    spectrum_ptr spectrum;
    coefficient_vector f;
    std::optional<coefficient_vector> h;
    coefficient_vector h_star;
    admissibility_certificate admissibility;
    gevrey_verdict non_membership;
    // divergence of sum_k e^{s |mu_k|^{1/beta}} |f_k| k^-2 for each probe s
    std::vector<s_probe> h_star_probes;
    // largest n <= prefix where the proof's termwise lower bound was checked
    index_t lower_bound_checked = 0;
    std::string detail;
};

// Builds f (and h in the unbounded case) as in the proof, checks
// admissibility and Roumieu non-membership; throws consistency_error when
// either contradicts the construction.
counterexample_artifacts build_counterexample(const violating_plan& plan,
                                              const std::vector<double>& probe_s = {0x1p-10, 1.0, 0x1p10},
                                              const classifier_options& options = {});

enum class analyticity { analytic_at_zero, not_analytic, unknown };

const char* to_string(analyticity a);

struct analyticity_report {
    analyticity status = analyticity::unknown;
    double delta = 0.0;
    std::string detail;
};

// Scans sup_n log||A^n f|| - log n! + n log delta over n <= n_max for each grid
// radius (in grid order) and cross-checks with the beta = 1 Roumieu class of f.
analyticity_report analytic_at_zero_probe(const solution_handle& h, const std::vector<double>& radius_grid,
                                          int n_max = 40, const classifier_options& options = {});

}  // namespace gevrey
