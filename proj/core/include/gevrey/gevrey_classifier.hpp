#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gevrey/borel_calculus.hpp"
#include "gevrey/evolution.hpp"

namespace gevrey {

enum class gevrey_flavor { roumieu, beurling };

const char* to_string(gevrey_flavor f);

struct s_probe {
    double s;
    convergence_certificate certificate;
};

// Membership of f in the Gevrey class of order beta.
//   s* = sup { s > 0 : f in D(e^{s |A|^{1/beta}}) }
// Roumieu membership is s* > 0 and Beurling membership is s* = +inf.
struct gevrey_verdict {
    gevrey_flavor flavor = gevrey_flavor::roumieu;
    double beta = 1.0;
    membership member = membership::unknown;
    double s_low = 0.0;           // certified bracket of s*
    double s_high = pos_inf;
    std::optional<double> s_closed_form;  // from the expansions, when available
    double alpha = 0.0;           // beta = 0 only: spectral support radius
    std::vector<s_probe> probes;
    std::string detail;

    bool is_member() const { return member == membership::member; }
    bool is_non_member() const { return member == membership::non_member; }
};

struct classifier_options {
    double log2_s_min = -20.0;
    double log2_s_max = 20.0;
    int bisection_steps = 60;
    series_budget budget = decision_budget({});
};

// s* from the leading terms of log|f_k| and |lambda_k|^{1/beta}; nullopt
// when either expansion is missing or its remainder is not dominated.
std::optional<double> critical_exponent_closed_form(const coefficient_vector& f, double beta);

gevrey_verdict vector_class(const coefficient_vector& f, double beta, gevrey_flavor flavor,
                            const classifier_options& options = {});

// Exponential type: f has bounded spectral support.
gevrey_verdict vector_class_beta0(const coefficient_vector& f);

gevrey_verdict solution_class_at(const solution_handle& h, double t, double beta, gevrey_flavor flavor,
                                 const classifier_options& options = {});

enum class region_status { holds, violated, unknown };

const char* to_string(region_status s);

// rho_k = Re lambda_k / |Im lambda_k|^{1/beta} over a prefix of the family.
struct ratio_summary {
    index_t samples = 0;
    double min = pos_inf;
    double max = neg_inf;
    double last = 0.0;
    std::optional<double> limit;  // closed-form limit as k -> infinity
};

double region_ratio(complex_value lambda, double beta);

// Re lambda >= b |Im lambda|^{1/beta}
bool in_region(complex_value lambda, double b_plus, double beta);

struct region_report {
    double beta = 1.0;
    region_status status = region_status::unknown;
    double b_plus = 0.0;
    double exception_radius = 0.0;
    std::vector<complex_value> witness;
    std::vector<index_t> witness_indices;
    ratio_summary ratio;
    bool extrapolated = false;  // beta < 1
    std::string detail;
};

// Whether sigma minus the region of parameter b_plus is bounded for some
// b_plus > 0. beta < 1 requires allow_extrapolation.
region_report region_condition(const spectrum_family& sigma, double beta, bool allow_extrapolation = false);

struct order_estimate {
    double beta_hat = 0.0;
    double alpha_hat = 0.0;
    double log_c = 0.0;
    double residual = 0.0;  // root mean square of the fit residuals
    int n_min = 0;
    int n_max = 0;
    std::vector<double> log_norms;  // n = 0..n_max
};

// Least squares fit log||A^n f|| = log c + n log alpha + beta n log n over
// [n_min, n_max]; n_min <= 0 selects max(4, n_max / 4).
order_estimate estimate_order(const coefficient_vector& f, int n_min, int n_max, const series_budget& budget = {});

}  // namespace gevrey
