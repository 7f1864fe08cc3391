#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gevrey/borel_calculus.hpp"
#include "gevrey/coefficient_vector.hpp"

namespace gevrey {

enum class tail_rule_kind { explicit_finite, re_bounded_above, decay_dominates, witness_failure, unknown };

const char* to_string(tail_rule_kind k);

struct tail_rule {
    tail_rule_kind kind = tail_rule_kind::unknown;
    double omega = 0.0;    // re_bounded_above: sup Re lambda_k
    double r = 0.0;        // decay_dominates: decay exponent r (with log power q)
    int q = 0;
    double p_re = 0.0;     //                  growth exponent of Re lambda_k
    double t = 0.0;        // witness_failure: a time with f outside D(e^{tA})
};

// Whether f lies in the domain of e^{tA} for every t >= 0.
struct admissibility_certificate {
    membership admissible = membership::unknown;
    std::vector<double> checked_times;
    tail_rule rule;
    std::vector<domain_verdict> probes;  // direct tests at the checked times
    std::string detail;

    bool ok() const { return admissible == membership::member; }
};

// The tail rule decides the universal statement; direct domain tests at
// {0, 1, t_max/2, t_max} (and the witness time, if any) must not contradict
// it, otherwise consistency_error is thrown.
admissibility_certificate check_admissible(const coefficient_vector& f, double t_max = 100.0,
                                           const series_budget& budget = {});

class solution_handle {
public:
    // Throws domain_error unless the certificate is admissible.
    solution_handle(coefficient_vector f, admissibility_certificate cert);

    const coefficient_vector& initial() const { return f_; }
    const admissibility_certificate& certificate() const { return cert_; }

private:
    coefficient_vector f_;
    admissibility_certificate cert_;
};

solution_handle make_solution(const coefficient_vector& f, double t_max = 100.0, const series_budget& budget = {});

// y(t) = e^{tA} f. solve(h, 0) returns f itself.
coefficient_vector solve(const solution_handle& h, double t, const series_budget& budget = {});

// y^(n)(t) = A^n e^{tA} f; throws domain_error naming the first failing order.
coefficient_vector derivative(const solution_handle& h, double t, int n, const series_budget& budget = {});

// max over the grid of | (<y(t+eps), g> - <y(t-eps), g>) / (2 eps) - <y(t), A*g> |
// with the bilinear pairing <x, g> = sum x_k g_k and A*g = (lambda_k g_k).
// Finite families only. Near t = 0 a one-sided second-order stencil is used.
double weak_solution_residual(const solution_handle& h, const coefficient_vector& g, const std::vector<double>& t_grid,
                              double eps = 1e-5);

}  // namespace gevrey
