#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gevrey/coefficient_vector.hpp"
#include "gevrey/series.hpp"
#include "gevrey/spectral_measure.hpp"

namespace gevrey {

enum class factor_kind { power, exp, gevrey_exp };

struct symbol_factor {
    factor_kind kind = factor_kind::power;
    int n = 0;                  // power: lambda^n
    complex_value z{};          // exp: e^{z lambda}
    double s = 0.0;             // gevrey_exp: e^{s |lambda|^{1/beta}}
    double beta = 1.0;

    friend bool operator==(const symbol_factor&, const symbol_factor&) = default;
};

// F(lambda) as a product of catalog factors. The empty product is F = 1.
class symbol_function {
public:
    symbol_function() = default;

    static symbol_function power(int n);
    static symbol_function exp(complex_value z);
    static symbol_function gevrey_exp(double s, double beta);

    friend symbol_function operator*(const symbol_function& a, const symbol_function& b);

    // Factors are combined by adding log-magnitudes in factor order.
    log_polar evaluate(complex_value lambda) const;
    // Expansion of log|F(lambda_k)| on a family; nullopt when unavailable.
    std::optional<asymptotic_law> magnitude_law(const spectrum_family& s) const;
    log_weight as_weight() const;

    const std::vector<symbol_factor>& factors() const { return factors_; }
    std::string describe() const;

    friend bool operator==(const symbol_function&, const symbol_function&) = default;

private:
    std::vector<symbol_factor> factors_;
};

enum class membership { member, non_member, unknown };
enum class domain_criterion { direct, dual_probe };

const char* to_string(membership m);
const char* to_string(domain_criterion c);

struct domain_verdict {
    membership member = membership::unknown;
    convergence_certificate certificate;
    domain_criterion criterion = domain_criterion::direct;
    std::string detail;

    bool is_member() const { return member == membership::member; }
    bool is_non_member() const { return member == membership::non_member; }
};

membership from_certificate(const convergence_certificate& c);

// sum |F(lambda_k) f_k|^p.
series_spec image_norm_series(const symbol_function& F, const coefficient_vector& f);

domain_verdict domain_member_direct(const symbol_function& F, const coefficient_vector& f,
                                    const series_budget& budget = {});

// Cross-check through dual probes: unit coordinate duals, the dual with
// coordinates k^-2, and the norming duals of truncations of F(A)f; the second
// condition is evaluated on the level sets {|F| > n} with n doubling.
domain_verdict domain_member_prop31(const symbol_function& F, const coefficient_vector& f, int probe_budget,
                                    const series_budget& budget = {});

// g_k = F(lambda_k) f_k. Throws domain_error unless membership certifies.
coefficient_vector apply_symbol(const symbol_function& F, const coefficient_vector& f,
                                const series_budget& budget = {});

struct power_norm_report {
    std::vector<double> log_norms;  // log ||A^n f||_p, n = 0, 1, ...
    std::vector<convergence_certificate> certificates;
    std::optional<int> cutoff;      // first n whose domain test did not certify
    std::string cutoff_reason;
};

power_norm_report power_norms(const coefficient_vector& f, int n_max, const series_budget& budget = {});

}  // namespace gevrey
