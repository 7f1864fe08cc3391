#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/asymptotic_law.hpp"
#include "gevrey/log_polar.hpp"
#include "gevrey/series.hpp"
#include "gevrey/spectrum.hpp"

namespace gevrey {

// log|f_k| = log_scale - c k^r (ln k)^q - d ln k, phase 0.
struct decay_params {
    double log_scale = 0.0;
    double c = 0.0;
    double r = 0.0;
    int q = 0;
    double d = 0.0;

    friend bool operator==(const decay_params&, const decay_params&) = default;
};

enum class vector_kind { explicit_coords, decay_law, rule };

// Coordinates f_k of a vector in the eigenbasis of a spectrum family, as an
// element of l^p. Construction certifies sum |f_k|^p < infinity; a vector that
// fails this is rejected.
class coefficient_vector {
public:
    using generator = std::function<log_polar(index_t)>;

    // Coordinates 1..n; on an infinite family the rest are zero.
    static coefficient_vector explicit_coords(spectrum_ptr spectrum, std::vector<log_polar> coords, double p = 2.0);
    static coefficient_vector from_complex(spectrum_ptr spectrum, const std::vector<complex_value>& coords,
                                           double p = 2.0);
    static coefficient_vector decay(spectrum_ptr spectrum, decay_params params, double p = 2.0);
    // Arbitrary rule. law describes log|f_k|; support means f_k = 0 for k > support.
    // Without either, summability is certified numerically with the given budget.
    static coefficient_vector rule(spectrum_ptr spectrum, generator g, std::optional<asymptotic_law> law,
                                   std::optional<index_t> support, std::string description, double p = 2.0,
                                   const series_budget& budget = {});
    // Rule whose summability is already established by the caller (e.g. a
    // projection of a certified vector); the certificate is stored as given.
    static coefficient_vector certified_rule(spectrum_ptr spectrum, generator g, std::optional<asymptotic_law> law,
                                             std::optional<index_t> support, std::string description, double p,
                                             convergence_certificate certificate);
    static coefficient_vector zero(spectrum_ptr spectrum, double p = 2.0);

    vector_kind kind() const { return kind_; }
    const spectrum_ptr& spectrum() const { return spectrum_; }
    double p() const { return p_; }

    log_polar at(index_t k) const;
    double log_abs(index_t k) const { return at(k).log_mag; }

    // Number of coordinates that may be nonzero, when finite.
    std::optional<index_t> support_length() const;
    // Expansion of log|f_k| in k, when known.
    const std::optional<asymptotic_law>& law() const { return law_; }
    const std::optional<decay_params>& decay() const { return decay_; }
    const std::vector<log_polar>& coords() const { return coords_; }
    const convergence_certificate& summability() const { return summability_; }

    // sum |f_k|^p as a series, and log ||f||_p.
    series_spec norm_series() const;
    convergence_certificate norm_certificate(const series_budget& budget = {}) const;
    double log_norm(const series_budget& budget = {}) const;

    const std::string& description() const { return description_; }

    // First n coordinates (or fewer for a finite support).
    std::vector<log_polar> prefix(index_t n) const;

private:
    coefficient_vector() = default;
    void check_summable(const series_budget& budget);

    vector_kind kind_ = vector_kind::explicit_coords;
    spectrum_ptr spectrum_;
    double p_ = 2.0;
    std::vector<log_polar> coords_;
    std::optional<decay_params> decay_;
    generator rule_;
    std::optional<asymptotic_law> law_;
    std::optional<index_t> support_;
    std::string description_;
    convergence_certificate summability_;
};

// The dual exponent q with 1/p + 1/q = 1.
double dual_exponent(double p);

// Both vectors live on the same family (same object or equal description).
bool same_space(const coefficient_vector& a, const coefficient_vector& b);

}  // namespace gevrey
