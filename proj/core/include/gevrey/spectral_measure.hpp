#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/coefficient_vector.hpp"
#include "gevrey/series.hpp"
#include "gevrey/spectrum.hpp"

namespace gevrey {

// Norm bound of the spectral measure. Coordinate projections on l^p never
// increase the norm, so the model constant is exactly 1.
inline constexpr double spectral_bound = 1.0;

// Nonnegative weight w(lambda) given by its logarithm, with an optional
// expansion of log w(lambda_k) for a given family.
struct log_weight {
    std::function<double(complex_value)> log_value;
    std::function<std::optional<asymptotic_law>(const spectrum_family&)> law;
    std::string description;

    static log_weight unit();
};

// E(delta) f: keeps the coordinates whose eigenvalue lies in delta.
coefficient_vector project(const coefficient_vector& f, const borel_set& delta);

// E(d2) E(d1) f == E(d1 & d2) f, coordinate by coordinate, bitwise. Infinite
// families are compared on the first `prefix` coordinates.
bool multiplicativity_check(const borel_set& d1, const borel_set& d2, const coefficient_vector& f,
                            index_t prefix = 4096);

// Atoms f_k g_k placed at lambda_k.
struct pairing_atom {
    index_t k;
    complex_value location;
    log_polar mass;
};

// The complex measure <E(.) f, g> restricted to its first n atoms (all atoms on
// finite families).
std::vector<pairing_atom> pairing_measure(const coefficient_vector& f, const coefficient_vector& g, index_t n);

// sum over lambda_k in delta of w(lambda_k) |f_k g_k|.
series_spec variation_series(const coefficient_vector& f, const coefficient_vector& g, const borel_set& delta,
                             const log_weight& weight);
convergence_certificate total_variation(const coefficient_vector& f, const coefficient_vector& g,
                                        const borel_set& delta, const log_weight& weight = log_weight::unit(),
                                        const series_budget& budget = {});

}  // namespace gevrey
