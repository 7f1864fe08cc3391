#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gevrey/coefficient_vector.hpp"
#include "gevrey/spectrum.hpp"

namespace fixtures {

using gevrey::complex_value;

inline gevrey::spectrum_ptr explicit_spectrum(std::vector<complex_value> points)
{
    return gevrey::make_spectrum(gevrey::spectrum_family::explicit_points(std::move(points)));
}

inline gevrey::spectrum_ptr power_law(double a_re, double p_re, double a_im = 0.0, double p_im = 0.0)
{
    return gevrey::make_spectrum(gevrey::spectrum_family::power_law({a_re, p_re, a_im, p_im}));
}

// n distinct points with real and imaginary parts in [-scale, scale].
inline std::vector<complex_value> random_points(std::mt19937_64& rng, std::size_t n, double scale = 4.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<complex_value> pts;
    while (pts.size() < n) {
        const complex_value z{u(rng), u(rng)};
        bool fresh = true;
        for (const auto& w : pts) {
            fresh = fresh && w != z;
        }
        if (fresh) {
            pts.push_back(z);
        }
    }
    return pts;
}

inline std::vector<complex_value> random_coords(std::mt19937_64& rng, std::size_t n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<complex_value> c(n);
    for (auto& z : c) {
        z = {g(rng), g(rng)};
    }
    return c;
}

inline gevrey::coefficient_vector decay_vector(const gevrey::spectrum_ptr& s, double c, double r, int q = 0,
                                               double d = 0.0, double p = 2.0)
{
    return gevrey::coefficient_vector::decay(s, {0.0, c, r, q, d}, p);
}

}  // namespace fixtures
