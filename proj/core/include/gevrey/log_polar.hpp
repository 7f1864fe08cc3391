#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace gevrey {

using complex_value = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

// Reduces an angle into (-pi, pi]. Values already in range are returned
// unchanged, bit for bit.
double wrap_phase(double phase);

// A complex number stored as (log|z|, arg z). log_mag == -inf encodes an exact
// zero and then phase is canonically 0.
struct log_polar {
    double log_mag = neg_inf;
    double phase = 0.0;

    static log_polar zero() { return {}; }
    static log_polar one() { return {0.0, 0.0}; }
    static log_polar from_log(double log_mag, double phase = 0.0);
    static log_polar from_complex(complex_value z);

    bool is_zero() const { return log_mag == neg_inf; }
    double magnitude() const { return std::exp(log_mag); }
    complex_value to_complex() const;

    friend bool operator==(const log_polar&, const log_polar&) = default;
};

log_polar operator*(const log_polar& a, const log_polar& b);

// Accumulates sum_i exp(x_i) without overflow. Terms are added in call order
// with Neumaier compensation on the rescaled partial sum, so the result only
// depends on the order of the calls.
class log_sum {
public:
    void add(double log_term);
    double value() const;
    double max_term() const { return scale_; }
    bool empty() const { return scale_ == neg_inf; }

private:
    double scale_ = neg_inf;
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// log(exp(a) + exp(b)).
double log_add(double a, double b);

}  // namespace gevrey
