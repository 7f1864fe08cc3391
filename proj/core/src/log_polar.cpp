#include "gevrey/log_polar.hpp"

#include <stdexcept>

namespace gevrey {

double wrap_phase(double phase)
{
    if (phase > -pi && phase <= pi) {
        return phase;
    }
    if (!std::isfinite(phase)) {
        throw std::domain_error("wrap_phase: non-finite phase");
    }
    double r = std::remainder(phase, 2.0 * pi);
    if (r <= -pi) {
        r += 2.0 * pi;
    }
    return r;
}

log_polar log_polar::from_log(double log_mag, double phase)
{
    if (std::isnan(log_mag) || log_mag == pos_inf) {
        throw std::domain_error("log_polar: log-magnitude must be finite or -inf");
    }
    if (log_mag == neg_inf) {
        return zero();
    }
    return {log_mag, wrap_phase(phase)};
}

log_polar log_polar::from_complex(complex_value z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::domain_error("log_polar: non-finite complex value");
    }
    if (z == complex_value{}) {
        return zero();
    }
    return {std::log(std::abs(z)), std::arg(z)};
}

complex_value log_polar::to_complex() const
{
    if (is_zero()) {
        return {};
    }
    return std::polar(std::exp(log_mag), phase);
}

log_polar operator*(const log_polar& a, const log_polar& b)
{
    if (a.is_zero() || b.is_zero()) {
        return log_polar::zero();
    }
    return {a.log_mag + b.log_mag, wrap_phase(a.phase + b.phase)};
}

void log_sum::add(double log_term)
{
    if (std::isnan(log_term)) {
        throw std::domain_error("log_sum: NaN term");
    }
    if (log_term == neg_inf) {
        return;
    }
    if (log_term > scale_) {
        if (scale_ != neg_inf) {
            const double shrink = std::exp(scale_ - log_term);
            sum_ *= shrink;
            compensation_ *= shrink;
        }
        scale_ = log_term;
    }
    const double x = std::exp(log_term - scale_);
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double log_sum::value() const
{
    if (scale_ == neg_inf) {
        return neg_inf;
    }
    return scale_ + std::log(sum_ + compensation_);
}

double log_add(double a, double b)
{
    if (a < b) {
        std::swap(a, b);
    }
    if (b == neg_inf) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

}  // namespace gevrey
