#include "gevrey/coefficient_vector.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {
namespace {

void check_p(double p)
{
    if (!std::isfinite(p) || p < 1.0) {
        throw std::invalid_argument("p must be a finite real >= 1");
    }
}

void check_spectrum(const spectrum_ptr& s)
{
    if (!s) {
        throw std::invalid_argument("coefficient vector needs a spectrum");
    }
}

log_polar canonical(const log_polar& z)
{
    if (std::isnan(z.log_mag) || z.log_mag == pos_inf || !std::isfinite(z.phase)) {
        throw std::invalid_argument("coefficient must have finite magnitude and phase");
    }
    if (z.is_zero()) {
        return log_polar::zero();
    }
    return log_polar::from_log(z.log_mag, z.phase);
}

// Construction only needs the verdict; the value sweep is kept short.
series_budget construction_budget(const series_budget& b)
{
    series_budget out = b;
    out.value_sweep = std::min<index_t>(b.value_sweep, 1024);
    return out;
}

}  // namespace

double dual_exponent(double p)
{
    check_p(p);
    return p == 1.0 ? pos_inf : p / (p - 1.0);
}

coefficient_vector coefficient_vector::explicit_coords(spectrum_ptr spectrum, std::vector<log_polar> coords, double p)
{
    check_spectrum(spectrum);
    check_p(p);
    if (auto n = spectrum->size(); n && static_cast<index_t>(coords.size()) != *n) {
        std::ostringstream os;
        os << "explicit vector has " << coords.size() << " coordinates but the spectrum has " << *n << " points";
        throw std::invalid_argument(os.str());
    }
    coefficient_vector v;
    v.kind_ = vector_kind::explicit_coords;
    v.spectrum_ = std::move(spectrum);
    v.p_ = p;
    for (auto& c : coords) {
        c = canonical(c);
    }
    v.coords_ = std::move(coords);
    std::ostringstream os;
    os << "explicit[" << v.coords_.size() << "]";
    v.description_ = os.str();
    v.check_summable({});
    return v;
}

coefficient_vector coefficient_vector::from_complex(spectrum_ptr spectrum, const std::vector<complex_value>& coords,
                                                    double p)
{
    std::vector<log_polar> lp;
    lp.reserve(coords.size());
    for (const auto& z : coords) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("coefficient must be finite");
        }
        lp.push_back(log_polar::from_complex(z));
    }
    return explicit_coords(std::move(spectrum), std::move(lp), p);
}

coefficient_vector coefficient_vector::decay(spectrum_ptr spectrum, decay_params params, double p)
{
    check_spectrum(spectrum);
    check_p(p);
    for (double x : {params.log_scale, params.c, params.r, params.d}) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("decay law: parameters must be finite");
        }
    }
    if (params.c < 0 || params.r < 0 || params.q < 0) {
        throw std::invalid_argument("decay law: need c >= 0, r >= 0, q >= 0");
    }
    coefficient_vector v;
    v.kind_ = vector_kind::decay_law;
    v.spectrum_ = std::move(spectrum);
    v.p_ = p;
    v.decay_ = params;
    asymptotic_law law = asymptotic_law::constant(params.log_scale);
    if (params.c != 0.0) {
        law += asymptotic_law::term(-params.c, params.r, params.q);
    }
    if (params.d != 0.0) {
        law += asymptotic_law::term(-params.d, 0.0, 1);
    }
    v.law_ = law;
    std::ostringstream os;
    os << "log|f_k| = " << law.describe();
    v.description_ = os.str();
    v.check_summable({});
    return v;
}

coefficient_vector coefficient_vector::rule(spectrum_ptr spectrum, generator g, std::optional<asymptotic_law> law,
                                            std::optional<index_t> support, std::string description, double p,
                                            const series_budget& budget)
{
    check_spectrum(spectrum);
    check_p(p);
    if (!g) {
        throw std::invalid_argument("rule vector: missing generator");
    }
    if (support && *support < 0) {
        throw std::invalid_argument("rule vector: support must be >= 0");
    }
    coefficient_vector v;
    v.kind_ = vector_kind::rule;
    v.spectrum_ = std::move(spectrum);
    v.p_ = p;
    v.rule_ = std::move(g);
    v.law_ = std::move(law);
    v.support_ = support;
    v.description_ = description.empty() ? "rule" : std::move(description);
    v.check_summable(budget);
    return v;
}

coefficient_vector coefficient_vector::certified_rule(spectrum_ptr spectrum, generator g,
                                                      std::optional<asymptotic_law> law, std::optional<index_t> support,
                                                      std::string description, double p,
                                                      convergence_certificate certificate)
{
    check_spectrum(spectrum);
    check_p(p);
    if (!g) {
        throw std::invalid_argument("rule vector: missing generator");
    }
    if (!certificate.converges()) {
        throw domain_error("certified_rule: certificate does not establish summability");
    }
    coefficient_vector v;
    v.kind_ = vector_kind::rule;
    v.spectrum_ = std::move(spectrum);
    v.p_ = p;
    v.rule_ = std::move(g);
    v.law_ = std::move(law);
    v.support_ = support;
    v.description_ = std::move(description);
    v.summability_ = std::move(certificate);
    return v;
}

coefficient_vector coefficient_vector::zero(spectrum_ptr spectrum, double p)
{
    check_spectrum(spectrum);
    const std::size_t n = spectrum->finite() ? static_cast<std::size_t>(*spectrum->size()) : 0;
    return explicit_coords(std::move(spectrum), std::vector<log_polar>(n), p);
}

void coefficient_vector::check_summable(const series_budget& budget)
{
    summability_ = certify_series(norm_series(), construction_budget(budget));
    if (!summability_.converges()) {
        std::ostringstream os;
        os << "vector " << description_ << " is not certified in l^" << p_ << ": " << to_string(summability_.status)
           << " (" << summability_.detail << ")";
        throw domain_error(os.str());
    }
}

log_polar coefficient_vector::at(index_t k) const
{
    if (k < 1) {
        throw std::out_of_range("coordinate index must be >= 1");
    }
    if (auto n = spectrum_->size(); n && k > *n) {
        throw std::out_of_range("coordinate index beyond the spectrum");
    }
    switch (kind_) {
    case vector_kind::explicit_coords:
        return k <= static_cast<index_t>(coords_.size()) ? coords_[static_cast<std::size_t>(k - 1)] : log_polar::zero();
    case vector_kind::decay_law: {
        const auto& d = *decay_;
        const double x = static_cast<double>(k);
        const double lk = std::log(x);
        double v = d.log_scale;
        if (d.c != 0.0) {
            v -= d.c * std::pow(x, d.r) * (d.q == 0 ? 1.0 : std::pow(lk, d.q));
        }
        if (d.d != 0.0) {
            v -= d.d * lk;
        }
        return log_polar::from_log(v);
    }
    case vector_kind::rule:
        if (support_ && k > *support_) {
            return log_polar::zero();
        }
        return canonical(rule_(k));
    }
    return {};
}

std::optional<index_t> coefficient_vector::support_length() const
{
    std::optional<index_t> n = spectrum_->size();
    std::optional<index_t> own;
    if (kind_ == vector_kind::explicit_coords) {
        own = static_cast<index_t>(coords_.size());
    } else if (kind_ == vector_kind::rule) {
        own = support_;
    }
    if (n && own) {
        return std::min(*n, *own);
    }
    return n ? n : own;
}

series_spec coefficient_vector::norm_series() const
{
    series_spec s;
    const double p = p_;
    s.log_term = [self = std::make_shared<const coefficient_vector>(*this), p](index_t k) {
        return p * self->log_abs(k);
    };
    s.length = support_length();
    if (law_) {
        s.law = p * *law_;
    }
    return s;
}

convergence_certificate coefficient_vector::norm_certificate(const series_budget& budget) const
{
    return certify_series(norm_series(), budget);
}

double coefficient_vector::log_norm(const series_budget& budget) const
{
    const auto c = norm_certificate(budget);
    if (!c.converges()) {
        throw consistency_error("norm of a stored vector failed to certify: " + c.detail);
    }
    return c.log_value / p_;
}

std::vector<log_polar> coefficient_vector::prefix(index_t n) const
{
    if (auto len = support_length()) {
        n = std::min(n, *len);
    }
    std::vector<log_polar> out;
    out.reserve(static_cast<std::size_t>(std::max<index_t>(n, 0)));
    for (index_t k = 1; k <= n; ++k) {
        out.push_back(at(k));
    }
    return out;
}

bool same_space(const coefficient_vector& a, const coefficient_vector& b)
{
    const auto& sa = a.spectrum();
    const auto& sb = b.spectrum();
    if (sa == sb) {
        return true;
    }
    if (sa->kind() != sb->kind()) {
        return false;
    }
    switch (sa->kind()) {
    case spectrum_kind::explicit_points: return sa->points() == sb->points();
    case spectrum_kind::power_law: return sa->tail() == sb->tail();
    case spectrum_kind::custom: return false;
    }
    return false;
}

}  // namespace gevrey
