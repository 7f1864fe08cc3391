#include "gevrey/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {
namespace {

struct part {
    double coef;
    double power;
};

// Nonzero parts of a power law, dominant first.
std::vector<part> parts_of(const power_law_params& p)
{
    std::vector<part> out;
    if (p.a_re != 0.0) {
        out.push_back({p.a_re, p.p_re});
    }
    if (p.a_im != 0.0) {
        out.push_back({p.a_im, p.p_im});
    }
    if (out.size() == 2 && out[1].power > out[0].power) {
        std::swap(out[0], out[1]);
    }
    return out;
}

void validate(const power_law_params& p)
{
    for (double v : {p.a_re, p.p_re, p.a_im, p.p_im}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("power law: parameters must be finite");
        }
    }
    if (p.p_re < 0 || p.p_im < 0) {
        throw std::invalid_argument("power law: exponents must be >= 0");
    }
    const auto ps = parts_of(p);
    if (ps.empty() || ps.front().power <= 0) {
        throw std::invalid_argument("power law: |lambda_k| must grow (need a nonzero part with positive exponent)");
    }
}

std::string describe_law(const power_law_params& p)
{
    std::ostringstream os;
    os << "lambda_k = " << p.a_re << "*k^" << p.p_re << " + i*" << p.a_im << "*k^" << p.p_im;
    return os.str();
}

// Exact expansion of |lambda_k|^gamma for a power law.
asymptotic_law abs_pow_exact(const power_law_params& p, double gamma)
{
    const auto ps = parts_of(p);
    if (ps.size() == 1) {
        return asymptotic_law::term(std::pow(std::abs(ps[0].coef), gamma), gamma * ps[0].power);
    }
    if (ps[0].power == ps[1].power) {
        const double m = std::hypot(ps[0].coef, ps[1].coef);
        return asymptotic_law::term(std::pow(m, gamma), gamma * ps[0].power);
    }
    // |c_D|^g k^{gD} (1 + x)^{g/2}, x = (c_E/c_D)^2 k^{2(E-D)}
    const double cd = std::abs(ps[0].coef);
    const double ratio2 = (ps[1].coef / ps[0].coef) * (ps[1].coef / ps[0].coef);
    const double step = 2.0 * (ps[1].power - ps[0].power);
    const double half = gamma / 2.0;
    asymptotic_law law;
    double binom = 1.0;
    double scale = std::pow(cd, gamma);
    for (int j = 0; j < 256; ++j) {
        const double power = gamma * ps[0].power + j * step;
        if (binom == 0.0) {
            return law;  // binomial series terminates
        }
        if (power < 0.0) {
            return law.with_remainder(power);
        }
        law += asymptotic_law::term(scale * binom, power);
        binom *= (half - j) / (j + 1.0);
        scale *= ratio2;
    }
    return law.with_remainder(gamma * ps[0].power + 256 * step);
}

asymptotic_law log_abs_exact(const power_law_params& p, double* remainder)
{
    const auto ps = parts_of(p);
    *remainder = -std::numeric_limits<double>::infinity();
    double c = std::abs(ps[0].coef);
    if (ps.size() == 2) {
        if (ps[0].power == ps[1].power) {
            c = std::hypot(ps[0].coef, ps[1].coef);
        } else {
            *remainder = 2.0 * (ps[1].power - ps[0].power);
        }
    }
    return asymptotic_law::constant(std::log(c)) + asymptotic_law::term(ps[0].power, 0.0, 1);
}

}  // namespace

spectrum_family spectrum_family::explicit_points(std::vector<complex_value> points)
{
    if (points.empty()) {
        throw std::invalid_argument("explicit spectrum: at least one point required");
    }
    std::set<std::pair<double, double>> seen;
    for (const auto& z : points) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("explicit spectrum: points must be finite");
        }
        if (!seen.insert({z.real(), z.imag()}).second) {
            std::ostringstream os;
            os << "explicit spectrum: duplicate eigenvalue (" << z.real() << ", " << z.imag() << ")";
            throw std::invalid_argument(os.str());
        }
    }
    spectrum_family s;
    s.kind_ = spectrum_kind::explicit_points;
    std::ostringstream os;
    os << "explicit(" << points.size() << " points)";
    s.description_ = os.str();
    s.points_ = std::move(points);
    return s;
}

spectrum_family spectrum_family::power_law(power_law_params params)
{
    validate(params);
    spectrum_family s;
    s.kind_ = spectrum_kind::power_law;
    s.tail_ = params;
    s.description_ = describe_law(params);
    return s;
}

spectrum_family spectrum_family::custom(generator rule, std::optional<power_law_params> declared_tail,
                                        std::string description)
{
    if (!rule) {
        throw std::invalid_argument("custom spectrum: missing generator");
    }
    if (declared_tail) {
        validate(*declared_tail);
    }
    spectrum_family s;
    s.kind_ = spectrum_kind::custom;
    s.rule_ = std::move(rule);
    s.tail_ = declared_tail;
    s.description_ = description.empty() ? "custom" : std::move(description);
    return s;
}

std::optional<index_t> spectrum_family::size() const
{
    if (finite()) {
        return static_cast<index_t>(points_.size());
    }
    return std::nullopt;
}

complex_value spectrum_family::at(index_t k) const
{
    if (k < 1) {
        throw std::out_of_range("spectrum index must be >= 1");
    }
    switch (kind_) {
    case spectrum_kind::explicit_points:
        if (k > static_cast<index_t>(points_.size())) {
            throw std::out_of_range("spectrum index beyond explicit list");
        }
        return points_[static_cast<std::size_t>(k - 1)];
    case spectrum_kind::power_law: {
        const double x = static_cast<double>(k);
        const auto& p = *tail_;
        const double re = p.a_re == 0.0 ? 0.0 : p.a_re * std::pow(x, p.p_re);
        const double im = p.a_im == 0.0 ? 0.0 : p.a_im * std::pow(x, p.p_im);
        return {re, im};
    }
    case spectrum_kind::custom: {
        const complex_value z = rule_(k);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            std::ostringstream os;
            os << "custom spectrum produced a non-finite value at k=" << k;
            throw domain_error(os.str());
        }
        return z;
    }
    }
    return {};
}

std::optional<asymptotic_law> spectrum_family::re_law() const
{
    if (!tail_) {
        return std::nullopt;
    }
    auto law = tail_->a_re == 0.0 ? asymptotic_law::zero() : asymptotic_law::term(tail_->a_re, tail_->p_re);
    return tail_exact() ? law : law.with_remainder(0.0);
}

std::optional<asymptotic_law> spectrum_family::im_law() const
{
    if (!tail_) {
        return std::nullopt;
    }
    auto law = tail_->a_im == 0.0 ? asymptotic_law::zero() : asymptotic_law::term(tail_->a_im, tail_->p_im);
    return tail_exact() ? law : law.with_remainder(0.0);
}

std::optional<asymptotic_law> spectrum_family::log_abs_law() const
{
    if (!tail_) {
        return std::nullopt;
    }
    double rem = 0;
    auto law = log_abs_exact(*tail_, &rem);
    if (!tail_exact()) {
        rem = std::max(rem, -parts_of(*tail_).front().power);
    }
    return law.with_remainder(rem);
}

std::optional<asymptotic_law> spectrum_family::abs_pow_law(double gamma) const
{
    if (!tail_) {
        return std::nullopt;
    }
    if (!std::isfinite(gamma) || gamma < 0) {
        throw std::invalid_argument("abs_pow_law: exponent must be finite and >= 0");
    }
    auto law = abs_pow_exact(*tail_, gamma);
    if (!tail_exact()) {
        const double d = parts_of(*tail_).front().power;
        law = law.with_remainder((gamma - 1.0) * d);
    }
    return law;
}

std::optional<index_t> spectrum_family::index_beyond(double radius) const
{
    if (finite()) {
        return static_cast<index_t>(points_.size()) + 1;
    }
    if (kind_ != spectrum_kind::power_law) {
        return std::nullopt;
    }
    if (radius < 0) {
        return index_t{1};
    }
    // |lambda_k| >= |c_D| k^D
    const auto lead = parts_of(*tail_).front();
    const double k = std::pow(radius / std::abs(lead.coef), 1.0 / lead.power);
    constexpr double cap = 4.0e18;
    if (!(k < cap)) {
        return static_cast<index_t>(cap);
    }
    return static_cast<index_t>(std::floor(k)) + 1;
}

std::optional<double> spectrum_family::sup_re() const
{
    if (finite()) {
        double m = neg_inf;
        for (const auto& z : points_) {
            m = std::max(m, z.real());
        }
        return m;
    }
    if (!tail_) {
        return std::nullopt;
    }
    const bool grows = tail_->a_re > 0 && tail_->p_re > 0;
    if (grows) {
        return pos_inf;
    }
    if (!tail_exact()) {
        return std::nullopt;  // bounded, but the bound is not declared
    }
    return tail_->a_re;  // k = 1 attains the sup when a_re <= 0 or p_re = 0
}

double spectrum_family::max_abs() const
{
    if (!finite()) {
        return pos_inf;
    }
    double m = 0.0;
    for (const auto& z : points_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

spectrum_ptr make_spectrum(spectrum_family s)
{
    return std::make_shared<const spectrum_family>(std::move(s));
}

borel_set borel_set::plane()
{
    return {[](complex_value) { return true; }, "C", std::nullopt, 0.0};
}

borel_set borel_set::empty()
{
    return {[](complex_value) { return false; }, "{}", 0.0, std::nullopt};
}

borel_set borel_set::re_at_least(double x)
{
    std::ostringstream os;
    os << "Re >= " << x;
    return {[x](complex_value z) { return z.real() >= x; }, os.str(), std::nullopt, std::nullopt};
}

borel_set borel_set::abs_greater(double r)
{
    std::ostringstream os;
    os << "|z| > " << r;
    return {[r](complex_value z) { return std::abs(z) > r; }, os.str(), std::nullopt, r};
}

borel_set borel_set::abs_at_most(double r)
{
    std::ostringstream os;
    os << "|z| <= " << r;
    return {[r](complex_value z) { return std::abs(z) <= r; }, os.str(), r, std::nullopt};
}

borel_set borel_set::from_predicate(std::function<bool(complex_value)> p, std::string description)
{
    if (!p) {
        throw std::invalid_argument("borel_set: missing predicate");
    }
    return {std::move(p), std::move(description), std::nullopt, std::nullopt};
}

borel_set intersect(const borel_set& a, const borel_set& b)
{
    borel_set out;
    out.contains = [pa = a.contains, pb = b.contains](complex_value z) { return pa(z) && pb(z); };
    out.description = "(" + a.description + ") & (" + b.description + ")";
    if (a.within_radius && b.within_radius) {
        out.within_radius = std::min(*a.within_radius, *b.within_radius);
    } else {
        out.within_radius = a.within_radius ? a.within_radius : b.within_radius;
    }
    if (a.covers_beyond && b.covers_beyond) {
        out.covers_beyond = std::max(*a.covers_beyond, *b.covers_beyond);
    }
    return out;
}

borel_set unite(const borel_set& a, const borel_set& b)
{
    borel_set out;
    out.contains = [pa = a.contains, pb = b.contains](complex_value z) { return pa(z) || pb(z); };
    out.description = "(" + a.description + ") | (" + b.description + ")";
    if (a.within_radius && b.within_radius) {
        out.within_radius = std::max(*a.within_radius, *b.within_radius);
    }
    if (a.covers_beyond && b.covers_beyond) {
        out.covers_beyond = std::min(*a.covers_beyond, *b.covers_beyond);
    } else {
        out.covers_beyond = a.covers_beyond ? a.covers_beyond : b.covers_beyond;
    }
    return out;
}

}  // namespace gevrey
