#include "gevrey/gevrey_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {

const char* to_string(gevrey_flavor f)
{
    return f == gevrey_flavor::roumieu ? "roumieu" : "beurling";
}

const char* to_string(region_status s)
{
    switch (s) {
    case region_status::holds: return "holds";
    case region_status::violated: return "violated";
    case region_status::unknown: return "unknown";
    }
    return "?";
}

namespace {

void check_beta(double beta)
{
    if (!(beta > 0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be a finite real > 0");
    }
}

bool remainder_below(const asymptotic_law& law, const monomial& m)
{
    return law.exact() || compare_growth(m.power, m.log_power, law.remainder_power(), 0) > 0;
}

}  // namespace

std::optional<double> critical_exponent_closed_form(const coefficient_vector& f, double beta)
{
    check_beta(beta);
    if (f.support_length()) {
        return pos_inf;
    }
    const auto w = f.spectrum()->abs_pow_law(1.0 / beta);
    const auto& l = f.law();
    if (!w || !l) {
        return std::nullopt;
    }
    const auto lw = w->leading();
    const auto lf = l->leading();
    if (!lw || !lf || lw->coef <= 0 || lw->power <= 0 || lf->coef >= 0) {
        return std::nullopt;
    }
    const int cmp = compare_growth(lf->power, lf->log_power, lw->power, lw->log_power);
    const monomial& top = cmp >= 0 ? *lf : *lw;
    if (!remainder_below(*w, top) || !remainder_below(*l, top)) {
        return std::nullopt;
    }
    if (cmp > 0) {
        return pos_inf;
    }
    if (cmp < 0) {
        return 0.0;
    }
    return -lf->coef / lw->coef;
}

gevrey_verdict vector_class(const coefficient_vector& f, double beta, gevrey_flavor flavor,
                            const classifier_options& options)
{
    check_beta(beta);
    if (!(options.log2_s_min < options.log2_s_max) || options.bisection_steps < 0) {
        throw std::invalid_argument("vector_class: invalid bisection range");
    }
    gevrey_verdict v;
    v.flavor = flavor;
    v.beta = beta;
    std::ostringstream notes;

    auto probe = [&](double log2s) {
        const double s = std::exp2(log2s);
        auto d = domain_member_direct(symbol_function::gevrey_exp(s, beta), f, options.budget);
        v.probes.push_back({s, d.certificate});
        return d.member;
    };

    if (f.support_length()) {
        probe(options.log2_s_max);
        if (!v.probes.back().certificate.converges()) {
            throw consistency_error("finite sum failed to certify");
        }
        v.member = membership::member;
        v.s_low = v.s_high = pos_inf;
        v.s_closed_form = pos_inf;
        v.detail = "finitely many nonzero coordinates: every weight is summable";
        return v;
    }

    const auto cf = critical_exponent_closed_form(f, beta);
    v.s_closed_form = cf;
    double lo = options.log2_s_min;
    double hi = options.log2_s_max;
    const membership m_lo = probe(lo);
    const membership m_hi = probe(hi);
    v.s_low = 0.0;
    v.s_high = pos_inf;
    if (m_hi == membership::member) {
        v.s_low = std::exp2(hi);
    } else if (m_lo == membership::non_member) {
        v.s_high = std::exp2(lo);
    } else if (m_lo == membership::member && m_hi == membership::non_member) {
        for (int i = 0; i < options.bisection_steps; ++i) {
            const double mid = 0.5 * (lo + hi);
            const auto m = probe(mid);
            if (m == membership::member) {
                lo = mid;
            } else if (m == membership::non_member) {
                hi = mid;
            } else {
                notes << "bisection stopped at an inconclusive probe; ";
                break;
            }
        }
        v.s_low = std::exp2(lo);
        v.s_high = std::exp2(hi);
    } else {
        if (m_lo == membership::member) {
            v.s_low = std::exp2(lo);
        }
        if (m_hi == membership::non_member) {
            v.s_high = std::exp2(hi);
        }
        notes << "bracket endpoints inconclusive; ";
    }

    if (cf) {
        const double slack = 1e-9;
        if (*cf < v.s_low * (1 - slack) || *cf > v.s_high * (1 + slack)) {
            std::ostringstream os;
            os << "closed-form s* = " << *cf << " outside the certified bracket [" << v.s_low << ", " << v.s_high
               << "] for " << f.description();
            throw consistency_error(os.str());
        }
        notes << "closed-form s* = " << *cf << "; ";
    } else {
        notes << "no closed form for s*; ";
    }

    if (flavor == gevrey_flavor::roumieu) {
        if (m_lo == membership::member) {
            v.member = membership::member;
            notes << "member at the smallest probed s";
        } else if (cf) {
            v.member = *cf > 0 ? membership::member : membership::non_member;
            notes << (*cf > 0 ? "s* > 0 by the expansions" : "s* = 0 by the expansions");
        } else if (m_lo == membership::non_member) {
            v.member = membership::non_member;
            notes << "diverges at the smallest probed s";
        } else {
            notes << "undecided";
        }
    } else {
        const bool refuted = v.s_high < pos_inf;
        if (refuted) {
            v.member = membership::non_member;
            notes << "diverges at a probed s";
        } else if (cf && std::isinf(*cf) && m_hi == membership::member) {
            v.member = membership::member;
            notes << "member at the largest probed s and s* = inf by the expansions";
        } else if (cf && !std::isinf(*cf)) {
            v.member = membership::non_member;
            notes << "s* finite by the expansions";
        } else {
            notes << "universal statement undecided";
        }
    }
    v.detail = notes.str();
    return v;
}

gevrey_verdict vector_class_beta0(const coefficient_vector& f)
{
    gevrey_verdict v;
    v.flavor = gevrey_flavor::roumieu;
    v.beta = 0.0;
    const auto& s = *f.spectrum();
    if (auto len = f.support_length()) {
        double alpha = 0.0;
        for (index_t k = 1; k <= *len; ++k) {
            if (!f.at(k).is_zero()) {
                alpha = std::max(alpha, std::abs(s.at(k)));
            }
        }
        v.member = membership::member;
        v.alpha = alpha;
        v.detail = "spectral support bounded by alpha";
        return v;
    }
    if (f.law() && s.tail()) {
        v.member = membership::non_member;
        v.alpha = pos_inf;
        v.detail = "coordinates nonzero along an unbounded tail of the spectrum";
        return v;
    }
    v.detail = "no support bound available";
    return v;
}

gevrey_verdict solution_class_at(const solution_handle& h, double t, double beta, gevrey_flavor flavor,
                                 const classifier_options& options)
{
    return vector_class(solve(h, t, options.budget), beta, flavor, options);
}

double region_ratio(complex_value lambda, double beta)
{
    const double im = std::abs(lambda.imag());
    if (im == 0.0) {
        return lambda.real() >= 0 ? pos_inf : neg_inf;
    }
    return lambda.real() / std::pow(im, 1.0 / beta);
}

bool in_region(complex_value lambda, double b_plus, double beta)
{
    return lambda.real() >= b_plus * std::pow(std::abs(lambda.imag()), 1.0 / beta);
}

namespace {

constexpr index_t ratio_prefix = 1024;

ratio_summary summarize(const spectrum_family& s, double beta)
{
    ratio_summary r;
    const index_t n = s.size() ? std::min(*s.size(), ratio_prefix) : ratio_prefix;
    for (index_t k = 1; k <= n; ++k) {
        const double x = region_ratio(s.at(k), beta);
        r.min = std::min(r.min, x);
        r.max = std::max(r.max, x);
        r.last = x;
        ++r.samples;
    }
    return r;
}

// Re lambda_k >= b |Im lambda_k|^{1/beta} up to a relative rounding slack.
bool satisfies(complex_value z, double b, double beta)
{
    const double rhs = b * std::pow(std::abs(z.imag()), 1.0 / beta);
    return z.real() >= rhs * (1.0 - 1e-12);
}

index_t clamp_index(double x)
{
    constexpr double cap = 4.0e18;
    if (!(x < cap)) {
        return static_cast<index_t>(cap);
    }
    return std::max<index_t>(1, static_cast<index_t>(std::floor(x)) + 1);
}

}  // namespace

region_report region_condition(const spectrum_family& sigma, double beta, bool allow_extrapolation)
{
    check_beta(beta);
    if (beta < 1.0 && !allow_extrapolation) {
        throw std::invalid_argument("region_condition: beta < 1 requires the extrapolation flag");
    }
    region_report r;
    r.beta = beta;
    r.extrapolated = beta < 1.0;
    r.ratio = summarize(sigma, beta);

    if (sigma.finite()) {
        r.status = region_status::holds;
        r.b_plus = 1.0;
        r.exception_radius = sigma.max_abs() + 1.0;
        r.detail = "finite spectrum is bounded";
        return r;
    }
    const auto tail = sigma.tail();
    if (!tail) {
        r.detail = "custom family without a declared tail";
        return r;
    }
    const double a = tail->a_re;
    const double b = std::abs(tail->a_im);
    const double P = tail->p_re;
    const double Q = tail->p_im;
    const double g = b == 0.0 ? 0.0 : Q / beta;  // growth exponent of |Im|^{1/beta}
    std::ostringstream notes;

    auto violate_all = [&](index_t count) {
        for (index_t k = 1; k <= count; ++k) {
            r.witness_indices.push_back(k);
        }
    };

    if (b == 0.0 && a > 0) {
        r.status = region_status::holds;
        r.b_plus = 1.0;
        r.exception_radius = 0.0;
        r.ratio.limit = pos_inf;
        notes << "real tail on the positive axis";
    } else if (a <= 0) {
        r.status = region_status::violated;
        r.ratio.limit = b == 0.0 ? neg_inf : 0.0;
        violate_all(8);
        notes << "Re lambda_k stays <= 0 (or bounded) while |lambda_k| grows";
    } else if (compare_growth(P, 0, g, 0) > 0) {
        r.status = region_status::holds;
        r.b_plus = 1.0;
        r.ratio.limit = pos_inf;
        // a k^P >= b^{1/beta} k^g  for  k >= (b^{1/beta} / a)^{1/(P - g)}
        const index_t k0 = clamp_index(std::pow(std::pow(b, 1.0 / beta) / a, 1.0 / (P - g)));
        r.exception_radius = k0 > 1 ? std::abs(sigma.at(k0 - 1)) : 0.0;
        notes << "Re part outgrows |Im|^{1/beta}; inequality from k = " << k0;
    } else if (compare_growth(P, 0, g, 0) == 0) {
        r.status = region_status::holds;
        r.b_plus = a / std::pow(b, 1.0 / beta);
        r.exception_radius = 0.0;
        r.ratio.limit = r.b_plus;
        notes << "Re lambda_k = b_plus |Im lambda_k|^{1/beta} exactly";
    } else {
        r.status = region_status::violated;
        r.ratio.limit = 0.0;
        // rho_k = (a / b^{1/beta}) k^{P - g} < n^-2  for  k > (a n^2 / b^{1/beta})^{1/(g - P)}
        index_t prev = 0;
        for (int n = 1; n <= 8; ++n) {
            const double x = std::pow(a * n * n / std::pow(b, 1.0 / beta), 1.0 / (g - P));
            index_t k = std::max(prev + 1, clamp_index(x));
            // x can round onto the boundary itself; step past it
            for (int step = 0; step < 64 && in_region(sigma.at(k), 1.0 / (n * n), beta); ++step) {
                ++k;
            }
            r.witness_indices.push_back(k);
            prev = k;
        }
        notes << "|Im|^{1/beta} outgrows the real part; witness k_n with rho < n^-2";
    }

    // numeric confirmation on the family's own values
    if (r.status == region_status::holds) {
        for (index_t k = 1; k <= ratio_prefix; ++k) {
            const auto z = sigma.at(k);
            if (std::abs(z) > r.exception_radius && !satisfies(z, r.b_plus, beta)) {
                if (sigma.tail_exact()) {
                    throw consistency_error("region closed form contradicted at k=" + std::to_string(k));
                }
                r.status = region_status::unknown;
                notes << "; declared tail contradicted at k=" << k;
                break;
            }
        }
    } else if (r.status == region_status::violated) {
        for (std::size_t i = 0; i < r.witness_indices.size(); ++i) {
            const auto z = sigma.at(r.witness_indices[i]);
            const double bn = 1.0 / ((i + 1.0) * (i + 1.0));
            if (in_region(z, bn, beta)) {
                if (sigma.tail_exact()) {
                    throw consistency_error("region witness fails at k=" + std::to_string(r.witness_indices[i]));
                }
                r.status = region_status::unknown;
                r.witness_indices.clear();
                notes << "; declared tail witness fails";
                break;
            }
            r.witness.push_back(z);
        }
    }
    if (r.extrapolated) {
        notes << "; beta < 1 is an extrapolation";
    }
    r.detail = notes.str();
    return r;
}

order_estimate estimate_order(const coefficient_vector& f, int n_min, int n_max, const series_budget& budget)
{
    if (n_min <= 0) {
        n_min = std::max(4, n_max / 4);
    }
    if (n_min < 4 || n_max - n_min < 2) {
        throw std::invalid_argument("estimate_order: need 4 <= n_min and at least three orders");
    }
    const auto norms = power_norms(f, n_max, budget);
    if (norms.cutoff) {
        std::ostringstream os;
        os << "estimate_order: power norms cut off at n=" << *norms.cutoff << " (" << norms.cutoff_reason << ")";
        throw domain_error(os.str());
    }
    // normal equations in long double over the columns 1, n, n ln n
    long double m[3][4] = {};
    for (int n = n_min; n <= n_max; ++n) {
        const long double y = norms.log_norms[static_cast<std::size_t>(n)];
        if (!std::isfinite(static_cast<double>(y))) {
            throw domain_error("estimate_order: zero or non-finite power norm");
        }
        const long double x[3] = {1.0L, static_cast<long double>(n), n * std::log(static_cast<long double>(n))};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m[i][j] += x[i] * x[j];
            }
            m[i][3] += x[i] * y;
        }
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int i = c + 1; i < 3; ++i) {
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) {
                piv = i;
            }
        }
        for (int j = 0; j < 4; ++j) {
            std::swap(m[c][j], m[piv][j]);
        }
        for (int i = 0; i < 3; ++i) {
            if (i == c) {
                continue;
            }
            const long double factor = m[i][c] / m[c][c];
            for (int j = c; j < 4; ++j) {
                m[i][j] -= factor * m[c][j];
            }
        }
    }
    const long double c0 = m[0][3] / m[0][0];
    const long double c1 = m[1][3] / m[1][1];
    const long double c2 = m[2][3] / m[2][2];
    order_estimate e;
    e.log_c = static_cast<double>(c0);
    e.alpha_hat = std::exp(static_cast<double>(c1));
    e.beta_hat = static_cast<double>(c2);
    e.n_min = n_min;
    e.n_max = n_max;
    e.log_norms = norms.log_norms;
    long double ss = 0;
    for (int n = n_min; n <= n_max; ++n) {
        const long double fit = c0 + c1 * n + c2 * n * std::log(static_cast<long double>(n));
        const long double d = norms.log_norms[static_cast<std::size_t>(n)] - fit;
        ss += d * d;
    }
    e.residual = static_cast<double>(std::sqrt(ss / (n_max - n_min + 1)));
    return e;
}

}  // namespace gevrey
