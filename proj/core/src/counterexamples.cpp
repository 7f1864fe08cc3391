#include "gevrey/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {

const char* to_string(plan_case c)
{
    return c == plan_case::bounded_real_parts ? "bounded" : "unbounded";
}

const char* to_string(analyticity a)
{
    switch (a) {
    case analyticity::analytic_at_zero: return "analytic_at_zero";
    case analyticity::not_analytic: return "not_analytic";
    case analyticity::unknown: return "unknown";
    }
    return "?";
}

namespace {

std::string sequence_text(const power_law_params& mu)
{
    std::ostringstream os;
    os << "mu_n = " << mu.a_re << "*n^" << mu.p_re << " + i*" << mu.a_im << "*n^" << mu.p_im;
    return os.str();
}

constexpr int disk_samples = 256;

complex_value eval_law(const power_law_params& p, double n)
{
    const double re = p.a_re == 0.0 ? 0.0 : p.a_re * std::pow(n, p.p_re);
    const double im = p.a_im == 0.0 ? 0.0 : p.a_im * std::pow(n, p.p_im);
    return {re, im};
}

// Re z < n^-2 |Im z|^{1/beta}
bool violates(complex_value z, double n, double beta)
{
    return z.real() < std::pow(std::abs(z.imag()), 1.0 / beta) / (n * n);
}

bool near_or_above(double x, double bound)
{
    return x >= bound - 1e-12 * std::max(1.0, std::abs(bound));
}

// Conditions on mu for every n >= 1, from exponents and coefficients alone.
bool plan_algebra(const power_law_params& mu, double beta, plan_case kind, std::string* why)
{
    const double A = mu.a_re;
    const double B = std::abs(mu.a_im);
    // Re mu_n < n^-2 |Im mu_n|^{1/beta}
    if (A > 0) {
        if (B == 0.0) {
            *why = "positive real parts with no imaginary part";
            return false;
        }
        const double e = mu.p_im / beta - 2.0 - mu.p_re;
        if (!near_or_above(e, 0.0) || !(std::pow(B, 1.0 / beta) > A)) {
            *why = "Re mu_n < n^-2 |Im mu_n|^{1/beta} fails for some n";
            return false;
        }
    } else if (A == 0.0 && B == 0.0) {
        *why = "zero sequence";
        return false;
    }
    // |mu_n| > n, strictly increasing
    const bool re_dom = A != 0.0 && near_or_above(mu.p_re, 1.0) && std::abs(A) > 1.0;
    const bool im_dom = B != 0.0 && near_or_above(mu.p_im, 1.0) && B > 1.0;
    if (!re_dom && !im_dom) {
        *why = "|mu_n| > n not guaranteed";
        return false;
    }
    if (kind == plan_case::unbounded_real_parts) {
        if (!(A >= 1.0) || !near_or_above(mu.p_re, 1.0)) {
            *why = "Re mu_n >= n not guaranteed";
            return false;
        }
    } else if (A > 0 && mu.p_re > 0) {
        *why = "real parts unbounded in the bounded case";
        return false;
    }
    return true;
}

}  // namespace

complex_value violating_plan::lambda(index_t n) const
{
    if (n < 1) {
        throw std::out_of_range("plan index must be >= 1");
    }
    return eval_law(mu, static_cast<double>(n));
}

double violating_plan::epsilon_at(index_t n) const
{
    const double x = static_cast<double>(n);
    const double m = std::abs(lambda(n));
    double eps = 1.0 / (2.0 * x);
    if (n > 1) {
        eps = std::min(eps, 0.5 * (m - std::abs(lambda(n - 1))));
    }
    eps = std::min(eps, 0.5 * (std::abs(lambda(n + 1)) - m));
    if (!(eps > 0)) {
        throw domain_error("plan: moduli not strictly increasing at n=" + std::to_string(n));
    }
    const complex_value c = lambda(n);
    for (int attempt = 0; attempt < 60; ++attempt) {
        bool inside = violates(c, x, beta);
        for (int i = 0; inside && i < disk_samples; ++i) {
            const double th = 2.0 * pi * i / disk_samples;
            inside = violates(c + std::polar(eps, th), x, beta);
        }
        if (inside) {
            return eps;
        }
        eps *= 0.5;
    }
    throw domain_error("plan: no disk around mu_n inside the violating region at n=" + std::to_string(n));
}

void verify_plan(violating_plan& plan, index_t prefix)
{
    if (prefix < 2) {
        throw std::invalid_argument("verify_plan: prefix must be >= 2");
    }
    std::string why;
    if (!plan_algebra(plan.mu, plan.beta, plan.kind, &why)) {
        throw domain_error("plan tail check: " + why);
    }
    plan.epsilon.clear();
    plan.epsilon.reserve(static_cast<std::size_t>(prefix));
    double prev_abs = 0.0;
    for (index_t n = 1; n <= prefix; ++n) {
        const double x = static_cast<double>(n);
        const complex_value z = plan.lambda(n);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw domain_error("plan: mu_n overflows at n=" + std::to_string(n));
        }
        std::ostringstream where;
        where << " at n=" << n;
        if (!violates(z, x, plan.beta)) {
            throw domain_error("plan: Re mu_n < n^-2 |Im mu_n|^{1/beta} fails" + where.str());
        }
        const double m = std::abs(z);
        if (!(m > std::max(x, prev_abs))) {
            throw domain_error("plan: |mu_n| > max(n, |mu_{n-1}|) fails" + where.str());
        }
        if (plan.kind == plan_case::unbounded_real_parts && !(z.real() >= x)) {
            throw domain_error("plan: Re mu_n >= n fails" + where.str());
        }
        if (plan.kind == plan_case::bounded_real_parts && z.real() > plan.omega) {
            throw domain_error("plan: Re mu_n exceeds omega" + where.str());
        }
        const double eps = plan.epsilon_at(n);
        if (!(eps > 0 && eps < 1.0 / x)) {
            throw domain_error("plan: eps_n outside (0, 1/n)" + where.str());
        }
        plan.epsilon.push_back(eps);
        prev_abs = m;
    }
    plan.verified_prefix = prefix;
}

violating_plan build_violating_spectrum(double beta, plan_case kind, index_t prefix)
{
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("build_violating_spectrum: beta must be >= 1");
    }
    violating_plan p;
    p.beta = beta;
    p.kind = kind;
    if (kind == plan_case::bounded_real_parts) {
        p.mu = {0.0, 0.0, 2.0, 2.0 * beta};
        p.omega = 0.0;
    } else {
        p.mu = {1.0, 1.0, 2.0, 3.0 * beta + 1.0};
        p.omega = pos_inf;
    }
    p.parent = p.mu;
    verify_plan(p, prefix);
    std::ostringstream os;
    os << "canonical " << to_string(kind) << " plan: " << sequence_text(p.mu);
    p.detail = os.str();
    return p;
}

violating_plan select_violating_subsequence(const spectrum_family& sigma, double beta, index_t prefix)
{
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("select_violating_subsequence: beta must be >= 1");
    }
    if (sigma.kind() != spectrum_kind::power_law) {
        throw std::invalid_argument("select_violating_subsequence: needs a power law family");
    }
    const auto region = region_condition(sigma, beta);
    if (region.status != region_status::violated) {
        throw domain_error("select_violating_subsequence: region condition is not violated");
    }
    const auto par = *sigma.tail();
    violating_plan p;
    p.beta = beta;
    p.parent = par;
    const bool bounded = par.a_re <= 0 || par.p_re == 0.0;
    p.kind = bounded ? plan_case::bounded_real_parts : plan_case::unbounded_real_parts;
    std::string why;
    for (index_t step = 1; step <= 64; ++step) {
        for (index_t scale = 1; scale <= 4096; ++scale) {
            const double c = static_cast<double>(scale);
            const double j = static_cast<double>(step);
            power_law_params mu{par.a_re == 0.0 ? 0.0 : par.a_re * std::pow(c, par.p_re), j * par.p_re,
                                par.a_im == 0.0 ? 0.0 : par.a_im * std::pow(c, par.p_im), j * par.p_im};
            if (!plan_algebra(mu, beta, p.kind, &why)) {
                continue;
            }
            p.scale = scale;
            p.step = step;
            p.mu = mu;
            // sup over n >= 1 of a n^P when a <= 0 or P = 0
            p.omega = bounded ? mu.a_re : pos_inf;
            verify_plan(p, prefix);
            std::ostringstream os;
            os << to_string(p.kind) << " plan drawn from " << sigma.description() << " along m(n) = " << scale << "*n^"
               << step << ": " << sequence_text(mu);
            p.detail = os.str();
            return p;
        }
    }
    throw domain_error("select_violating_subsequence: no m(n) = c n^j found (" + why + ")");
}

counterexample_artifacts build_counterexample(const violating_plan& plan, const std::vector<double>& probe_s,
                                              const classifier_options& options)
{
    if (plan.verified_prefix < 2) {
        throw std::invalid_argument("build_counterexample: plan has not been verified");
    }
    auto spectrum = make_spectrum(spectrum_family::power_law(plan.mu));
    const double A = plan.mu.a_re;
    const double P = plan.mu.p_re;
    const bool bounded = plan.kind == plan_case::bounded_real_parts;

    // bounded: f_k = k^-2; unbounded: f_k = e^{-k Re mu_k}, h_k = e^{-(k/2) Re mu_k}
    auto f = bounded ? coefficient_vector::decay(spectrum, {0.0, 0.0, 0.0, 0, 2.0})
                     : coefficient_vector::decay(spectrum, {0.0, A, 1.0 + P, 0, 0.0});
    std::optional<coefficient_vector> h;
    if (!bounded) {
        h = coefficient_vector::decay(spectrum, {0.0, A / 2.0, 1.0 + P, 0, 0.0});
    }
    auto h_star = coefficient_vector::decay(spectrum, {0.0, 0.0, 0.0, 0, 2.0}, dual_exponent(f.p()));

    counterexample_artifacts out{spectrum, f, h, h_star, {}, {}, {}, 0, {}};
    std::ostringstream notes;
    notes << plan.detail;

    out.admissibility = check_admissible(f, 100.0, options.budget);
    if (!out.admissibility.ok()) {
        throw consistency_error("counterexample f is not admissible: " + out.admissibility.detail);
    }
    if (h) {
        const auto ha = check_admissible(*h, 100.0, options.budget);
        if (!ha.ok()) {
            throw consistency_error("auxiliary h is not admissible: " + ha.detail);
        }
        // e^{-(n/2 - t) Re mu_n} stays bounded for fixed t; record the bound for t = 1
        double bound = neg_inf;
        index_t at = 0;
        for (index_t n = 1; n <= plan.verified_prefix; ++n) {
            const double x = -(static_cast<double>(n) / 2.0 - 1.0) * plan.lambda(n).real();
            if (x > bound) {
                bound = x;
                at = n;
            }
        }
        notes << "; log L(t=1) = " << bound << " attained at n=" << at;
    }

    out.non_membership = vector_class(f, plan.beta, gevrey_flavor::roumieu, options);
    if (!out.non_membership.is_non_member()) {
        throw consistency_error("counterexample f is not certified outside the Roumieu class: " +
                                out.non_membership.detail);
    }

    series_budget full = options.budget;
    full.value_sweep = full.k_max;
    for (double s : probe_s) {
        const auto w = symbol_function::gevrey_exp(s, plan.beta).as_weight();
        auto c = total_variation(f, h_star, borel_set::plane(), w, full);
        if (c.converges()) {
            throw consistency_error("k^-2 dual probe converges for the counterexample");
        }
        out.h_star_probes.push_back({s, c});
    }

    // termwise lower bounds used in the proof
    const index_t n_check = std::min<index_t>(plan.verified_prefix, 2000);
    for (double s : probe_s) {
        for (index_t k = 1; k <= n_check; ++k) {
            const double x = static_cast<double>(k);
            const complex_value z = spectrum->at(k);
            const double lk = std::log(x);
            const double term = s * std::pow(std::abs(z), 1.0 / plan.beta) + f.log_abs(k) + h_star.log_abs(k);
            const double lower = bounded ? s * std::pow(x, 1.0 / plan.beta) - 4.0 * lk
                                         : (s * x - 1.0) * x * z.real() - s * x - 2.0 * lk;
            if (term < lower - 1e-9 * std::max(1.0, std::abs(lower))) {
                std::ostringstream os;
                os << "termwise lower bound fails at k=" << k << ", s=" << s;
                throw consistency_error(os.str());
            }
        }
    }
    out.lower_bound_checked = n_check;
    out.detail = notes.str();
    return out;
}

analyticity_report analytic_at_zero_probe(const solution_handle& h, const std::vector<double>& radius_grid,
                                          int n_max, const classifier_options& options)
{
    if (n_max < 4) {
        throw std::invalid_argument("analytic_at_zero_probe: n_max must be >= 4");
    }
    const auto& f = h.initial();
    std::vector<double> grid = radius_grid;
    if (grid.empty()) {
        if (f.spectrum()->finite() && f.spectrum()->max_abs() > 0) {
            grid.push_back(1.0 / f.spectrum()->max_abs());
        }
        for (int j = 4; j >= -20; --j) {
            grid.push_back(std::exp2(j));
        }
    }
    for (double d : grid) {
        if (!(d > 0) || !std::isfinite(d)) {
            throw std::invalid_argument("analytic_at_zero_probe: radii must be finite and > 0");
        }
    }
    analyticity_report r;
    std::ostringstream notes;
    series_budget full = options.budget;
    full.value_sweep = full.k_max;
    const auto norms = power_norms(f, n_max, full);
    if (norms.cutoff) {
        const auto& last = norms.cutoff_reason;
        if (last.rfind("non_member", 0) == 0) {
            r.status = analyticity::not_analytic;
            notes << "f is outside D(A^" << *norms.cutoff << ")";
        } else {
            notes << "power norms undecided at n=" << *norms.cutoff;
        }
        r.detail = notes.str();
        return r;
    }
    std::optional<double> scan;
    for (double d : grid) {
        double first = neg_inf;
        double second = neg_inf;
        for (int n = 0; n <= n_max; ++n) {
            const double x = norms.log_norms[static_cast<std::size_t>(n)] - std::lgamma(n + 1.0) + n * std::log(d);
            (2 * n <= n_max ? first : second) = std::max(2 * n <= n_max ? first : second, x);
        }
        if (second <= first + 1e-9) {
            scan = d;
            break;
        }
    }
    const auto roumieu = vector_class(f, 1.0, gevrey_flavor::roumieu, options);
    if (scan) {
        notes << "Taylor terms bounded at delta=" << *scan << "; ";
    } else {
        notes << "Taylor terms unbounded on every grid radius; ";
    }
    notes << "beta=1 roumieu: " << to_string(roumieu.member);
    if (roumieu.is_member()) {
        r.status = analyticity::analytic_at_zero;
        r.delta = scan ? *scan : roumieu.s_low;
    } else if (roumieu.is_non_member()) {
        r.status = analyticity::not_analytic;
    }
    r.detail = notes.str();
    return r;
}

}  // namespace gevrey
