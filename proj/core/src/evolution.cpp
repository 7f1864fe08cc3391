#include "gevrey/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {

const char* to_string(tail_rule_kind k)
{
    switch (k) {
    case tail_rule_kind::explicit_finite: return "explicit_finite";
    case tail_rule_kind::re_bounded_above: return "re_bounded_above";
    case tail_rule_kind::decay_dominates: return "decay_dominates";
    case tail_rule_kind::witness_failure: return "witness_failure";
    case tail_rule_kind::unknown: return "unknown";
    }
    return "?";
}

namespace {

// Closed-form decision of f in D(e^{tA}) for all t >= 0.
admissibility_certificate closed_form(const coefficient_vector& f)
{
    admissibility_certificate c;
    const auto& s = *f.spectrum();
    if (f.support_length()) {
        c.admissible = membership::member;
        c.rule.kind = tail_rule_kind::explicit_finite;
        c.detail = "finitely many nonzero coordinates";
        return c;
    }
    const auto tail = s.tail();
    if (!tail) {
        c.detail = "spectrum has no declared tail";
        return c;
    }
    const bool re_grows = tail->a_re > 0 && tail->p_re > 0;
    if (!re_grows) {
        c.admissible = membership::member;
        c.rule.kind = tail_rule_kind::re_bounded_above;
        if (auto w = s.sup_re()) {
            c.rule.omega = *w;
            c.detail = "Re lambda_k <= omega; |e^{t lambda_k} f_k| <= e^{t omega} |f_k|";
        } else {
            double m = neg_inf;
            for (index_t k = 1; k <= 4096; ++k) {
                m = std::max(m, s.at(k).real());
            }
            c.rule.omega = m;
            c.detail = "declared tail bounded above; omega is the max over k <= 4096";
        }
        return c;
    }
    const auto lead = f.law() ? f.law()->leading() : std::nullopt;
    if (!lead || !(f.law()->exact() || f.law()->remainder_power() < tail->p_re)) {
        c.detail = "Re lambda_k grows but the decay of f has no usable expansion";
        return c;
    }
    c.rule.r = lead->power;
    c.rule.q = lead->log_power;
    c.rule.p_re = tail->p_re;
    const int cmp = compare_growth(lead->power, lead->log_power, tail->p_re, 0);
    if (cmp > 0 && lead->coef < 0) {
        c.admissible = membership::member;
        c.rule.kind = tail_rule_kind::decay_dominates;
        c.detail = "decay k^r (ln k)^q outgrows t Re lambda_k for every t";
        return c;
    }
    c.admissible = membership::non_member;
    c.rule.kind = tail_rule_kind::witness_failure;
    if (cmp == 0 && lead->coef < 0) {
        // (t a - c) k^{p_re} is positive from t = c / a on
        c.rule.t = 2.0 * (-lead->coef) / tail->a_re;
        c.detail = "decay rate equals the growth of Re lambda_k; terms grow for t > c/a";
    } else {
        c.rule.t = 1.0;
        c.detail = "Re lambda_k outgrows the decay of f";
    }
    return c;
}

}  // namespace

admissibility_certificate check_admissible(const coefficient_vector& f, double t_max, const series_budget& budget)
{
    if (!(t_max > 0) || !std::isfinite(t_max)) {
        throw std::invalid_argument("t_max must be a finite real > 0");
    }
    auto c = closed_form(f);
    std::vector<double> times{0.0, 1.0, t_max / 2.0, t_max};
    if (c.rule.kind == tail_rule_kind::witness_failure) {
        times.push_back(c.rule.t);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const auto b = decision_budget(budget);
    for (double t : times) {
        auto v = domain_member_direct(symbol_function::exp(t), f, b);
        const bool bad = (c.admissible == membership::member && v.is_non_member()) ||
                         (c.rule.kind == tail_rule_kind::witness_failure && t == c.rule.t && v.is_member());
        if (bad) {
            std::ostringstream os;
            os << "admissibility rule " << to_string(c.rule.kind) << " contradicted by the direct test at t=" << t
               << ": " << v.certificate.detail;
            throw consistency_error(os.str());
        }
        if (c.admissible == membership::unknown && v.is_non_member()) {
            c.admissible = membership::non_member;
            c.rule.kind = tail_rule_kind::witness_failure;
            c.rule.t = t;
            c.detail += "; direct test diverges at t";
        }
        c.checked_times.push_back(t);
        c.probes.push_back(std::move(v));
    }
    return c;
}

solution_handle::solution_handle(coefficient_vector f, admissibility_certificate cert)
    : f_(std::move(f)), cert_(std::move(cert))
{
    if (!cert_.ok()) {
        throw domain_error("initial vector is not certified admissible (" + std::string(to_string(cert_.admissible)) +
                           ", " + cert_.detail + ")");
    }
}

solution_handle make_solution(const coefficient_vector& f, double t_max, const series_budget& budget)
{
    return solution_handle(f, check_admissible(f, t_max, budget));
}

coefficient_vector solve(const solution_handle& h, double t, const series_budget& budget)
{
    if (!(t >= 0) || !std::isfinite(t)) {
        throw std::invalid_argument("solve: t must be a finite real >= 0");
    }
    if (t == 0.0) {
        return h.initial();
    }
    return apply_symbol(symbol_function::exp(t), h.initial(), decision_budget(budget));
}

coefficient_vector derivative(const solution_handle& h, double t, int n, const series_budget& budget)
{
    if (!(t >= 0) || !std::isfinite(t)) {
        throw std::invalid_argument("derivative: t must be a finite real >= 0");
    }
    if (n < 0) {
        throw std::invalid_argument("derivative: order must be >= 0");
    }
    const auto b = decision_budget(budget);
    const auto e = symbol_function::exp(t);
    for (int m = 0; m <= n; ++m) {
        const auto v = domain_member_direct(symbol_function::power(m) * e, h.initial(), b);
        if (!v.is_member()) {
            std::ostringstream os;
            os << "derivative of order " << m << " at t=" << t << " is not certified (" << to_string(v.member)
               << ": " << v.certificate.detail << ")";
            throw domain_error(os.str());
        }
    }
    return apply_symbol(symbol_function::power(n) * e, h.initial(), b);
}

double weak_solution_residual(const solution_handle& h, const coefficient_vector& g, const std::vector<double>& t_grid,
                              double eps)
{
    const auto& f = h.initial();
    const auto len = f.support_length();
    if (!len) {
        throw std::invalid_argument("weak_solution_residual: needs finitely many nonzero coordinates");
    }
    if (!same_space(f, g)) {
        throw std::invalid_argument("weak_solution_residual: g belongs to a different space");
    }
    if (!(eps > 0) || !std::isfinite(eps)) {
        throw std::invalid_argument("weak_solution_residual: eps must be > 0");
    }
    const auto& s = *f.spectrum();
    std::vector<complex_value> lambda, gk;
    for (index_t k = 1; k <= *len; ++k) {
        lambda.push_back(s.at(k));
        gk.push_back(g.at(k).to_complex());
        if (!std::isfinite(std::abs(gk.back() * lambda.back()))) {
            throw domain_error("weak_solution_residual: g is outside the adjoint domain");
        }
    }
    // <y(t), g> and <y(t), A*g> with y(t) from solve
    auto pairings = [&](double t) {
        const auto y = solve(h, t);
        complex_value a{}, b{};
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const complex_value yk = y.at(static_cast<index_t>(i) + 1).to_complex();
            a += yk * gk[i];
            b += yk * (lambda[i] * gk[i]);
        }
        return std::pair{a, b};
    };
    auto pair = [&](double t) { return pairings(t).first; };
    auto pair_adjoint = [&](double t) { return pairings(t).second; };
    double worst = 0.0;
    for (double t : t_grid) {
        if (!(t >= 0) || !std::isfinite(t)) {
            throw std::invalid_argument("weak_solution_residual: grid times must be finite and >= 0");
        }
        complex_value d;
        if (t >= eps) {
            d = (pair(t + eps) - pair(t - eps)) / (2.0 * eps);
        } else {
            d = (-3.0 * pair(t) + 4.0 * pair(t + eps) - pair(t + 2.0 * eps)) / (2.0 * eps);
        }
        worst = std::max(worst, std::abs(d - pair_adjoint(t)));
    }
    return worst;
}

}  // namespace gevrey
