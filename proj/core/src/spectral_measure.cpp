#include "gevrey/spectral_measure.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {
namespace {

void require_same_space(const coefficient_vector& f, const coefficient_vector& g)
{
    if (!same_space(f, g)) {
        throw std::invalid_argument("vectors belong to different spectrum families");
    }
}

// Support length of E(delta) f implied by the set's radius facts.
std::optional<index_t> masked_support(const coefficient_vector& f, const borel_set& delta)
{
    auto len = f.support_length();
    if (delta.within_radius) {
        if (auto k = f.spectrum()->index_beyond(*delta.within_radius)) {
            const index_t bound = *k - 1;
            len = len ? std::min(*len, bound) : bound;
        }
    }
    return len;
}

}  // namespace

log_weight log_weight::unit()
{
    return {[](complex_value) { return 0.0; },
            [](const spectrum_family&) -> std::optional<asymptotic_law> { return asymptotic_law::zero(); }, "1"};
}

coefficient_vector project(const coefficient_vector& f, const borel_set& delta)
{
    const auto& s = f.spectrum();
    if (f.kind() == vector_kind::explicit_coords || s->finite()) {
        const auto n = *f.support_length();
        std::vector<log_polar> coords(static_cast<std::size_t>(n));
        for (index_t k = 1; k <= n; ++k) {
            if (delta(s->at(k))) {
                coords[static_cast<std::size_t>(k - 1)] = f.at(k);
            }
        }
        return coefficient_vector::explicit_coords(s, std::move(coords), f.p());
    }
    // Masking only zeroes coordinates, so |g_k| <= |f_k| and the summability
    // of f carries over. The expansion survives when delta eventually contains
    // everything.
    std::optional<asymptotic_law> law;
    if (delta.covers_beyond && f.law()) {
        law = f.law();
    }
    auto base = std::make_shared<const coefficient_vector>(f);
    auto pred = delta.contains;
    auto gen = [base, pred](index_t k) {
        return pred(base->spectrum()->at(k)) ? base->at(k) : log_polar::zero();
    };
    convergence_certificate cert = f.summability();
    cert.detail = "dominated by " + f.description() + ": " + cert.detail;
    return coefficient_vector::certified_rule(s, gen, law, masked_support(f, delta),
                                              "E(" + delta.description + ")" + f.description(), f.p(), cert);
}

bool multiplicativity_check(const borel_set& d1, const borel_set& d2, const coefficient_vector& f, index_t prefix)
{
    const auto twice = project(project(f, d1), d2);
    const auto once = project(f, intersect(d1, d2));
    index_t n = prefix;
    if (auto len = f.spectrum()->size()) {
        n = *len;
    }
    for (index_t k = 1; k <= n; ++k) {
        const auto a = twice.at(k);
        const auto b = once.at(k);
        if (!(a == b)) {
            return false;
        }
    }
    return true;
}

std::vector<pairing_atom> pairing_measure(const coefficient_vector& f, const coefficient_vector& g, index_t n)
{
    require_same_space(f, g);
    if (auto len = f.spectrum()->size()) {
        n = std::min(n, *len);
    }
    std::vector<pairing_atom> atoms;
    for (index_t k = 1; k <= n; ++k) {
        atoms.push_back({k, f.spectrum()->at(k), f.at(k) * g.at(k)});
    }
    return atoms;
}

series_spec variation_series(const coefficient_vector& f, const coefficient_vector& g, const borel_set& delta,
                             const log_weight& weight)
{
    require_same_space(f, g);
    if (!weight.log_value) {
        throw std::invalid_argument("weight has no evaluator");
    }
    auto fp = std::make_shared<const coefficient_vector>(f);
    auto gp = std::make_shared<const coefficient_vector>(g);
    series_spec s;
    s.log_term = [fp, gp, pred = delta.contains, w = weight.log_value](index_t k) {
        const double a = fp->log_abs(k);
        const double b = gp->log_abs(k);
        if (a == neg_inf || b == neg_inf) {
            return neg_inf;
        }
        const complex_value z = fp->spectrum()->at(k);
        if (!pred(z)) {
            return neg_inf;
        }
        const double lw = w(z);
        if (std::isnan(lw) || lw == pos_inf) {
            throw domain_error("weight is not finite at an eigenvalue");
        }
        return lw + a + b;
    };
    auto len = masked_support(f, delta);
    if (auto lg = g.support_length()) {
        len = len ? std::min(*len, *lg) : *lg;
    }
    s.length = len;
    if (delta.covers_beyond && f.law() && g.law() && weight.law) {
        if (auto wl = weight.law(*f.spectrum())) {
            s.law = *wl + *f.law() + *g.law();
        }
    }
    return s;
}

convergence_certificate total_variation(const coefficient_vector& f, const coefficient_vector& g,
                                        const borel_set& delta, const log_weight& weight,
                                        const series_budget& budget)
{
    auto cert = certify_series(variation_series(f, g, delta, weight), budget);
    if (cert.converges() && cert.log_value == neg_inf) {
        cert.detail = "empty: " + cert.detail;
    }
    return cert;
}

}  // namespace gevrey
