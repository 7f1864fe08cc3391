#include "gevrey/borel_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {

symbol_function symbol_function::power(int n)
{
    if (n < 0) {
        throw std::invalid_argument("power symbol needs n >= 0");
    }
    symbol_function f;
    symbol_factor x;
    x.kind = factor_kind::power;
    x.n = n;
    f.factors_.push_back(x);
    return f;
}

symbol_function symbol_function::exp(complex_value z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("exp symbol needs a finite z");
    }
    symbol_function f;
    symbol_factor x;
    x.kind = factor_kind::exp;
    x.z = z;
    f.factors_.push_back(x);
    return f;
}

symbol_function symbol_function::gevrey_exp(double s, double beta)
{
    if (!(s > 0) || !std::isfinite(s)) {
        throw std::invalid_argument("gevrey symbol needs a finite s > 0");
    }
    if (!(beta > 0) || !std::isfinite(beta)) {
        throw std::invalid_argument("gevrey symbol needs a finite beta > 0");
    }
    symbol_function f;
    symbol_factor x;
    x.kind = factor_kind::gevrey_exp;
    x.s = s;
    x.beta = beta;
    f.factors_.push_back(x);
    return f;
}

symbol_function operator*(const symbol_function& a, const symbol_function& b)
{
    symbol_function out = a;
    out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
    return out;
}

namespace {

log_polar eval_factor(const symbol_factor& x, complex_value lambda)
{
    switch (x.kind) {
    case factor_kind::power:
        if (x.n == 0) {
            return log_polar::one();
        }
        if (lambda == complex_value{}) {
            return log_polar::zero();
        }
        return log_polar::from_log(x.n * std::log(std::abs(lambda)), x.n * std::arg(lambda));
    case factor_kind::exp: {
        const double re = x.z.real() * lambda.real() - x.z.imag() * lambda.imag();
        const double im = x.z.real() * lambda.imag() + x.z.imag() * lambda.real();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw domain_error("exp symbol overflowed at an eigenvalue");
        }
        return log_polar::from_log(re, im);
    }
    case factor_kind::gevrey_exp: {
        const double m = std::abs(lambda);
        if (m == 0.0) {
            return log_polar::one();
        }
        return log_polar::from_log(x.s * std::pow(m, 1.0 / x.beta));
    }
    }
    return {};
}

}  // namespace

log_polar symbol_function::evaluate(complex_value lambda) const
{
    log_polar acc = log_polar::one();
    bool first = true;
    for (const auto& x : factors_) {
        const auto v = eval_factor(x, lambda);
        acc = first ? v : acc * v;
        first = false;
    }
    return acc;
}

std::optional<asymptotic_law> symbol_function::magnitude_law(const spectrum_family& s) const
{
    asymptotic_law law;
    for (const auto& x : factors_) {
        switch (x.kind) {
        case factor_kind::power: {
            if (x.n == 0) {
                break;
            }
            auto l = s.log_abs_law();
            if (!l) {
                return std::nullopt;
            }
            law += static_cast<double>(x.n) * *l;
            break;
        }
        case factor_kind::exp: {
            auto re = s.re_law();
            auto im = s.im_law();
            if (!re || !im) {
                return std::nullopt;
            }
            law += x.z.real() * *re;
            law += (-x.z.imag()) * *im;
            break;
        }
        case factor_kind::gevrey_exp: {
            auto l = s.abs_pow_law(1.0 / x.beta);
            if (!l) {
                return std::nullopt;
            }
            law += x.s * *l;
            break;
        }
        }
    }
    return law;
}

log_weight symbol_function::as_weight() const
{
    auto self = *this;
    return {[self](complex_value z) { return self.evaluate(z).log_mag; },
            [self](const spectrum_family& s) { return self.magnitude_law(s); }, describe()};
}

std::string symbol_function::describe() const
{
    if (factors_.empty()) {
        return "1";
    }
    std::ostringstream os;
    os.precision(10);
    bool first = true;
    for (const auto& x : factors_) {
        if (!first) {
            os << "*";
        }
        first = false;
        switch (x.kind) {
        case factor_kind::power: os << "lambda^" << x.n; break;
        case factor_kind::exp: os << "exp((" << x.z.real() << "+" << x.z.imag() << "i)lambda)"; break;
        case factor_kind::gevrey_exp: os << "exp(" << x.s << "|lambda|^(1/" << x.beta << "))"; break;
        }
    }
    return os.str();
}

const char* to_string(membership m)
{
    switch (m) {
    case membership::member: return "member";
    case membership::non_member: return "non_member";
    case membership::unknown: return "unknown";
    }
    return "?";
}

const char* to_string(domain_criterion c)
{
    return c == domain_criterion::direct ? "direct" : "dual_probe";
}

membership from_certificate(const convergence_certificate& c)
{
    switch (c.status) {
    case series_status::converges: return membership::member;
    case series_status::diverges: return membership::non_member;
    case series_status::inconclusive: return membership::unknown;
    }
    return membership::unknown;
}

namespace {

// log|F(lambda_k) f_k| as a shared term function.
std::function<double(index_t)> image_log_abs(const symbol_function& F, const coefficient_vector& f)
{
    auto fp = std::make_shared<const coefficient_vector>(f);
    return [F, fp](index_t k) {
        const double a = fp->log_abs(k);
        if (a == neg_inf) {
            return neg_inf;
        }
        return F.evaluate(fp->spectrum()->at(k)).log_mag + a;
    };
}

std::optional<asymptotic_law> image_law(const symbol_function& F, const coefficient_vector& f)
{
    if (!f.law()) {
        return std::nullopt;
    }
    auto lf = F.magnitude_law(*f.spectrum());
    if (!lf) {
        return std::nullopt;
    }
    return *lf + *f.law();
}

}  // namespace

series_spec image_norm_series(const symbol_function& F, const coefficient_vector& f)
{
    series_spec s;
    const double p = f.p();
    s.log_term = [x = image_log_abs(F, f), p](index_t k) { return p * x(k); };
    s.length = f.support_length();
    if (auto l = image_law(F, f)) {
        s.law = p * *l;
    }
    return s;
}

domain_verdict domain_member_direct(const symbol_function& F, const coefficient_vector& f,
                                    const series_budget& budget)
{
    domain_verdict v;
    v.criterion = domain_criterion::direct;
    v.certificate = certify_series(image_norm_series(F, f), budget);
    v.member = from_certificate(v.certificate);
    v.detail = F.describe() + " on " + f.description();
    return v;
}

domain_verdict domain_member_prop31(const symbol_function& F, const coefficient_vector& f, int probe_budget,
                                    const series_budget& budget)
{
    if (probe_budget < 1) {
        throw std::invalid_argument("probe_budget must be >= 1");
    }
    const auto x = image_log_abs(F, f);
    const auto len = f.support_length();
    const double p = f.p();
    std::ostringstream notes;

    // unit coordinate duals: condition (i) is the single atom |F(lambda_k) f_k|
    const index_t units = len ? std::min<index_t>(probe_budget, *len) : probe_budget;
    for (index_t k = 1; k <= units; ++k) {
        if (std::isnan(x(k)) || x(k) == pos_inf) {
            throw domain_error("unit dual probe produced a non-finite atom");
        }
    }
    notes << units << " unit duals finite";

    // dual with coordinates k^-2 (in every l^q). Divergence here excludes
    // F(A)f from l^p by Hoelder.
    series_spec hs;
    hs.log_term = [x](index_t k) {
        const double a = x(k);
        return a == neg_inf ? neg_inf : a - 2.0 * std::log(static_cast<double>(k));
    };
    hs.length = len;
    auto law = image_law(F, f);
    if (law) {
        hs.law = *law + asymptotic_law::term(-2.0, 0.0, 1);
    }
    const auto h_cert = certify_series(hs, budget);
    notes << "; k^-2 dual: " << to_string(h_cert.status);

    // norming duals of the truncations x^(K): the pairing equals ||x^(K)||_p,
    // i.e. the partial sums of sum |x_k|^p at the doubling checkpoints
    series_spec ns;
    ns.log_term = [x, p](index_t k) { return p * x(k); };
    ns.length = len;
    if (law) {
        ns.law = p * *law;
    }
    const auto n_cert = certify_series(ns, budget);
    notes << "; norming duals: " << to_string(n_cert.status);

    if (h_cert.diverges() && n_cert.converges()) {
        throw consistency_error("dual probes disagree: k^-2 dual diverges while F(A)f is certified in l^p");
    }

    domain_verdict v;
    v.criterion = domain_criterion::dual_probe;
    if (h_cert.diverges()) {
        v.member = membership::non_member;
        v.certificate = h_cert;
    } else {
        v.member = from_certificate(n_cert);
        v.certificate = n_cert;
    }

    // condition (ii): the mass of {|F| > n} must vanish as n grows
    if (v.member == membership::member) {
        if (len) {
            double prev = pos_inf;
            for (double level = 1.0;; level *= 2.0) {
                log_sum tail;
                bool nonempty = false;
                for (index_t k = 1; k <= *len; ++k) {
                    if (F.evaluate(f.spectrum()->at(k)).log_mag > std::log(level)) {
                        nonempty = true;
                        tail.add(p * x(k));
                    }
                }
                if (tail.value() > prev) {
                    throw consistency_error("level-set masses increased with the level");
                }
                prev = tail.value();
                if (!nonempty) {
                    notes << "; level sets empty beyond n=" << level;
                    break;
                }
                if (level > 1e300) {
                    notes << "; level sets not exhausted";
                    break;
                }
            }
        } else {
            notes << "; level-set masses bounded by the convergent series, so they vanish";
        }
    }
    v.detail = notes.str();
    return v;
}

coefficient_vector apply_symbol(const symbol_function& F, const coefficient_vector& f, const series_budget& budget)
{
    const auto v = domain_member_direct(F, f, budget);
    if (!v.is_member()) {
        throw domain_error("apply_symbol: " + F.describe() + " on " + f.description() + " is " +
                           to_string(v.member) + " (" + v.certificate.detail + ")");
    }
    const auto& s = f.spectrum();
    const std::string desc = F.describe() + "*[" + f.description() + "]";
    if (auto len = f.support_length()) {
        std::vector<log_polar> coords(static_cast<std::size_t>(*len));
        for (index_t k = 1; k <= *len; ++k) {
            const auto a = f.at(k);
            if (!a.is_zero()) {
                coords[static_cast<std::size_t>(k - 1)] = F.evaluate(s->at(k)) * a;
            }
        }
        return coefficient_vector::explicit_coords(s, std::move(coords), f.p());
    }
    auto fp = std::make_shared<const coefficient_vector>(f);
    auto gen = [F, fp](index_t k) {
        const auto a = fp->at(k);
        return a.is_zero() ? a : F.evaluate(fp->spectrum()->at(k)) * a;
    };
    return coefficient_vector::certified_rule(s, gen, image_law(F, f), std::nullopt, desc, f.p(), v.certificate);
}

power_norm_report power_norms(const coefficient_vector& f, int n_max, const series_budget& budget)
{
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be >= 0");
    }
    power_norm_report r;
    for (int n = 0; n <= n_max; ++n) {
        const auto v = domain_member_direct(symbol_function::power(n), f, budget);
        if (!v.is_member()) {
            r.cutoff = n;
            r.cutoff_reason = std::string(to_string(v.member)) + ": " + v.certificate.detail;
            break;
        }
        r.log_norms.push_back(v.certificate.log_value / f.p());
        r.certificates.push_back(v.certificate);
    }
    return r;
}

}  // namespace gevrey
