#include "gevrey/asymptotic_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gevrey {
namespace {

constexpr double power_tolerance = 1e-12;
constexpr double cancel_tolerance = 1e-12;

bool same_power(double a, double b)
{
    return std::abs(a - b) <= power_tolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

int compare_growth(double power_a, int log_a, double power_b, int log_b)
{
    if (!same_power(power_a, power_b)) {
        return power_a < power_b ? -1 : 1;
    }
    if (log_a != log_b) {
        return log_a < log_b ? -1 : 1;
    }
    return 0;
}

asymptotic_law asymptotic_law::constant(double c)
{
    return term(c, 0.0, 0);
}

asymptotic_law asymptotic_law::term(double coef, double power, int log_power)
{
    if (!std::isfinite(coef) || !std::isfinite(power) || log_power < 0) {
        throw std::invalid_argument("asymptotic_law: invalid monomial");
    }
    asymptotic_law law;
    law.raw_.push_back({{coef, power, log_power}, std::abs(coef)});
    law.normalize();
    return law;
}

asymptotic_law& asymptotic_law::operator+=(const asymptotic_law& other)
{
    raw_.insert(raw_.end(), other.raw_.begin(), other.raw_.end());
    remainder_power_ = std::max(remainder_power_, other.remainder_power_);
    normalize();
    return *this;
}

asymptotic_law operator*(double scale, const asymptotic_law& law)
{
    if (!std::isfinite(scale)) {
        throw std::invalid_argument("asymptotic_law: non-finite scale");
    }
    asymptotic_law out;
    if (scale == 0.0) {
        return out;
    }
    out.raw_ = law.raw_;
    for (auto& t : out.raw_) {
        t.m.coef *= scale;
        t.magnitude *= std::abs(scale);
    }
    out.remainder_power_ = law.remainder_power_;
    out.normalize();
    return out;
}

asymptotic_law asymptotic_law::with_remainder(double power) const
{
    asymptotic_law out = *this;
    out.remainder_power_ = std::max(out.remainder_power_, power);
    return out;
}

asymptotic_law asymptotic_law::times_power(double power, int log_power) const
{
    if (!std::isfinite(power) || log_power < 0) {
        throw std::invalid_argument("asymptotic_law: invalid power shift");
    }
    asymptotic_law out = *this;
    for (auto& t : out.raw_) {
        t.m.power += power;
        t.m.log_power += log_power;
    }
    if (!out.exact()) {
        // O(k^rho) times (ln k)^q is absorbed by any slightly larger power
        out.remainder_power_ += power + (log_power > 0 ? 1e-9 : 0.0);
    }
    out.normalize();
    return out;
}

bool asymptotic_law::exact() const
{
    return remainder_power_ == -std::numeric_limits<double>::infinity();
}

void asymptotic_law::normalize()
{
    std::vector<scaled_term> merged;
    for (const auto& t : raw_) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const scaled_term& m) {
            return compare_growth(m.m.power, m.m.log_power, t.m.power, t.m.log_power) == 0;
        });
        if (it == merged.end()) {
            merged.push_back(t);
        } else {
            it->m.coef += t.m.coef;
            it->magnitude = std::max(it->magnitude, t.magnitude);
        }
    }
    std::sort(merged.begin(), merged.end(), [](const scaled_term& a, const scaled_term& b) {
        return compare_growth(a.m.power, a.m.log_power, b.m.power, b.m.log_power) > 0;
    });
    raw_ = merged;
    terms_.clear();
    for (const auto& t : raw_) {
        if (std::abs(t.m.coef) > cancel_tolerance * t.magnitude) {
            terms_.push_back(t.m);
        }
    }
}

std::optional<monomial> asymptotic_law::leading() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.front();
}

double asymptotic_law::evaluate(double k) const
{
    const double lk = std::log(k);
    double x = 0.0;
    for (const auto& t : terms_) {
        x += t.coef * std::pow(k, t.power) * std::pow(lk, t.log_power);
    }
    return x;
}

std::string asymptotic_law::describe() const
{
    std::ostringstream os;
    os.precision(6);
    if (terms_.empty()) {
        os << "0";
    }
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << t.coef;
        if (t.power != 0.0) {
            os << "*k^" << t.power;
        }
        if (t.log_power == 1) {
            os << "*ln(k)";
        } else if (t.log_power > 1) {
            os << "*ln(k)^" << t.log_power;
        }
    }
    if (!exact()) {
        os << " + O(k^" << remainder_power_ << ")";
    }
    return os.str();
}

tail_verdict classify_tail(const asymptotic_law& law)
{
    const double rho = law.remainder_power();
    const auto lead = law.leading();

    // Remainder is bounded iff rho <= 0; it is dominated by (p, q) iff it grows
    // strictly slower.
    auto dominates_remainder = [rho](const monomial& m) {
        if (rho == -std::numeric_limits<double>::infinity()) {
            return true;
        }
        return compare_growth(m.power, m.log_power, rho, 0) > 0;
    };
    const bool remainder_bounded = rho <= 0.0;

    if (!lead) {
        // x_k = O(k^rho): with bounded remainder the terms stay away from 0.
        return remainder_bounded ? tail_verdict::diverges : tail_verdict::undetermined;
    }
    // Faster than ln k: sign of the leading coefficient decides.
    if (compare_growth(lead->power, lead->log_power, 0.0, 1) > 0) {
        if (!dominates_remainder(*lead)) {
            return tail_verdict::undetermined;
        }
        return lead->coef > 0 ? tail_verdict::diverges : tail_verdict::converges;
    }
    if (!remainder_bounded) {
        return tail_verdict::undetermined;
    }
    if (compare_growth(lead->power, lead->log_power, 0.0, 1) == 0) {
        // exp(x_k) = k^d * exp(O(1)): p-series comparison.
        return lead->coef < -1.0 ? tail_verdict::converges : tail_verdict::diverges;
    }
    // x_k bounded: terms do not tend to zero.
    return tail_verdict::diverges;
}

}  // namespace gevrey
