#include "gevrey/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gevrey {

const char* to_string(series_status s)
{
    switch (s) {
    case series_status::converges: return "converges";
    case series_status::diverges: return "diverges";
    case series_status::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(decision_basis b)
{
    switch (b) {
    case decision_basis::exact_finite: return "exact_finite";
    case decision_basis::closed_form: return "closed_form";
    case decision_basis::ratio_tail: return "ratio_tail";
    case decision_basis::log_cap: return "log_cap";
    case decision_basis::non_decay: return "non_decay";
    case decision_basis::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

namespace {

double checked_term(const series_spec& s, index_t k)
{
    const double x = s.log_term(k);
    if (std::isnan(x) || x == pos_inf) {
        std::ostringstream os;
        os << "series term at k=" << k << " is not a finite log value";
        throw std::domain_error(os.str());
    }
    return x;
}

convergence_certificate sum_finite(const series_spec& s, index_t n)
{
    log_sum acc;
    for (index_t k = 1; k <= n; ++k) {
        acc.add(checked_term(s, k));
    }
    convergence_certificate c;
    c.status = series_status::converges;
    c.basis = decision_basis::exact_finite;
    c.log_value = acc.value();
    c.log_error = acc.empty() ? neg_inf
                              : c.log_value + std::log(static_cast<double>(std::max<index_t>(n, 1)) *
                                                       std::numeric_limits<double>::epsilon());
    c.terms = n;
    c.detail = "finite sum";
    return c;
}

// Tail estimate from the expansion once terms are decreasing:
//   faster than ln k:  a_K / |x'(K)|, doubled for safety (x = log term)
//   k^d:               a_K K / (-d - 1)
std::optional<double> law_tail(const asymptotic_law& law, index_t k, double log_term)
{
    const auto lead = law.leading();
    if (!lead || lead->coef >= 0) {
        return std::nullopt;
    }
    const double x = static_cast<double>(k);
    const double lk = std::log(x);
    if (lead->power > 0 || (lead->power == 0 && lead->log_power > 1)) {
        double slope = 0.0;
        for (const auto& t : law.terms()) {
            const double base = std::pow(x, t.power - 1.0);
            double d = t.power * std::pow(lk, t.log_power);
            if (t.log_power > 0) {
                d += t.log_power * std::pow(lk, t.log_power - 1);
            }
            slope += t.coef * base * d;
        }
        if (!(slope < 0)) {
            return std::nullopt;
        }
        return log_term - std::log(-slope) + std::log(2.0);
    }
    if (lead->power == 0 && lead->log_power == 1 && lead->coef < -1.0) {
        return log_term + lk - std::log(-lead->coef - 1.0);
    }
    return std::nullopt;
}

}  // namespace

series_budget decision_budget(const series_budget& budget, index_t sweep)
{
    series_budget out = budget;
    out.value_sweep = std::min(budget.value_sweep, sweep);
    return out;
}

convergence_certificate certify_series(const series_spec& s, const series_budget& budget)
{
    if (!s.log_term) {
        throw std::invalid_argument("certify_series: missing term function");
    }
    if (budget.k_max < 8 || !(budget.rel_tol > 0) || budget.value_sweep < 1) {
        throw std::invalid_argument("certify_series: invalid budget");
    }
    if (s.length) {
        if (*s.length <= budget.k_max) {
            return sum_finite(s, *s.length);
        }
    }

    const tail_verdict closed = s.law ? classify_tail(*s.law) : tail_verdict::undetermined;
    const bool decided = closed != tail_verdict::undetermined;
    index_t limit = decided ? std::min(budget.k_max, budget.value_sweep) : budget.k_max;
    if (s.length) {
        limit = std::min(limit, *s.length);
    }
    const double log_tol = std::log(budget.rel_tol);

    log_sum acc;
    std::vector<double> cp_term;   // log term at each checkpoint
    std::vector<index_t> cp_index; // checkpoint indices (powers of two, then limit)
    double best_tail = pos_inf;

    auto make = [&](series_status st, decision_basis b, index_t k, double log_err, std::string why) {
        convergence_certificate c;
        c.status = st;
        c.basis = b;
        c.log_value = acc.value();
        c.log_error = log_err;
        c.terms = k;
        c.detail = std::move(why);
        if (s.law) {
            c.detail += "; law: " + s.law->describe();
        }
        return c;
    };

    index_t next_cp = 1;
    for (index_t k = 1; k <= limit; ++k) {
        const double x = checked_term(s, k);
        acc.add(x);
        if (!decided && acc.max_term() > budget.log_cap) {
            return make(series_status::diverges, decision_basis::log_cap, k, pos_inf,
                        "partial sum exceeded the log cap");
        }
        if (k != next_cp && k != limit) {
            continue;
        }
        if (k == next_cp) {
            next_cp *= 2;
        }
        cp_term.push_back(x);
        cp_index.push_back(k);
        const double log_s = acc.value();
        const std::size_t n = cp_term.size();

        if (closed == tail_verdict::diverges) {
            if (log_s > budget.log_cap) {
                return make(series_status::diverges, decision_basis::closed_form, k, pos_inf,
                            "expansion diverges; partial sum exceeded the log cap");
            }
            if (n >= 4 && cp_term[n - 1] > cp_term[n - 2] && cp_term[n - 2] >= cp_term[n - 3] &&
                cp_term[n - 3] >= cp_term[n - 4]) {
                return make(series_status::diverges, decision_basis::closed_form, k, pos_inf,
                            "expansion diverges; terms growing over the last three doublings");
            }
            continue;
        }
        if (!decided && log_s > budget.log_cap) {
            return make(series_status::diverges, decision_basis::log_cap, k, pos_inf,
                        "partial sum exceeded the log cap");
        }
        if (n < 4 || log_s == neg_inf) {
            continue;
        }
        if (closed == tail_verdict::converges && cp_term[n - 1] < cp_term[n - 2]) {
            // the expansion's own tail estimate is preferred over the ratio test,
            // which understates slowly decaying (polynomial) tails
            if (auto tail = law_tail(*s.law, k, x)) {
                best_tail = std::min(best_tail, *tail);
                if (*tail - log_s < log_tol) {
                    return make(series_status::converges, decision_basis::closed_form, k, *tail,
                                "asymptotic tail estimate below tolerance");
                }
                continue;
            }
        }
        // per-step ratio over each of the last three doubling windows
        double r = 0.0;
        bool valid = true;
        for (std::size_t i = n - 3; i < n; ++i) {
            const double num = cp_term[i];
            const double den = cp_term[i - 1];
            if (num == neg_inf) {
                continue;
            }
            if (den == neg_inf) {
                valid = false;
                break;
            }
            const double steps = static_cast<double>(cp_index[i] - cp_index[i - 1]);
            r = std::max(r, std::exp((num - den) / steps));
        }
        if (valid && r < 1.0) {
            const double tail = (x == neg_inf) ? neg_inf : x + std::log(r / (1.0 - r));
            best_tail = std::min(best_tail, tail);
            if (tail - log_s < log_tol) {
                return make(series_status::converges,
                            decided ? decision_basis::closed_form : decision_basis::ratio_tail, k, tail,
                            "geometric tail bound below tolerance");
            }
        }
    }

    if (closed == tail_verdict::converges) {
        return make(series_status::converges, decision_basis::closed_form, limit, best_tail,
                    "expansion converges; value sweep ended before the tail resolved");
    }
    if (closed == tail_verdict::diverges) {
        return make(series_status::diverges, decision_basis::closed_form, limit, pos_inf,
                    "expansion diverges; no numeric witness within the sweep");
    }
    if (s.length && *s.length <= limit) {
        // finite series longer than k_max cannot reach here
        return make(series_status::converges, decision_basis::exact_finite, limit, neg_inf, "finite sum");
    }
    const std::size_t n = cp_term.size();
    if (n >= 3 && cp_term[n - 1] != neg_inf && cp_term[n - 1] >= cp_term[n - 2] &&
        cp_term[n - 2] >= cp_term[n - 3]) {
        return make(series_status::diverges, decision_basis::non_decay, limit, pos_inf,
                    "terms nondecreasing over the last three doublings at k_max");
    }
    return make(series_status::inconclusive, decision_basis::budget_exhausted, limit, best_tail,
                "no tail bound or divergence witness within the budget");
}

}  // namespace gevrey
