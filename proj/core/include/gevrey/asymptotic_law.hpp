#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace gevrey {

// coef * k^power * (ln k)^log_power
struct monomial {
    double coef = 0.0;
    double power = 0.0;
    int log_power = 0;
};

// Asymptotic expansion, as k -> infinity, of a real sequence (typically the
// log-magnitude of a series term):
//
//     x_k = sum_i coef_i k^{power_i} (ln k)^{log_power_i} + O(k^{remainder_power})
//
// remainder_power == -inf means the listed terms are exact. Terms are kept
// merged and sorted by decreasing growth. Coefficients that cancel to within
// a relative 1e-12 of the summands are dropped.
class asymptotic_law {
public:
    asymptotic_law() = default;

    static asymptotic_law zero() { return {}; }
    static asymptotic_law constant(double c);
    static asymptotic_law term(double coef, double power, int log_power = 0);

    asymptotic_law& operator+=(const asymptotic_law& other);
    friend asymptotic_law operator+(asymptotic_law a, const asymptotic_law& b) { return a += b; }
    friend asymptotic_law operator*(double scale, const asymptotic_law& law);

    asymptotic_law with_remainder(double power) const;
    // Multiplies the sequence by k^power (ln k)^log_power.
    asymptotic_law times_power(double power, int log_power = 0) const;

    const std::vector<monomial>& terms() const { return terms_; }
    double remainder_power() const { return remainder_power_; }
    bool exact() const;

    // Largest-growth monomial, or nullopt for the zero law.
    std::optional<monomial> leading() const;

    // Evaluates the listed terms (remainder ignored) at k >= 1.
    double evaluate(double k) const;

    std::string describe() const;

private:
    void normalize();

    struct scaled_term {
        monomial m;
        double magnitude;  // largest |summand| merged into m.coef
    };
    std::vector<scaled_term> raw_;
    std::vector<monomial> terms_;
    double remainder_power_ = -std::numeric_limits<double>::infinity();
};

// Growth order comparison of k^p (ln k)^q: returns <0, 0, >0.
int compare_growth(double power_a, int log_a, double power_b, int log_b);

enum class tail_verdict { converges, diverges, undetermined };

// Decides convergence of sum_k exp(x_k) from the expansion of x_k alone.
tail_verdict classify_tail(const asymptotic_law& log_terms);

}  // namespace gevrey
