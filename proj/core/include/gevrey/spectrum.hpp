#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/asymptotic_law.hpp"
#include "gevrey/log_polar.hpp"
#include "gevrey/series.hpp"

namespace gevrey {

// lambda_k = a_re k^p_re + i a_im k^p_im, k = 1, 2, ...
struct power_law_params {
    double a_re = 0.0;
    double p_re = 0.0;
    double a_im = 0.0;
    double p_im = 0.0;

    friend bool operator==(const power_law_params&, const power_law_params&) = default;
};

enum class spectrum_kind { explicit_points, power_law, custom };

// Eigenvalues lambda_1, lambda_2, ... of a diagonal operator. Indices are
// 1-based throughout.
class spectrum_family {
public:
    using generator = std::function<complex_value(index_t)>;

    static spectrum_family explicit_points(std::vector<complex_value> points);
    static spectrum_family power_law(power_law_params params);
    // A custom rule. The declared tail, when present, is taken to describe
    // lambda_k up to a bounded error in each of Re and Im.
    static spectrum_family custom(generator rule, std::optional<power_law_params> declared_tail,
                                  std::string description);

    spectrum_kind kind() const { return kind_; }
    bool finite() const { return kind_ == spectrum_kind::explicit_points; }
    std::optional<index_t> size() const;
    complex_value at(index_t k) const;
    const std::vector<complex_value>& points() const { return points_; }
    // Power-law parameters of the tail (exact for power_law, declared for custom).
    std::optional<power_law_params> tail() const { return tail_; }
    bool tail_exact() const { return kind_ == spectrum_kind::power_law; }

    // Expansions in k of Re lambda_k, Im lambda_k, ln|lambda_k| and
    // |lambda_k|^gamma; nullopt when the family has no tail description.
    std::optional<asymptotic_law> re_law() const;
    std::optional<asymptotic_law> im_law() const;
    std::optional<asymptotic_law> log_abs_law() const;
    std::optional<asymptotic_law> abs_pow_law(double gamma) const;

    // Index K with |lambda_k| > radius for all k >= K (finite families: one
    // past the last index). nullopt without a tail description.
    std::optional<index_t> index_beyond(double radius) const;

    // sup_k Re lambda_k (+inf when unbounded); nullopt when undecidable.
    std::optional<double> sup_re() const;
    // max |lambda_k| for finite families, +inf otherwise.
    double max_abs() const;

    const std::string& description() const { return description_; }

private:
    spectrum_kind kind_ = spectrum_kind::explicit_points;
    std::vector<complex_value> points_;
    std::optional<power_law_params> tail_;
    generator rule_;
    std::string description_;
};

using spectrum_ptr = std::shared_ptr<const spectrum_family>;

spectrum_ptr make_spectrum(spectrum_family s);

// Borel subset of the plane given by a decidable predicate. The radii are
// optional facts used to keep tail expansions intact under masking:
//   within_radius:  the set lies inside |lambda| <= R
//   covers_beyond:  the set contains every lambda with |lambda| > R
struct borel_set {
    std::function<bool(complex_value)> contains;
    std::string description;
    std::optional<double> within_radius;
    std::optional<double> covers_beyond;

    bool operator()(complex_value z) const { return contains(z); }

    static borel_set plane();
    static borel_set empty();
    static borel_set re_at_least(double x);
    static borel_set abs_greater(double r);
    static borel_set abs_at_most(double r);
    static borel_set from_predicate(std::function<bool(complex_value)> p, std::string description);
};

borel_set intersect(const borel_set& a, const borel_set& b);
borel_set unite(const borel_set& a, const borel_set& b);

}  // namespace gevrey
