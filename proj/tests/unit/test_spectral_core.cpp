#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "gevrey/borel_calculus.hpp"
#include "gevrey/error.hpp"
#include "gevrey/spectral_measure.hpp"

using namespace gevrey;
using fixtures::explicit_spectrum;
using fixtures::power_law;

namespace {

borel_set mask_set(const std::vector<complex_value>& pts, unsigned mask)
{
    std::vector<complex_value> chosen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (mask & (1u << i)) {
            chosen.push_back(pts[i]);
        }
    }
    return borel_set::from_predicate(
        [chosen](complex_value z) { return std::find(chosen.begin(), chosen.end(), z) != chosen.end(); },
        "mask " + std::to_string(mask));
}

double value_of(const convergence_certificate& c)
{
    return std::exp(c.log_value);
}

}  // namespace

TEST_CASE("log_polar round trip and products")
{
    const complex_value z{3.0, -4.0};
    const auto lp = log_polar::from_complex(z);
    CHECK(lp.log_mag == doctest::Approx(std::log(5.0)));
    CHECK(std::abs(lp.to_complex() - z) < 1e-14);
    CHECK(log_polar::from_complex({0.0, 0.0}).is_zero());
    CHECK(log_polar::from_complex({0.0, 0.0}).phase == 0.0);
    const auto prod = lp * log_polar::from_complex({0.0, 1.0});
    CHECK(std::abs(prod.to_complex() - z * complex_value{0.0, 1.0}) < 1e-13);
    CHECK((lp * log_polar::zero()).is_zero());
    CHECK(wrap_phase(1.25) == 1.25);
    CHECK(wrap_phase(pi) == pi);
    CHECK(wrap_phase(-pi) == pi);
    CHECK(wrap_phase(3.0 * pi) == doctest::Approx(pi));
}

TEST_CASE("log_sum handles magnitudes beyond binary64")
{
    log_sum s;
    CHECK(s.empty());
    s.add(1000.0);
    s.add(1000.0);
    CHECK(s.value() == doctest::Approx(1000.0 + std::log(2.0)));
    log_sum t;
    t.add(neg_inf);
    CHECK(t.value() == neg_inf);
    CHECK(log_add(0.0, 0.0) == doctest::Approx(std::log(2.0)));
    CHECK(log_add(neg_inf, 3.0) == 3.0);
}

TEST_CASE("asymptotic laws decide tails")
{
    CHECK(classify_tail(asymptotic_law::term(-1.0, 1.0)) == tail_verdict::converges);
    CHECK(classify_tail(asymptotic_law::term(-2.0, 0.0, 1)) == tail_verdict::converges);
    CHECK(classify_tail(asymptotic_law::term(-1.0, 0.0, 1)) == tail_verdict::diverges);
    CHECK(classify_tail(asymptotic_law::constant(-5.0)) == tail_verdict::diverges);
    CHECK(classify_tail(asymptotic_law::term(-1.0, 1.0) + asymptotic_law::term(1.0, 2.0)) == tail_verdict::diverges);
    CHECK(classify_tail(asymptotic_law::term(-1.0, 0.5).with_remainder(0.6)) == tail_verdict::undetermined);

    const auto cancel = asymptotic_law::term(1.0, 2.0) + asymptotic_law::term(-1.0, 2.0) +
                        asymptotic_law::term(-3.0, 1.0);
    REQUIRE(cancel.leading());
    CHECK(cancel.leading()->power == 1.0);
    CHECK(cancel.leading()->coef == -3.0);

    const auto shifted = asymptotic_law::term(2.0, 1.0).times_power(1.0, 1);
    CHECK(shifted.leading()->power == 2.0);
    CHECK(shifted.leading()->log_power == 1);
    CHECK(compare_growth(1.0, 0, 1.0, 1) < 0);
    CHECK(compare_growth(1.5, 0, 1.0, 7) > 0);
}

TEST_CASE("series protocol")
{
    SUBCASE("finite sums are exact")
    {
        series_spec s{[](index_t k) { return -static_cast<double>(k) * std::log(2.0); }, 10, std::nullopt};
        const auto c = certify_series(s);
        CHECK(c.converges());
        CHECK(c.basis == decision_basis::exact_finite);
        CHECK(c.log_error < c.log_value - 30.0);
        CHECK(value_of(c) == doctest::Approx(1.0 - std::ldexp(1.0, -10)).epsilon(1e-14));
    }
    SUBCASE("closed form with value and error bound")
    {
        series_spec s{[](index_t k) { return -2.0 * std::log(static_cast<double>(k)); }, std::nullopt,
                      asymptotic_law::term(-2.0, 0.0, 1)};
        const auto c = certify_series(s);
        CHECK(c.converges());
        CHECK(c.basis == decision_basis::closed_form);
        const double exact = std::numbers::pi * std::numbers::pi / 6.0;
        CHECK(std::abs(value_of(c) - exact) <= std::exp(c.log_error) + 1e-12);
        CHECK(std::abs(value_of(c) - exact) < 1e-5);
    }
    SUBCASE("harmonic series diverges")
    {
        series_spec s{[](index_t k) { return -std::log(static_cast<double>(k)); }, std::nullopt,
                      asymptotic_law::term(-1.0, 0.0, 1)};
        CHECK(certify_series(s).diverges());
    }
    SUBCASE("ratio tail without a law")
    {
        series_spec s{[](index_t k) { return -0.5 * static_cast<double>(k); }, std::nullopt, std::nullopt};
        const auto c = certify_series(s);
        CHECK(c.converges());
        CHECK(c.basis == decision_basis::ratio_tail);
        CHECK(value_of(c) == doctest::Approx(1.0 / (std::exp(0.5) - 1.0)).epsilon(1e-9));
    }
    SUBCASE("growing terms without a law")
    {
        series_spec s{[](index_t k) { return static_cast<double>(k); }, std::nullopt, std::nullopt};
        const auto c = certify_series(s);
        CHECK(c.diverges());
        CHECK(c.basis == decision_basis::log_cap);
    }
    SUBCASE("non-decaying terms without a law")
    {
        series_spec s{[](index_t) { return -3.0; }, std::nullopt, std::nullopt};
        series_budget b;
        b.k_max = 1 << 12;
        CHECK(certify_series(s, b).diverges());
    }
}

TEST_CASE("spectrum families")
{
    CHECK_THROWS_AS(spectrum_family::explicit_points({{1, 0}, {2, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS(spectrum_family::explicit_points({}));

    const auto s = power_law(1.0, 1.0, 2.0, 2.0);
    CHECK(s->at(3) == complex_value{3.0, 18.0});
    CHECK_FALSE(s->finite());
    CHECK(s->sup_re() == pos_inf);
    const auto k = s->index_beyond(100.0);
    REQUIRE(k);
    for (index_t j = *k; j < *k + 100; ++j) {
        CHECK(std::abs(s->at(j)) > 100.0);
    }
    CHECK(power_law(-1.0, 1.0)->sup_re() == doctest::Approx(-1.0));

    const auto e = explicit_spectrum({{1, 0}, {0, 2}, {-3, 0}});
    CHECK(e->size() == 3);
    CHECK(e->at(2) == complex_value{0, 2});
    CHECK(e->max_abs() == 3.0);
}

TEST_CASE("coefficient vectors are certified in l^p")
{
    const auto s = power_law(1.0, 1.0);
    CHECK_NOTHROW(fixtures::decay_vector(s, 1.0, 1.0));
    CHECK_THROWS_AS(fixtures::decay_vector(s, 0.0, 0.0, 0, 0.5), domain_error);
    CHECK_NOTHROW(fixtures::decay_vector(s, 0.0, 0.0, 0, 0.5, 3.0));
    const auto e = explicit_spectrum({{1, 0}, {2, 0}});
    CHECK_THROWS(coefficient_vector::from_complex(e, {{1, 0}}));
    const auto f = coefficient_vector::from_complex(e, {{3, 0}, {0, 4}});
    CHECK(f.log_norm() == doctest::Approx(std::log(5.0)));
    CHECK(dual_exponent(2.0) == 2.0);
    CHECK(dual_exponent(3.0) == doctest::Approx(1.5));
}

TEST_CASE("projection examples")
{
    const auto s = explicit_spectrum({{1, 0}, {0, 2}, {-3, 0}});
    const auto f = coefficient_vector::from_complex(s, {{1, 0}, {1, 0}, {1, 0}});
    const auto all = project(f, borel_set::plane());
    const auto none = project(f, borel_set::empty());
    const auto right = project(f, borel_set::re_at_least(0.0));
    for (index_t k = 1; k <= 3; ++k) {
        CHECK(all.at(k) == f.at(k));
        CHECK(none.at(k).is_zero());
    }
    CHECK(right.at(1) == log_polar::one());
    CHECK(right.at(2) == log_polar::one());
    CHECK(right.at(3).is_zero());
}

TEST_CASE("projection of unit vectors has norm 0 or 1")
{
    std::mt19937_64 rng(7);
    const auto pts = fixtures::random_points(rng, 12);
    const auto s = explicit_spectrum(pts);
    for (double p : {1.0, 2.0, 3.5}) {
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::vector<complex_value> c(pts.size());
            c[k] = {1.0, 0.0};
            const auto e = coefficient_vector::from_complex(s, c, p);
            for (unsigned mask : {0u, 0x5u, 0xfffu, 1u << k}) {
                const double ln = project(e, mask_set(pts, mask)).log_norm();
                CHECK((ln == 0.0 || ln == neg_inf));
            }
        }
    }
}

TEST_CASE("multiplicativity over all mask pairs of a 10-point spectrum")
{
    std::mt19937_64 rng(11);
    const auto pts = fixtures::random_points(rng, 10);
    const auto s = explicit_spectrum(pts);
    const auto f = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 10));
    std::vector<borel_set> masks;
    for (unsigned m = 0; m < 1024; ++m) {
        masks.push_back(mask_set(pts, m));
    }
    std::size_t failures = 0;
    for (unsigned a = 0; a < 1024; ++a) {
        for (unsigned b = 0; b < 1024; ++b) {
            failures += multiplicativity_check(masks[a], masks[b], f) ? 0 : 1;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("multiplicativity on an infinite family")
{
    const auto s = power_law(1.0, 1.0, 1.0, 0.5);
    const auto f = fixtures::decay_vector(s, 1.0, 1.0);
    CHECK(multiplicativity_check(borel_set::abs_greater(5.0), borel_set::abs_greater(5.0), f));
    CHECK(multiplicativity_check(borel_set::abs_greater(5.0), borel_set::abs_at_most(5.0), f));
    CHECK(multiplicativity_check(borel_set::re_at_least(3.0), borel_set::abs_at_most(50.0), f));
}

TEST_CASE("total variation examples")
{
    SUBCASE("geometric weights")
    {
        std::vector<complex_value> pts;
        std::vector<complex_value> c;
        double exact = 0.0;
        for (int k = 1; k <= 20; ++k) {
            pts.emplace_back(k, 0.0);
            c.emplace_back(std::ldexp(1.0, -k), 0.0);
            exact += std::ldexp(1.0, -2 * k);
        }
        const auto s = explicit_spectrum(pts);
        const auto f = coefficient_vector::from_complex(s, c);
        const auto tv = total_variation(f, f, borel_set::plane());
        CHECK(tv.converges());
        CHECK(std::abs(value_of(tv) - exact) < 1e-12);
        CHECK(std::abs(value_of(tv) - 1.0 / 3.0) < 1e-12);

        const auto none = total_variation(f, f, borel_set::empty());
        CHECK(none.converges());
        CHECK(none.log_value == neg_inf);
    }
    SUBCASE("Gevrey weight against k^-2 diverges")
    {
        for (double beta : {1.0, 1.5, 2.0}) {
            const auto s = power_law(0.0, 0.0, 1.0, 2.0 * beta);
            const auto f = fixtures::decay_vector(s, 0.0, 0.0, 0, 2.0);
            for (double sv : {0x1p-10, 1.0}) {
                const auto w = symbol_function::gevrey_exp(sv, beta).as_weight();
                CHECK(total_variation(f, f, borel_set::plane(), w).diverges());
            }
        }
    }
}

TEST_CASE("Hoelder bound and additivity on random explicit data")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const double p = std::array{1.0, 1.5, 2.0, 3.0}[trial % 4];
        const auto pts = fixtures::random_points(rng, 16);
        const auto s = explicit_spectrum(pts);
        const auto f = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 16), p);
        const double q = p == 1.0 ? 0.0 : dual_exponent(p);
        const auto tv = total_variation(f, f, borel_set::plane());
        REQUIRE(tv.converges());
        if (p > 1.0) {
            const auto g = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 16), q);
            const auto fg = total_variation(f, g, borel_set::plane());
            CHECK(fg.log_value <= f.log_norm() + g.log_norm() + 1e-12);
            const auto left = total_variation(f, g, borel_set::re_at_least(0.0));
            const auto rest = total_variation(
                f, g, borel_set::from_predicate([](complex_value z) { return z.real() < 0.0; }, "Re < 0"));
            CHECK(std::exp(log_add(left.log_value, rest.log_value)) ==
                  doctest::Approx(std::exp(fg.log_value)).epsilon(1e-13));
        }
    }
}
