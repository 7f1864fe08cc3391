#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "gevrey/borel_calculus.hpp"
#include "gevrey/error.hpp"
#include "gevrey/spectral_measure.hpp"

using namespace gevrey;
using fixtures::explicit_spectrum;
using fixtures::power_law;

namespace {

std::vector<symbol_function> symbol_catalog()
{
    return {symbol_function::power(0),
            symbol_function::power(1),
            symbol_function::power(3),
            symbol_function::exp({1.0, 0.0}),
            symbol_function::exp({-2.5, 0.75}),
            symbol_function::exp({0.0, 1.0}),
            symbol_function::gevrey_exp(1.0, 1.0),
            symbol_function::gevrey_exp(0.25, 2.0),
            symbol_function::power(2) * symbol_function::exp({0.5, 0.0}),
            symbol_function::gevrey_exp(3.0, 1.5) * symbol_function::power(1)};
}

bool same_coords(const coefficient_vector& a, const coefficient_vector& b, index_t n)
{
    for (index_t k = 1; k <= n; ++k) {
        if (!(a.at(k) == b.at(k))) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("symbol evaluation")
{
    CHECK(std::abs(symbol_function::power(2).evaluate({3.0, 0.0}).to_complex() - complex_value{9.0, 0.0}) < 1e-12);
    CHECK(std::abs(symbol_function::power(3).evaluate({0.0, 1.0}).to_complex() - complex_value{0.0, -1.0}) < 1e-14);
    CHECK(symbol_function::power(0).evaluate({0.0, 0.0}) == log_polar::one());
    CHECK(symbol_function::power(2).evaluate({0.0, 0.0}).is_zero());
    CHECK(symbol_function::gevrey_exp(5.0, 1.5).evaluate({0.0, 0.0}) == log_polar::one());
    CHECK(symbol_function().evaluate({7.0, 1.0}) == log_polar::one());
    const auto e = symbol_function::exp({2.0, 0.0}).evaluate({1000.0, 0.0});
    CHECK(e.log_mag == 2000.0);
    const auto g = symbol_function::gevrey_exp(2.0, 2.0).evaluate({9.0, 0.0});
    CHECK(g.log_mag == doctest::Approx(6.0));
}

TEST_CASE("apply_symbol examples")
{
    const auto s = explicit_spectrum({{1, 0}, {2, 0}, {3, 0}});
    const auto f = coefficient_vector::from_complex(s, {{1, 0}, {1, 0}, {1, 0}});
    CHECK(same_coords(apply_symbol(symbol_function::power(0), f), f, 3));
    CHECK(same_coords(apply_symbol(symbol_function::exp({0.0, 0.0}), f), f, 3));
    const auto sq = apply_symbol(symbol_function::power(2), f);
    for (index_t k = 1; k <= 3; ++k) {
        CHECK(sq.at(k).to_complex().real() == doctest::Approx(static_cast<double>(k * k)));
    }

    const auto inf = power_law(-1.0, 1.0);
    const auto h = fixtures::decay_vector(inf, 1.0, 1.0);
    CHECK(same_coords(apply_symbol(symbol_function::power(0), h), h, 1000));
    CHECK_THROWS_AS(apply_symbol(symbol_function::exp({-2.0, 0.0}), h), domain_error);
}

TEST_CASE("direct domain tests")
{
    SUBCASE("negative spectrum, exponential decay, t = 5")
    {
        const auto s = power_law(-1.0, 1.0);
        const auto f = fixtures::decay_vector(s, 1.0, 1.0);
        const auto v = domain_member_direct(symbol_function::exp({5.0, 0.0}), f);
        CHECK(v.is_member());
        // oracle: plain summation of e^{-12 k} up to 10^6
        long double oracle = 0.0L;
        for (int k = 1; k <= 1000000; ++k) {
            oracle += std::exp(-12.0L * k);
        }
        CHECK(std::exp(v.certificate.log_value) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-10));
    }
    SUBCASE("growth e^k against k^-2")
    {
        const auto s = power_law(1.0, 1.0);
        const auto f = fixtures::decay_vector(s, 0.0, 0.0, 0, 2.0);
        const auto v = domain_member_direct(symbol_function::exp({1.0, 0.0}), f);
        CHECK(v.is_non_member());
    }
    SUBCASE("identity symbol on stored vectors")
    {
        const auto s = power_law(0.0, 0.0, 1.0, 2.0);
        for (double r : {0.5, 1.0, 2.0}) {
            CHECK(domain_member_direct(symbol_function::power(0), fixtures::decay_vector(s, 1.0, r)).is_member());
        }
        CHECK(domain_member_direct(symbol_function::power(0), fixtures::decay_vector(s, 0.0, 0.0, 0, 1.0)).is_member());
    }
}

TEST_CASE("dual probe criterion")
{
    const auto s = power_law(0.0, 0.0, 1.0, 2.0);
    const auto f = fixtures::decay_vector(s, 0.0, 0.0, 0, 2.0);
    const auto v = domain_member_prop31(symbol_function::gevrey_exp(1.0, 1.0), f, 16);
    CHECK(v.is_non_member());
    CHECK(v.criterion == domain_criterion::dual_probe);
    CHECK(domain_member_prop31(symbol_function::power(0), f, 16).is_member());
    CHECK(domain_member_prop31(symbol_function::exp({3.0, 0.0}), f, 16).is_member());
}

TEST_CASE("criterion agreement on random explicit spectra")
{
    std::mt19937_64 rng(31);
    const auto catalog = symbol_catalog();
    int agreements = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = explicit_spectrum(fixtures::random_points(rng, 32, 6.0));
        const auto f = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 32));
        for (const auto& F : catalog) {
            const auto d = domain_member_direct(F, f);
            const auto p = domain_member_prop31(F, f, 16);
            CHECK(d.member == p.member);
            CHECK(d.is_member());
            agreements += d.member == p.member ? 1 : 0;
        }
    }
    CHECK(agreements == 50 * static_cast<int>(catalog.size()));
}

TEST_CASE("exponential symbols compose")
{
    std::mt19937_64 rng(5);
    const auto s = explicit_spectrum(fixtures::random_points(rng, 24, 5.0));
    const auto f = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 24));
    const complex_value z1{0.75, -0.5};
    const complex_value z2{-1.25, 2.0};
    const auto once = apply_symbol(symbol_function::exp(z1 + z2), f);
    const auto twice = apply_symbol(symbol_function::exp(z1), apply_symbol(symbol_function::exp(z2), f));
    for (index_t k = 1; k <= 24; ++k) {
        const double scale = std::max({1.0, std::abs(once.at(k).log_mag), std::abs(twice.at(k).log_mag)});
        CHECK(std::abs(once.at(k).log_mag - twice.at(k).log_mag) <= 64 * scale * 0x1p-52);
        const double dphase = std::remainder(once.at(k).phase - twice.at(k).phase, 2.0 * pi);
        CHECK(std::abs(dphase) <= 64 * std::max(1.0, std::abs(once.at(k).phase)) * 0x1p-52 * 8.0);
    }
}

TEST_CASE("condition (i) estimate")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = explicit_spectrum(fixtures::random_points(rng, 20, 3.0));
        const auto f = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 20));
        const auto g = coefficient_vector::from_complex(s, fixtures::random_coords(rng, 20));
        for (const auto& F : symbol_catalog()) {
            const auto tv = total_variation(f, g, borel_set::plane(), F.as_weight());
            const auto image = apply_symbol(F, f);
            REQUIRE(tv.converges());
            CHECK(tv.log_value <= std::log(4.0 * spectral_bound) + image.log_norm() + g.log_norm() + 1e-12);
        }
    }
}

TEST_CASE("power norms")
{
    SUBCASE("single eigenvalue")
    {
        const auto s = explicit_spectrum({{2, 0}});
        const auto f = coefficient_vector::from_complex(s, {{1, 0}});
        const auto r = power_norms(f, 20);
        REQUIRE(r.log_norms.size() == 21);
        for (int n = 0; n <= 20; ++n) {
            CHECK(r.log_norms[n] == doctest::Approx(n * std::log(2.0)));
        }
    }
    SUBCASE("geometric oracle")
    {
        const auto s = power_law(-1.0, 1.0);
        const auto f = fixtures::decay_vector(s, 1.0, 1.0);
        const auto r = power_norms(f, 12);
        REQUIRE(r.log_norms.size() == 13);
        const double e2 = std::exp(2.0);
        CHECK(r.log_norms[0] == doctest::Approx(0.5 * std::log(1.0 / (e2 - 1.0))).epsilon(1e-12));
        for (int n = 0; n <= 12; ++n) {
            long double sum = 0.0L;
            for (int k = 1; k <= 4000; ++k) {
                sum += std::exp(2.0L * n * std::log(static_cast<long double>(k)) - 2.0L * k);
            }
            CHECK(r.log_norms[n] == doctest::Approx(0.5 * std::log(static_cast<double>(sum))).epsilon(1e-10));
        }
    }
    SUBCASE("zero vector")
    {
        const auto s = power_law(1.0, 1.0);
        const auto r = power_norms(coefficient_vector::zero(s), 10);
        REQUIRE(r.log_norms.size() == 11);
        for (double v : r.log_norms) {
            CHECK(v == neg_inf);
        }
    }
    SUBCASE("cutoff outside the domain")
    {
        const auto s = power_law(1.0, 1.0);
        const auto f = fixtures::decay_vector(s, 0.0, 0.0, 0, 2.0);
        const auto r = power_norms(f, 10);
        REQUIRE(r.cutoff);
        CHECK(*r.cutoff == 2);
    }
}

TEST_CASE("power norms are log-convex")
{
    const auto s = power_law(1.0, 1.0);
    for (const auto& f : {fixtures::decay_vector(s, 1.0, 0.5), fixtures::decay_vector(s, 1.0, 1.0, 1),
                          fixtures::decay_vector(s, 2.0, 1.0)}) {
        const auto r = power_norms(f, 30, decision_budget({}, 1 << 16));
        REQUIRE(r.log_norms.size() == 31);
        for (std::size_t n = 1; n + 1 < r.log_norms.size(); ++n) {
            CHECK(r.log_norms[n] <= 0.5 * (r.log_norms[n - 1] + r.log_norms[n + 1]) + 1e-9);
        }
    }
}
