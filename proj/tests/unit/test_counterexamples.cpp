#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gevrey/counterexamples.hpp"
#include "gevrey/error.hpp"
#include "gevrey/gevrey_classifier.hpp"

using namespace gevrey;
using fixtures::explicit_spectrum;
using fixtures::power_law;

namespace {

void check_plan_inequalities(const violating_plan& plan, index_t prefix)
{
    double prev = 0.0;
    for (index_t n = 1; n <= prefix; ++n) {
        const auto mu = plan.lambda(n);
        const double nn = static_cast<double>(n);
        REQUIRE(mu.real() < std::pow(std::abs(mu.imag()), 1.0 / plan.beta) / (nn * nn));
        REQUIRE(std::abs(mu) > std::max(nn, prev));
        if (plan.kind == plan_case::unbounded_real_parts) {
            REQUIRE(mu.real() >= nn);
        } else {
            REQUIRE(mu.real() <= plan.omega);
        }
        prev = std::abs(mu);
    }
}

}  // namespace

TEST_CASE("canonical plans")
{
    SUBCASE("bounded, beta = 1")
    {
        const auto plan = build_violating_spectrum(1.0, plan_case::bounded_real_parts);
        CHECK(plan.lambda(3) == complex_value{0.0, 18.0});
        CHECK(plan.verified_prefix == 10000);
        check_plan_inequalities(plan, 10000);
    }
    SUBCASE("bounded, beta = 2")
    {
        const auto plan = build_violating_spectrum(2.0, plan_case::bounded_real_parts);
        CHECK(plan.lambda(2) == complex_value{0.0, 32.0});
        check_plan_inequalities(plan, 10000);
    }
    SUBCASE("unbounded, beta = 1")
    {
        const auto plan = build_violating_spectrum(1.0, plan_case::unbounded_real_parts);
        CHECK(plan.lambda(2) == complex_value{2.0, 32.0});
        check_plan_inequalities(plan, 10000);
    }
    CHECK_THROWS(build_violating_spectrum(0.0, plan_case::bounded_real_parts));
}

TEST_CASE("disk radii")
{
    for (double beta : {1.0, 1.5, 2.0}) {
        for (auto kind : {plan_case::bounded_real_parts, plan_case::unbounded_real_parts}) {
            const auto plan = build_violating_spectrum(beta, kind, 2000);
            for (index_t n = 1; n < 2000; ++n) {
                const double e = plan.epsilon_at(n);
                REQUIRE(e > 0.0);
                REQUIRE(e < 1.0 / static_cast<double>(n));
                REQUIRE(e + plan.epsilon_at(n + 1) < std::abs(plan.lambda(n + 1) - plan.lambda(n)));
                const double nn = static_cast<double>(n);
                for (int j = 0; j < 16; ++j) {
                    const double th = 2.0 * pi * j / 16.0;
                    const auto z = plan.lambda(n) + e * complex_value{std::cos(th), std::sin(th)};
                    REQUIRE(z.real() < std::pow(std::abs(z.imag()), 1.0 / beta) / (nn * nn));
                }
            }
        }
    }
}

TEST_CASE("subsequence selection")
{
    const auto im2 = spectrum_family::power_law({0, 0, 1, 2});
    const auto plan = select_violating_subsequence(im2, 1.0, 5000);
    check_plan_inequalities(plan, 5000);
    for (index_t n = 1; n <= 50; ++n) {
        CHECK(plan.lambda(n) == im2.at(plan.scale * static_cast<index_t>(std::pow(n, plan.step))));
    }
    const auto mixed = spectrum_family::power_law({1, 1, 1, 4});
    for (double beta : {1.0, 1.5, 2.0}) {
        const auto p = select_violating_subsequence(mixed, beta, 2000);
        CHECK(p.kind == plan_case::unbounded_real_parts);
        check_plan_inequalities(p, 2000);
    }
    CHECK_THROWS(select_violating_subsequence(spectrum_family::power_law({1, 1, 1, 1}), 1.0));
}

TEST_CASE("counterexample artifacts")
{
    for (double beta : {1.0, 2.0}) {
        for (auto kind : {plan_case::bounded_real_parts, plan_case::unbounded_real_parts}) {
            CAPTURE(beta);
            const auto plan = build_violating_spectrum(beta, kind);
            const auto art = build_counterexample(plan);
            CHECK(art.admissibility.ok());
            CHECK(art.non_membership.is_non_member());
            CHECK(art.non_membership.flavor == gevrey_flavor::roumieu);
            REQUIRE(art.h_star_probes.size() == 3);
            for (const auto& p : art.h_star_probes) {
                CHECK(p.certificate.diverges());
            }
            CHECK(art.lower_bound_checked > 0);
            CHECK(art.h.has_value() == (kind == plan_case::unbounded_real_parts));
            for (index_t k = 1; k <= 1000; ++k) {
                const double kk = static_cast<double>(k);
                REQUIRE(art.h_star.at(k).phase == 0.0);
                REQUIRE(art.h_star.log_abs(k) == -2.0 * std::log(kk));
            }
        }
    }
}

TEST_CASE("bounded plan uses f = k^-2")
{
    const auto art = build_counterexample(build_violating_spectrum(1.0, plan_case::bounded_real_parts));
    for (index_t k = 1; k <= 100; ++k) {
        CHECK(art.f.log_abs(k) == doctest::Approx(-2.0 * std::log(static_cast<double>(k))));
    }
}

TEST_CASE("analyticity probe")
{
    SUBCASE("explicit spectrum")
    {
        const auto s = explicit_spectrum({{1, 0}, {0, 3}, {-2, 0}});
        const auto f = coefficient_vector::from_complex(s, {{1, 0}, {1, 0}, {1, 0}});
        const auto r = analytic_at_zero_probe(make_solution(f), {});
        CHECK(r.status == analyticity::analytic_at_zero);
        CHECK(r.delta == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("k^-2 on the negative axis")
    {
        const auto s = power_law(-1.0, 1.0);
        const auto f = fixtures::decay_vector(s, 0.0, 0.0, 0, 2.0);
        CHECK(analytic_at_zero_probe(make_solution(f), {}).status == analyticity::not_analytic);
    }
    SUBCASE("bounded counterexample")
    {
        const auto art = build_counterexample(build_violating_spectrum(1.0, plan_case::bounded_real_parts));
        const solution_handle h(art.f, art.admissibility);
        CHECK(analytic_at_zero_probe(h, {}).status == analyticity::not_analytic);
    }
    SUBCASE("jump effect: analytic on a sector spectrum implies entire")
    {
        const auto s = power_law(1.0, 1.0, 1.0, 1.0);
        REQUIRE(region_condition(*s, 1.0).status == region_status::holds);
        for (double r : {2.0, 1.5}) {
            const auto f = fixtures::decay_vector(s, 1.0, r);
            const auto a = analytic_at_zero_probe(make_solution(f), {});
            if (a.status == analyticity::analytic_at_zero) {
                CHECK(vector_class(f, 1.0, gevrey_flavor::beurling).is_member());
            }
        }
    }
}
