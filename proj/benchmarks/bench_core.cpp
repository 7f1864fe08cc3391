#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "gevrey/borel_calculus.hpp"
#include "gevrey/cli/report.hpp"
#include "gevrey/counterexamples.hpp"
#include "gevrey/gevrey_classifier.hpp"
#include "gevrey/harness.hpp"

using namespace gevrey;

namespace {

spectrum_ptr random_explicit(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<complex_value> pts;
    while (pts.size() < n) {
        const complex_value z{u(rng), u(rng)};
        if (std::find(pts.begin(), pts.end(), z) == pts.end()) {
            pts.push_back(z);
        }
    }
    return make_spectrum(spectrum_family::explicit_points(pts));
}

void bm_log_sum(benchmark::State& state)
{
    for (auto _ : state) {
        log_sum s;
        for (int k = 0; k < state.range(0); ++k) {
            s.add(-0.001 * k);
        }
        benchmark::DoNotOptimize(s.value());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_log_sum)->Range(1 << 10, 1 << 20);

void bm_series_law(benchmark::State& state)
{
    const series_spec s{[](index_t k) { return -2.0 * std::log(static_cast<double>(k)); }, std::nullopt,
                        asymptotic_law::term(-2.0, 0.0, 1)};
    series_budget b;
    b.value_sweep = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_series(s, b));
    }
}
BENCHMARK(bm_series_law)->Range(1 << 10, 1 << 20);

void bm_series_ratio(benchmark::State& state)
{
    const series_spec s{[](index_t k) { return -std::sqrt(static_cast<double>(k)); }, std::nullopt, std::nullopt};
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_series(s));
    }
}
BENCHMARK(bm_series_ratio);

void bm_domain_direct_explicit(benchmark::State& state)
{
    const auto s = random_explicit(static_cast<std::size_t>(state.range(0)), 1);
    const auto f = coefficient_vector::from_complex(s, std::vector<complex_value>(state.range(0), {1.0, 0.5}));
    const auto F = symbol_function::gevrey_exp(1.0, 1.5) * symbol_function::power(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(domain_member_direct(F, f));
    }
}
BENCHMARK(bm_domain_direct_explicit)->Range(16, 4096);

void bm_domain_prop31_explicit(benchmark::State& state)
{
    const auto s = random_explicit(32, 2);
    const auto f = coefficient_vector::from_complex(s, std::vector<complex_value>(32, {1.0, 0.5}));
    const auto F = symbol_function::exp({1.0, -0.5});
    for (auto _ : state) {
        benchmark::DoNotOptimize(domain_member_prop31(F, f, 16));
    }
}
BENCHMARK(bm_domain_prop31_explicit);

void bm_vector_class(benchmark::State& state)
{
    const auto s = make_spectrum(spectrum_family::power_law({1, 1, 1, 0.5}));
    const auto f = coefficient_vector::decay(s, {0.0, 1.0, 0.5, 0, 0.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(vector_class(f, 2.0, gevrey_flavor::roumieu));
    }
}
BENCHMARK(bm_vector_class)->Unit(benchmark::kMillisecond);

void bm_estimate_order(benchmark::State& state)
{
    const auto s = make_spectrum(spectrum_family::power_law({1, 1, 0, 0}));
    const auto f = coefficient_vector::decay(s, {0.0, 1.0, 0.5, 0, 0.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_order(f, 0, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(bm_estimate_order)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void bm_region_condition(benchmark::State& state)
{
    const auto s = spectrum_family::power_law({1, 1, 1, 4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(region_condition(s, 1.5));
    }
}
BENCHMARK(bm_region_condition);

void bm_counterexample(benchmark::State& state)
{
    const auto kind = state.range(0) == 0 ? plan_case::bounded_real_parts : plan_case::unbounded_real_parts;
    for (auto _ : state) {
        const auto plan = build_violating_spectrum(1.0, kind);
        benchmark::DoNotOptimize(build_counterexample(plan));
    }
}
BENCHMARK(bm_counterexample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void bm_harness(benchmark::State& state)
{
    const auto s = make_spectrum(spectrum_family::power_law({1, 1, 1, 1}));
    const auto catalog = default_catalog(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(theorem_equivalence_harness(s, 1.0, catalog));
    }
}
BENCHMARK(bm_harness)->Unit(benchmark::kMillisecond);

void bm_cli_classify_vector(benchmark::State& state)
{
    const auto job = cli::parse_jobspec(R"({"command":"classify-vector",
        "spectrum":{"power_law":{"a_re":-1,"p_re":1}},
        "vectors":[{"name":"a","decay":{"c":1,"r":1}},{"name":"b","decay":{"c":1,"r":0.5}},
                   {"name":"c","decay":{"d":2}},{"name":"d","decay":{"c":1,"r":2}}],
        "beta":1})");
    cli::run_options o;
    o.seed_free = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cli::to_csv(cli::run(job, o)));
    }
}
BENCHMARK(bm_cli_classify_vector)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
