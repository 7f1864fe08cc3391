#include "gevrey/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gevrey/error.hpp"

namespace gevrey {

std::vector<catalog_entry> default_catalog(const spectrum_ptr& sigma, std::uint64_t seed, double p)
{
    std::vector<catalog_entry> out;
    if (sigma->finite()) {
        const auto n = static_cast<std::size_t>(*sigma->size());
        out.push_back({"ones", coefficient_vector::explicit_coords(sigma, std::vector<log_polar>(n, log_polar::one()), p)});
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> mag(-5.0, 2.0);
        std::uniform_real_distribution<double> phase(-pi, pi);
        for (int i = 0; i < 4; ++i) {
            std::vector<log_polar> c(n);
            for (auto& x : c) {
                x = log_polar::from_log(mag(rng), phase(rng));
            }
            out.push_back({"random" + std::to_string(i), coefficient_vector::explicit_coords(sigma, c, p)});
        }
        return out;
    }
    auto decay = [&](const char* name, decay_params d) {
        out.push_back({name, coefficient_vector::decay(sigma, d, p)});
    };
    decay("exp(-k^2)", {0.0, 1.0, 2.0, 0, 0.0});
    decay("exp(-k^1.5)", {0.0, 1.0, 1.5, 0, 0.0});
    decay("k^-k", {0.0, 1.0, 1.0, 1, 0.0});
    decay("exp(-k)", {0.0, 1.0, 1.0, 0, 0.0});
    decay("k^-2", {0.0, 0.0, 0.0, 0, 2.0});
    decay("exp(-sqrt k)", {0.0, 1.0, 0.5, 0, 0.0});
    out.push_back({"finite8", coefficient_vector::explicit_coords(sigma, std::vector<log_polar>(8, log_polar::one()), p)});
    return out;
}

namespace {

std::string entry_label(const std::string& name, double t, gevrey_flavor fl)
{
    std::ostringstream os;
    os << name << " t=" << t << " " << to_string(fl);
    return os.str();
}

}  // namespace

harness_report theorem_equivalence_harness(const spectrum_ptr& sigma, double beta,
                                           const std::vector<catalog_entry>& catalog, const harness_options& options)
{
    harness_report r;
    r.spectrum = sigma->description();
    r.beta = beta;
    r.region = region_condition(*sigma, beta);

    auto contradiction = [&](const std::string& what) { r.contradictions.push_back(what); };

    bool all_roumieu = true;
    bool some_beurling_refuted = false;
    for (const auto& item : catalog) {
        const auto adm = check_admissible(item.f, options.t_max, options.classifier.budget);
        if (!adm.ok()) {
            r.skipped.push_back(item.name + ": " + to_string(adm.rule.kind) + " (" + adm.detail + ")");
            continue;
        }
        r.admitted.push_back(item.name);
        const solution_handle h(item.f, adm);
        for (double t : options.times) {
            for (auto fl : {gevrey_flavor::roumieu, gevrey_flavor::beurling}) {
                auto v = solution_class_at(h, t, beta, fl, options.classifier);
                const auto label = entry_label(item.name, t, fl);
                if (v.member == membership::unknown) {
                    r.unknowns.push_back(label + ": " + v.detail);
                }
                if (fl == gevrey_flavor::roumieu && !v.is_member()) {
                    all_roumieu = false;
                }
                if (fl == gevrey_flavor::beurling && v.is_non_member()) {
                    some_beurling_refuted = true;
                }
                if (r.region.status == region_status::holds && fl == gevrey_flavor::beurling && v.is_non_member()) {
                    contradiction("region holds but " + label + " is refuted: " + v.detail);
                }
                r.entries.push_back({item.name, t, fl, std::move(v)});
            }
        }
    }

    if (r.region.status == region_status::violated) {
        try {
            r.plan = sigma->kind() == spectrum_kind::power_law ? select_violating_subsequence(*sigma, beta)
                                                               : build_violating_spectrum(beta, plan_case::bounded_real_parts);
            r.counterexample = build_counterexample(*r.plan, {0x1p-10, 1.0, 0x1p10}, options.classifier);
            all_roumieu = false;  // the constructed vector is certified outside
        } catch (const std::exception& e) {
            contradiction(std::string("region violated but no counterexample was certified: ") + e.what());
        }
    }

    if (r.region.status == region_status::holds && all_roumieu && some_beurling_refuted) {
        contradiction("jump property: every solution is Roumieu but some Beurling class is refuted");
    }

    if (options.throw_on_contradiction && !r.consistent()) {
        std::ostringstream os;
        os << "harness on " << r.spectrum << ", beta=" << beta << ":";
        for (const auto& c : r.contradictions) {
            os << "\n  " << c;
        }
        throw consistency_error(os.str());
    }
    return r;
}

std::vector<std::string> inclusion_chain_violations(const coefficient_vector& f, std::vector<double> betas,
                                                    const classifier_options& options)
{
    std::sort(betas.begin(), betas.end());
    std::vector<gevrey_verdict> rou, beu;
    for (double b : betas) {
        rou.push_back(vector_class(f, b, gevrey_flavor::roumieu, options));
        beu.push_back(vector_class(f, b, gevrey_flavor::beurling, options));
    }
    std::vector<std::string> out;
    auto fail = [&](const std::string& what, double b) {
        std::ostringstream os;
        os << f.description() << ": " << what << " at beta=" << b;
        out.push_back(os.str());
    };
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (beu[i].is_member() && rou[i].is_non_member()) {
            fail("Beurling member but Roumieu refuted", betas[i]);
        }
        if (rou[i].s_closed_form && beu[i].s_closed_form && *rou[i].s_closed_form != *beu[i].s_closed_form) {
            fail("flavors disagree on s*", betas[i]);
        }
        for (std::size_t j = i + 1; j < betas.size(); ++j) {
            if (betas[j] == betas[i]) {
                continue;
            }
            if (rou[i].is_member() && beu[j].is_non_member()) {
                fail("Roumieu member but Beurling refuted at a larger order", betas[i]);
            }
            if (rou[i].is_member() && rou[j].is_non_member()) {
                fail("Roumieu membership lost at a larger order", betas[i]);
            }
            if (rou[i].s_low > rou[j].s_high * (1 + 1e-9)) {
                fail("critical exponent decreased with the order", betas[i]);
            }
        }
    }
    return out;
}

}  // namespace gevrey
