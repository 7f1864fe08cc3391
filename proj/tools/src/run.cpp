#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <future>
#include <sstream>

#include "gevrey/borel_calculus.hpp"
#include "gevrey/cli/report.hpp"
#include "gevrey/counterexamples.hpp"
#include "gevrey/evolution.hpp"
#include "gevrey/gevrey_classifier.hpp"
#include "gevrey/harness.hpp"

namespace gevrey::cli {
namespace {

using rows = std::vector<report_row>;
using clock_type = std::chrono::steady_clock;

constexpr std::size_t max_witness_rows = 16;
constexpr index_t max_coord_rows = 64;

std::string member_cell(membership m)
{
    switch (m) {
    case membership::member: return "true";
    case membership::non_member: return "false";
    default: return "unknown";
    }
}

std::string certificate_cell(const convergence_certificate& c)
{
    return std::string(to_string(c.status)) + "/" + to_string(c.basis);
}

struct context {
    job_spec job;
    series_budget budget;
    classifier_options classifier;
    bool any_unknown = false;
};

std::vector<gevrey_flavor> flavors(const job_spec& j)
{
    if (j.flavor == "roumieu") return {gevrey_flavor::roumieu};
    if (j.flavor == "beurling") return {gevrey_flavor::beurling};
    return {gevrey_flavor::roumieu, gevrey_flavor::beurling};
}

report_row error_row(const std::string& vector, const std::string& what)
{
    report_row r;
    r.kind = "error";
    r.vector = vector;
    r.status = "error";
    r.detail = what;
    return r;
}

report_row class_row(const std::string& vector, double t, const gevrey_verdict& v)
{
    report_row r;
    r.kind = "class";
    r.vector = vector;
    r.t = t;
    r.beta = v.beta;
    r.flavor = v.beta == 0.0 ? "exponential_type" : to_string(v.flavor);
    r.member = member_cell(v.member);
    r.s_low = v.s_low;
    r.s_high = v.s_high;
    if (v.s_closed_form) {
        r.status = "closed_form";
        r.value = *v.s_closed_form;
    } else if (!v.probes.empty()) {
        r.status = certificate_cell(v.probes.back().certificate);
    } else {
        r.status = "none";
    }
    if (v.beta == 0.0) {
        r.value = v.alpha;
    }
    r.detail = v.detail;
    return r;
}

report_row admissible_row(const std::string& vector, const admissibility_certificate& c)
{
    report_row r;
    r.kind = "admissible";
    r.vector = vector;
    r.member = member_cell(c.admissible);
    r.status = to_string(c.rule.kind);
    r.detail = c.detail;
    return r;
}

void region_rows(const region_report& rep, rows& out)
{
    report_row r;
    r.kind = "region";
    r.beta = rep.beta;
    r.status = to_string(rep.status);
    r.value = rep.b_plus;
    r.re = rep.exception_radius;
    r.detail = rep.detail;
    out.push_back(r);
    const std::size_t n = std::min(rep.witness.size(), max_witness_rows);
    for (std::size_t i = 0; i < n; ++i) {
        report_row w;
        w.kind = "witness";
        w.beta = rep.beta;
        w.n = rep.witness_indices.at(i);
        w.re = rep.witness[i].real();
        w.im = rep.witness[i].imag();
        w.value = region_ratio(rep.witness[i], rep.beta);
        out.push_back(w);
    }
}

void plan_rows(const violating_plan& plan, const counterexample_artifacts& art, rows& out)
{
    report_row p;
    p.kind = "plan";
    p.beta = plan.beta;
    p.status = to_string(plan.kind);
    p.value = plan.omega;
    p.n = plan.verified_prefix;
    p.detail = plan.detail;
    out.push_back(p);
    out.push_back(admissible_row("counterexample", art.admissibility));
    out.push_back(class_row("counterexample", 0.0, art.non_membership));
    for (const auto& probe : art.h_star_probes) {
        report_row h;
        h.kind = "h_star_probe";
        h.vector = "counterexample";
        h.beta = plan.beta;
        h.value = probe.s;
        h.status = certificate_cell(probe.certificate);
        h.n = probe.certificate.terms;
        h.detail = probe.certificate.detail;
        out.push_back(h);
    }
    report_row lb;
    lb.kind = "lower_bound";
    lb.vector = "counterexample";
    lb.beta = plan.beta;
    lb.n = art.lower_bound_checked;
    lb.detail = art.detail;
    out.push_back(lb);
}

// Runs body, turning any exception into an error row.
rows guarded(const std::string& vector, const std::function<void(rows&)>& body)
{
    rows out;
    try {
        body(out);
    } catch (const std::exception& e) {
        out.push_back(error_row(vector, e.what()));
    }
    return out;
}

void mark_unknowns(const rows& rs, bool& any_unknown)
{
    for (const auto& r : rs) {
        if (r.member == "unknown" || r.status == "unknown" ||
            r.status.rfind("inconclusive", 0) == 0) {
            any_unknown = true;
        }
    }
}

// Fans out one task per vector and merges in input order.
rows per_vector(const context& ctx, const spectrum_ptr& sigma,
                const std::function<void(const std::string&, const coefficient_vector&, rows&)>& body)
{
    std::vector<std::future<rows>> tasks;
    for (const auto& spec : ctx.job.vectors) {
        tasks.push_back(std::async(std::launch::async, [&ctx, &sigma, &body, spec] {
            return guarded(spec.name, [&](rows& out) {
                const auto f = build_vector(spec, sigma, ctx.job.p);
                body(spec.name, f, out);
            });
        }));
    }
    rows out;
    for (auto& t : tasks) {
        auto part = t.get();
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

rows classify_spectrum(const context& ctx)
{
    const auto sigma = build_spectrum(*ctx.job.spectrum);
    rows out;
    region_rows(region_condition(*sigma, *ctx.job.beta, ctx.job.extrapolate), out);
    return out;
}

rows classify_vector(const context& ctx)
{
    const auto sigma = build_spectrum(*ctx.job.spectrum);
    const double beta = *ctx.job.beta;
    return per_vector(ctx, sigma, [&](const std::string& name, const coefficient_vector& f, rows& out) {
        if (beta == 0.0) {
            out.push_back(class_row(name, no_value, vector_class_beta0(f)));
            return;
        }
        for (auto fl : flavors(ctx.job)) {
            out.push_back(class_row(name, no_value, vector_class(f, beta, fl, ctx.classifier)));
        }
    });
}

rows evolve(const context& ctx)
{
    const auto sigma = build_spectrum(*ctx.job.spectrum);
    return per_vector(ctx, sigma, [&](const std::string& name, const coefficient_vector& f, rows& out) {
        const auto cert = check_admissible(f, ctx.job.t_max, ctx.budget);
        out.push_back(admissible_row(name, cert));
        if (!cert.ok()) {
            return;
        }
        const solution_handle h(f, cert);
        for (double t : ctx.job.t_grid) {
            const auto y = solve(h, t, ctx.budget);
            report_row s;
            s.kind = "solve";
            s.vector = name;
            s.t = t;
            s.value = y.log_norm(ctx.budget);
            s.status = certificate_cell(y.norm_certificate(decision_budget(ctx.budget)));
            out.push_back(s);
            const auto support = y.support_length();
            if (support && *support <= max_coord_rows) {
                const auto coords = y.prefix(*support);
                for (std::size_t k = 0; k < coords.size(); ++k) {
                    const auto z = coords[k].to_complex();
                    report_row c;
                    c.kind = "coord";
                    c.vector = name;
                    c.t = t;
                    c.n = static_cast<std::int64_t>(k + 1);
                    c.value = coords[k].log_mag;
                    c.re = z.real();
                    c.im = z.imag();
                    out.push_back(c);
                }
            }
            if (ctx.job.beta) {
                for (auto fl : flavors(ctx.job)) {
                    if (*ctx.job.beta == 0.0) {
                        out.push_back(class_row(name, t, vector_class_beta0(y)));
                        break;
                    }
                    out.push_back(class_row(name, t, solution_class_at(h, t, *ctx.job.beta, fl, ctx.classifier)));
                }
            }
        }
    });
}

rows estimate(const context& ctx)
{
    const auto sigma = build_spectrum(*ctx.job.spectrum);
    return per_vector(ctx, sigma, [&](const std::string& name, const coefficient_vector& f, rows& out) {
        const auto est = estimate_order(f, 0, ctx.job.n_max, ctx.budget);
        for (std::size_t n = 0; n < est.log_norms.size(); ++n) {
            report_row r;
            r.kind = "log_norm";
            r.vector = name;
            r.n = static_cast<std::int64_t>(n);
            r.value = est.log_norms[n];
            out.push_back(r);
        }
        auto summary = [&](const char* kind, double v) {
            report_row r;
            r.kind = kind;
            r.vector = name;
            r.value = v;
            std::ostringstream os;
            os << "fit over n=" << est.n_min << ".." << est.n_max;
            r.detail = os.str();
            out.push_back(r);
        };
        summary("beta_hat", est.beta_hat);
        summary("alpha_hat", est.alpha_hat);
        summary("fit_residual", est.residual);
    });
}

rows counterexample(const context& ctx)
{
    const double beta = *ctx.job.beta;
    violating_plan plan;
    if (ctx.job.spectrum) {
        const auto sigma = build_spectrum(*ctx.job.spectrum);
        plan = select_violating_subsequence(*sigma, beta);
    } else {
        const auto kind =
            ctx.job.counter_case == "bounded" ? plan_case::bounded_real_parts : plan_case::unbounded_real_parts;
        plan = build_violating_spectrum(beta, kind);
    }
    const auto art = build_counterexample(plan, {0x1p-10, 1.0, 0x1p10}, ctx.classifier);
    rows out;
    plan_rows(plan, art, out);
    if (beta == 1.0 && art.admissibility.ok()) {
        const solution_handle h(art.f, art.admissibility);
        const auto a = analytic_at_zero_probe(h, {}, ctx.job.n_max, ctx.classifier);
        report_row r;
        r.kind = "analytic";
        r.vector = "counterexample";
        r.beta = 1.0;
        r.status = to_string(a.status);
        r.value = a.delta;
        r.detail = a.detail;
        out.push_back(r);
    }
    return out;
}

rows harness(const context& ctx)
{
    const auto sigma = build_spectrum(*ctx.job.spectrum);
    std::vector<catalog_entry> catalog;
    if (ctx.job.vectors.empty()) {
        catalog = default_catalog(sigma, ctx.job.seed, ctx.job.p);
    } else {
        for (const auto& v : ctx.job.vectors) {
            catalog.push_back({v.name, build_vector(v, sigma, ctx.job.p)});
        }
    }
    harness_options opts;
    opts.t_max = ctx.job.t_max;
    opts.classifier = ctx.classifier;
    opts.throw_on_contradiction = false;
    if (!ctx.job.t_grid.empty()) {
        opts.times = ctx.job.t_grid;
    }
    const auto rep = theorem_equivalence_harness(sigma, *ctx.job.beta, catalog, opts);

    rows out;
    region_rows(rep.region, out);
    for (const auto& e : rep.entries) {
        out.push_back(class_row(e.vector, e.t, e.verdict));
    }
    if (rep.plan && rep.counterexample) {
        plan_rows(*rep.plan, *rep.counterexample, out);
    }
    for (const auto& entry : catalog) {
        report_row r;
        r.kind = "consistency";
        r.vector = entry.name;
        r.beta = rep.beta;
        const bool admitted =
            std::find(rep.admitted.begin(), rep.admitted.end(), entry.name) != rep.admitted.end();
        r.status = admitted ? "admitted" : "skipped";
        std::string reason;
        for (const auto& s : rep.skipped) {
            if (s.rfind(entry.name + ":", 0) == 0) {
                reason = s;
            }
        }
        bool contradicted = false;
        for (const auto& c : rep.contradictions) {
            if (c.find(entry.name) != std::string::npos) {
                contradicted = true;
                reason = c;
            }
        }
        r.member = contradicted ? "false" : "true";
        r.detail = reason;
        out.push_back(r);
    }
    for (const auto& c : rep.contradictions) {
        report_row r;
        r.kind = "contradiction";
        r.beta = rep.beta;
        r.status = "error";
        r.detail = c;
        out.push_back(r);
    }
    for (const auto& u : rep.unknowns) {
        report_row r;
        r.kind = "unknown";
        r.beta = rep.beta;
        r.status = "unknown";
        r.detail = u;
        out.push_back(r);
    }
    return out;
}

rows region_boundary(const context& ctx)
{
    const double beta = *ctx.job.beta;
    rows out;
    double b = 0.0;
    if (ctx.job.boundary.b_plus) {
        b = *ctx.job.boundary.b_plus;
    } else {
        const auto sigma = build_spectrum(*ctx.job.spectrum);
        const auto rep = region_condition(*sigma, beta, ctx.job.extrapolate);
        region_rows(rep, out);
        if (rep.status != region_status::holds || !(rep.b_plus > 0.0)) {
            out.push_back(error_row("", "region-boundary: the region condition does not hold, no b_plus"));
            return out;
        }
        b = rep.b_plus;
    }
    const int m = ctx.job.boundary.samples;
    const double y_max = ctx.job.boundary.im_max;
    for (int i = 0; i < m; ++i) {
        const double y = -y_max + 2.0 * y_max * i / (m - 1);
        report_row r;
        r.kind = "boundary";
        r.beta = beta;
        r.n = i;
        r.value = b;
        r.re = b * std::pow(std::abs(y), 1.0 / beta);
        r.im = y;
        out.push_back(r);
    }
    return out;
}

}  // namespace

int run_report::exit_code() const
{
    if (any_error) {
        return 1;
    }
    return any_unknown ? 2 : 0;
}

job_spec resolve(const job_spec& job, const run_options& options)
{
    job_spec j = job;
    if (options.tol) {
        if (!(*options.tol > 0.0) || !std::isfinite(*options.tol)) {
            throw job_error("--tol must be a finite real > 0");
        }
        j.tol = *options.tol;
    }
    if (options.kmax) {
        if (*options.kmax < 16) {
            throw job_error("kmax must be >= 16");
        }
        j.kmax = *options.kmax;
    }
    return j;
}

run_report run(const job_spec& input, const run_options& options)
{
    run_report rep;
    rep.include_timings = !options.seed_free;
    rep.job = input;
    rep.job_id = job_id(input);

    for (const auto& [name, value] : options.flags) {
        report_row r;
        r.kind = "flag";
        r.status = name;
        r.detail = value;
        rep.rows.push_back(r);
    }

    context ctx;
    try {
        ctx.job = resolve(input, options);
    } catch (const std::exception& e) {
        rep.rows.push_back(error_row("", e.what()));
        rep.any_error = true;
        return rep;
    }
    rep.job = ctx.job;
    rep.job_id = job_id(ctx.job);
    {
        report_row r;
        r.kind = "job";
        r.detail = serialize(ctx.job);
        rep.rows.push_back(r);
    }
    ctx.budget.rel_tol = ctx.job.tol;
    if (ctx.job.kmax) {
        ctx.budget.k_max = *ctx.job.kmax;
        ctx.budget.value_sweep = std::min(ctx.budget.value_sweep, ctx.budget.k_max);
    }
    ctx.classifier.budget = decision_budget(ctx.budget);

    static const std::vector<std::pair<std::string, std::function<rows(const context&)>>> commands{
        {"classify-spectrum", classify_spectrum}, {"classify-vector", classify_vector},
        {"evolve", evolve},                       {"estimate-order", estimate},
        {"counterexample", counterexample},       {"harness", harness},
        {"region-boundary", region_boundary}};

    const auto start = clock_type::now();
    rows result;
    bool dispatched = false;
    for (const auto& [name, fn] : commands) {
        if (name == ctx.job.command) {
            result = guarded("", [&](rows& out) { out = fn(ctx); });
            dispatched = true;
        }
    }
    if (!dispatched) {
        result.push_back(error_row("", "unknown command \"" + ctx.job.command + "\""));
    }
    const std::chrono::duration<double> elapsed = clock_type::now() - start;
    rep.timings.emplace_back(ctx.job.command, elapsed.count());

    for (const auto& r : result) {
        if (r.status == "error") {
            rep.any_error = true;
        }
    }
    mark_unknowns(result, rep.any_unknown);
    rep.rows.insert(rep.rows.end(), result.begin(), result.end());
    return rep;
}

}  // namespace gevrey::cli
