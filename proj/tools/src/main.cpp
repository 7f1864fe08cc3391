#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gevrey/cli/jobspec.hpp"
#include "gevrey/cli/report.hpp"

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw gevrey::cli::job_error("cannot read " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::int64_t parse_kmax(const std::string& text, const std::string& source)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw gevrey::cli::job_error(source + ": expected an integer, got \"" + text + "\"");
    }
    return v;
}

// Writes a header plus one error row so that failures stay machine-readable.
void write_failure(const std::string& out_path, const std::string& what)
{
    if (out_path.empty()) {
        return;
    }
    gevrey::cli::run_report rep;
    gevrey::cli::report_row r;
    r.kind = "error";
    r.status = "error";
    r.detail = what;
    rep.rows.push_back(r);
    rep.include_timings = false;
    try {
        gevrey::cli::emit_csv(rep, out_path);
    } catch (const std::exception& e) {
        std::cerr << "gsl: " << e.what() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace gevrey::cli;

    CLI::App app{"Gevrey regularity of diagonal spectral operators: batch jobs to CSV reports"};
    app.set_version_flag("--version", std::string(tool_version));
    std::string command;
    std::string job_path;
    std::string out_path;
    bool seed_free = false;
    std::optional<double> tol;
    std::optional<std::int64_t> kmax;
    app.add_option("command", command, "job command")->required()->check(CLI::IsMember(known_commands()));
    app.add_option("--job", job_path, "job file (JSON)")->required();
    app.add_option("--out", out_path, "report file (CSV); defaults to the job's output field");
    app.add_flag("--seed-free", seed_free, "omit run-dependent content (timings) for byte-identical reports");
    app.add_option("--tol", tol, "relative tolerance of the series protocol");
    app.add_option("--kmax", kmax, "series budget K_max (overrides GSL_KMAX and the job)");
    CLI11_PARSE(app, argc, argv);

    run_options options;
    options.seed_free = seed_free;
    options.tol = tol;
    options.flags.emplace_back("command", command);
    options.flags.emplace_back("--job", job_path);
    try {
        const job_spec job = parse_jobspec(read_file(job_path));
        if (job.command != command) {
            throw job_error("command mismatch: command line says \"" + command + "\", job file says \"" +
                            job.command + "\"");
        }
        if (out_path.empty() && job.output) {
            out_path = *job.output;
        }
        if (out_path.empty()) {
            throw job_error("no output path: pass --out or set \"output\" in the job");
        }
        options.flags.emplace_back("--out", out_path);
        if (seed_free) {
            options.flags.emplace_back("--seed-free", "true");
        }
        if (tol) {
            options.flags.emplace_back("--tol", app.get_option("--tol")->as<std::string>());
        }
        if (kmax) {
            options.kmax = kmax;
            options.flags.emplace_back("--kmax", app.get_option("--kmax")->as<std::string>());
        } else if (const char* env = std::getenv("GSL_KMAX"); env && *env) {
            options.kmax = parse_kmax(env, "GSL_KMAX");
            options.flags.emplace_back("GSL_KMAX", env);
        }

        const run_report rep = run(job, options);
        emit_csv(rep, out_path);
        for (const auto& r : rep.rows) {
            if (r.kind == "error" || r.kind == "contradiction") {
                std::cerr << "gsl: " << r.kind << ": " << r.detail << '\n';
            }
        }
        return rep.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "gsl: error: " << e.what() << '\n';
        write_failure(out_path, e.what());
        return 1;
    }
}
