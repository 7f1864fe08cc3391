#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gevrey/cli/jobspec.hpp"
#include "gevrey/cli/report.hpp"

using namespace gevrey::cli;

namespace {

const std::string jobs_dir = GSL_JOBS_DIR;

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

job_spec job_file(const std::string& name)
{
    return parse_jobspec(read_text(jobs_dir + "/" + name));
}

std::string parse_error(const std::string& text)
{
    try {
        parse_jobspec(text);
    } catch (const job_error& e) {
        return e.what();
    }
    return "";
}

std::vector<report_row> rows_of(const run_report& r, const std::string& kind)
{
    std::vector<report_row> out;
    for (const auto& row : r.rows) {
        if (row.kind == kind) {
            out.push_back(row);
        }
    }
    return out;
}

int run_binary(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + std::string(GSL_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

job_spec random_job(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::uniform_int_distribution<int> pick(0, 1 << 20);
    job_spec j;
    const auto& cmds = known_commands();
    j.command = cmds[pick(rng) % cmds.size()];
    if (pick(rng) % 2) {
        gevrey::power_law_params p{u(rng), u(rng), u(rng) - 2.0, u(rng)};
        j.spectrum = spectrum_spec{std::nullopt, p};
    } else {
        std::vector<gevrey::complex_value> pts;
        for (int i = 0; i < 5; ++i) {
            pts.emplace_back(u(rng) + 10.0 * i, u(rng));
        }
        j.spectrum = spectrum_spec{pts, std::nullopt};
    }
    if (j.command == "counterexample") {
        j.spectrum->points.reset();
        j.spectrum->power_law = gevrey::power_law_params{0.0, 0.0, 1.0, 2.0};
    }
    const int nv = 1 + pick(rng) % 3;
    for (int i = 0; i < nv; ++i) {
        vector_spec v;
        v.name = "v,\"" + std::to_string(i);
        if (j.spectrum->points) {
            v.coords = std::vector<gevrey::complex_value>(5, {u(rng), -u(rng)});
        } else {
            v.decay = gevrey::decay_params{u(rng) - 2.0, u(rng), u(rng), pick(rng) % 3, u(rng)};
        }
        j.vectors.push_back(v);
    }
    j.beta = 0.1 + u(rng);
    j.flavor = std::array{"roumieu", "beurling", "both"}[pick(rng) % 3];
    j.t_grid = {0.0, u(rng) / 3.0, 1e-7 * u(rng)};
    j.p = 1.0 + u(rng);
    j.t_max = 100.0 * u(rng);
    j.n_max = 3 + pick(rng) % 100;
    j.tol = std::pow(10.0, -3.0 - 3.0 * u(rng));
    if (pick(rng) % 2) {
        j.kmax = 16 + pick(rng);
    }
    j.counter_case = pick(rng) % 2 ? "bounded" : "unbounded";
    j.extrapolate = pick(rng) % 2;
    j.seed = std::uniform_int_distribution<std::uint64_t>()(rng);
    if (pick(rng) % 2) {
        j.boundary.b_plus = 0.5 + u(rng);
    }
    j.boundary.im_max = 1.0 + u(rng);
    j.boundary.samples = 2 + pick(rng) % 500;
    if (pick(rng) % 2) {
        j.output = "out/report " + std::to_string(pick(rng)) + ".csv";
    }
    return j;
}

}  // namespace

TEST_CASE("parse_jobspec examples")
{
    const auto j = parse_jobspec(
        R"({"command":"classify-spectrum","spectrum":{"power_law":{"a_re":1,"p_re":1,"a_im":1,"p_im":1}},"beta":1})");
    CHECK(j.command == "classify-spectrum");
    REQUIRE(j.spectrum);
    REQUIRE(j.spectrum->power_law);
    CHECK(j.spectrum->power_law->p_im == 1.0);
    CHECK(j.beta == 1.0);
    CHECK(j.p == 2.0);
    CHECK(j.t_max == 100.0);
    CHECK(j.n_max == 40);
    CHECK(j.tol == 1e-10);

    const auto missing = parse_error(
        R"({"command":"classify-vector","spectrum":{"power_law":{"a_re":1,"p_re":1}},"vectors":[{"decay":{"c":1,"r":1}}]})");
    CHECK(missing.find("\"beta\"") != std::string::npos);

    const auto negative = parse_error(
        R"({"command":"classify-spectrum","spectrum":{"power_law":{"a_re":1,"p_re":1}},"beta":-1})");
    CHECK(negative == "beta must be >= 0");
}

TEST_CASE("strict parsing")
{
    CHECK(parse_error(R"({"command":"harness","spectrum":{"power_law":{"a_re":1}},"beta":1,"extra":0})")
              .find("unknown field \"extra\"") != std::string::npos);
    CHECK(parse_error(R"({"command":"harness","spectrum":{"power_law":{"a_re":1,"zz":1}},"beta":1})")
              .find("spectrum.power_law: unknown field \"zz\"") != std::string::npos);
    CHECK(parse_error(R"({"command":"harness","spectrum":{"power_law":{"a_re":1}},"beta":1e400})")
              .find("overflow") != std::string::npos);
    CHECK(parse_error(R"({"command":"nope"})").find("unknown command") != std::string::npos);
    CHECK(parse_error(R"({"command":"evolve","spectrum":{"explicit":[[1,0]]},"vectors":[{"explicit":[1]}]})")
              .find("\"t_grid\"") != std::string::npos);
    CHECK(parse_error(R"({"command":"evolve","spectrum":{"explicit":[]},"vectors":[],"t_grid":[0]})")
              .find("must not be empty") != std::string::npos);
    CHECK(parse_error(R"({"command":"evolve","spectrum":{"explicit":[1,2]},"vectors":[{"explicit":[1]}],"t_grid":[0]})")
              .find("length") != std::string::npos);
    CHECK(parse_error(R"({"command":"classify-vector","n_max":2.5})").find("integer") != std::string::npos);

    const auto positioned = parse_error("{\"command\":\n \"evolve\",, }");
    CHECK(positioned.find("byte") != std::string::npos);
    CHECK(positioned.find("line 2") != std::string::npos);
}

TEST_CASE("serialize round trip")
{
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 200; ++i) {
        const auto j = random_job(rng);
        const auto text = serialize(j);
        job_spec back;
        REQUIRE_NOTHROW(back = parse_jobspec(text));
        CHECK(back == j);
        CHECK(serialize(back) == text);
        CHECK(job_id(back) == job_id(j));
    }
}

TEST_CASE("run examples")
{
    SUBCASE("classify-spectrum")
    {
        const auto r = run(job_file("classify_spectrum.json"));
        const auto region = rows_of(r, "region");
        REQUIRE(region.size() == 1);
        CHECK(region[0].status == "holds");
        CHECK(region[0].value == 1.0);
        CHECK(r.exit_code() == 0);
    }
    SUBCASE("counterexample")
    {
        const auto r = run(job_file("counterexample.json"));
        const auto adm = rows_of(r, "admissible");
        REQUIRE(adm.size() == 1);
        CHECK(adm[0].member == "true");
        const auto cls = rows_of(r, "class");
        REQUIRE(cls.size() == 1);
        CHECK(cls[0].flavor == "roumieu");
        CHECK(cls[0].member == "false");
        CHECK(rows_of(r, "analytic").at(0).status == "not_analytic");
        CHECK(r.exit_code() == 0);
    }
    SUBCASE("evolve")
    {
        const auto r = run(job_file("evolve.json"));
        const auto coords = rows_of(r, "coord");
        REQUIRE(coords.size() == 2);
        CHECK(coords[0].re == 1.0);
        CHECK(coords[1].re == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
        CHECK(coords[1].im == 0.0);
    }
    SUBCASE("classify-vector fans out in input order")
    {
        const auto r = run(job_file("classify_vector.json"));
        const auto cls = rows_of(r, "class");
        REQUIRE(cls.size() == 4);
        CHECK(cls[0].vector == "exp(-k)");
        CHECK(cls[0].member == "true");
        CHECK(cls[1].member == "false");
        CHECK(cls[2].vector == "k^-2");
        CHECK(cls[2].member == "false");
    }
    SUBCASE("estimate-order")
    {
        const auto r = run(job_file("estimate_order.json"));
        const auto norms = rows_of(r, "log_norm");
        REQUIRE(norms.size() == 41);
        for (int n = 0; n <= 40; ++n) {
            CHECK(norms[n].n == n);
        }
        REQUIRE(rows_of(r, "beta_hat").size() == 1);
        CHECK(std::abs(rows_of(r, "beta_hat")[0].value - 2.0) <= 0.15);
        CHECK(rows_of(r, "alpha_hat").size() == 1);
        CHECK(rows_of(r, "fit_residual").size() == 1);
    }
    SUBCASE("harness")
    {
        const auto r = run(job_file("harness.json"));
        const auto cons = rows_of(r, "consistency");
        CHECK(cons.size() == 7);
        for (const auto& c : cons) {
            CHECK(c.member == "true");
        }
        CHECK(rows_of(r, "region").at(0).status == "violated");
        CHECK(rows_of(r, "contradiction").empty());
        CHECK(r.exit_code() == 0);
    }
    SUBCASE("region-boundary")
    {
        const auto r = run(job_file("region_boundary.json"));
        const auto b = rows_of(r, "boundary");
        REQUIRE(b.size() == 33);
        CHECK(b.front().im == -8.0);
        CHECK(b.back().im == 8.0);
        CHECK(b[16].re == 0.0);
        CHECK(b.back().re == doctest::Approx(4.0));
    }
    SUBCASE("math failures become error rows")
    {
        const auto r = run(job_file("math_error.json"));
        CHECK(rows_of(r, "error").size() == 1);
        CHECK(r.exit_code() == 1);
    }
}

TEST_CASE("exit status contract")
{
    run_report r;
    CHECK(r.exit_code() == 0);
    r.any_unknown = true;
    CHECK(r.exit_code() == 2);
    r.any_error = true;
    CHECK(r.exit_code() == 1);
}

TEST_CASE("csv output")
{
    run_report empty;
    empty.include_timings = false;
    CHECK(to_csv(empty) ==
          "# gsl-report format=1 tool=0.1.0\n"
          "job_id,kind,vector,t,beta,flavor,member,s_low,s_high,status,n,value,re,im,detail\n");

    run_report r;
    r.job_id = "abc";
    report_row row;
    row.kind = "class";
    row.vector = "a,\"b\"";
    row.s_low = 0.5;
    row.s_high = gevrey::pos_inf;
    row.n = 3;
    r.rows.push_back(row);
    r.timings.emplace_back("phase", 1.0);
    const auto csv = to_csv(r);
    CHECK(csv.find("abc,class,\"a,\"\"b\"\"\",,,,,0.5,inf,,3,,,,\n") != std::string::npos);
    CHECK(csv.find("abc,timing,") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / "gsl_csv_test";
    std::filesystem::create_directories(dir);
    emit_csv(empty, (dir / "empty.csv").string());
    CHECK(read_text((dir / "empty.csv").string()) == to_csv(empty));
    CHECK_THROWS_WITH_AS(emit_csv(empty, (dir / "missing" / "x.csv").string()),
                         doctest::Contains("missing"), std::runtime_error);
}

TEST_CASE("determinism")
{
    run_options o;
    o.seed_free = true;
    for (const char* name : {"harness.json", "estimate_order.json", "counterexample.json", "classify_vector.json"}) {
        const auto job = job_file(name);
        CHECK(to_csv(run(job, o)) == to_csv(run(job, o)));
    }
}

TEST_CASE("budget overrides")
{
    run_options o;
    o.kmax = 4096;
    o.tol = 1e-8;
    const auto j = resolve(job_file("classify_spectrum.json"), o);
    CHECK(j.kmax == 4096);
    CHECK(j.tol == 1e-8);
    o.kmax = 3;
    CHECK_THROWS_AS(resolve(job_file("classify_spectrum.json"), o), job_error);
}

TEST_CASE("golden jobs through the binary")
{
    const auto out = (std::filesystem::temp_directory_path() / "gsl_golden.csv").string();
    auto args = [&](const std::string& cmd, const std::string& job) {
        return cmd + " --job " + jobs_dir + "/" + job + " --out " + out + " --seed-free";
    };
    CHECK(run_binary(args("classify-spectrum", "classify_spectrum.json")) == 0);
    CHECK(run_binary(args("evolve", "evolve.json")) == 0);
    CHECK(run_binary(args("counterexample", "counterexample.json")) == 0);
    CHECK(run_binary(args("region-boundary", "region_boundary.json")) == 0);
    CHECK(run_binary(args("classify-vector", "bad_beta.json")) == 1);
    CHECK(read_text(out).find("beta must be >= 0") != std::string::npos);
    CHECK(run_binary(args("evolve", "math_error.json")) == 1);
    CHECK(run_binary(args("evolve", "classify_spectrum.json")) == 1);
    CHECK(run_binary(args("classify-spectrum", "classify_spectrum.json") + " --kmax 3") == 1);
    CHECK(run_binary(args("classify-spectrum", "classify_spectrum.json") + " --kmax 65536") == 0);
    CHECK(read_text(out).find("flag,,,,,,,,--kmax,,,,,65536") != std::string::npos);
    CHECK(run_binary(args("classify-spectrum", "classify_spectrum.json"), "GSL_KMAX=oops") == 1);
    CHECK(run_binary(args("classify-spectrum", "classify_spectrum.json"), "GSL_KMAX=8192") == 0);
    CHECK(read_text(out).find("flag,,,,,,,,GSL_KMAX,,,,,8192") != std::string::npos);
    CHECK(run_binary(args("classify-spectrum", "classify_spectrum.json") + " --kmax 4096", "GSL_KMAX=8192") == 0);
    CHECK(read_text(out).find("GSL_KMAX") == std::string::npos);
    CHECK(run_binary("classify-spectrum --job /nonexistent.json --out " + out) == 1);

    CHECK(run_binary(args("harness", "harness.json")) == 0);
    const auto first = read_text(out);
    CHECK(run_binary(args("harness", "harness.json")) == 0);
    CHECK(read_text(out) == first);
}
