#include "gevrey/cli/jobspec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gevrey::cli {
namespace {

using json = nlohmann::ordered_json;

void require_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        throw job_error(where + ": expected an object");
    }
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            throw job_error(where + ": unknown field \"" + item.key() + "\"");
        }
    }
}

double real_field(const json& v, const std::string& where)
{
    if (!v.is_number()) {
        throw job_error(where + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw job_error(where + ": must be finite");
    }
    return x;
}

std::int64_t int_field(const json& v, const std::string& where)
{
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(INT64_MAX)) {
            throw job_error(where + ": out of range");
        }
        return static_cast<std::int64_t>(u);
    }
    if (!v.is_number_integer()) {
        throw job_error(where + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

std::string string_field(const json& v, const std::string& where)
{
    if (!v.is_string()) {
        throw job_error(where + ": expected a string");
    }
    return v.get<std::string>();
}

complex_value complex_field(const json& v, const std::string& where)
{
    if (v.is_number()) {
        return {real_field(v, where), 0.0};
    }
    if (!v.is_array() || v.size() != 2) {
        throw job_error(where + ": expected a number or [re, im]");
    }
    return {real_field(v[0], where + "[0]"), real_field(v[1], where + "[1]")};
}

std::vector<complex_value> complex_list(const json& v, const std::string& where)
{
    if (!v.is_array()) {
        throw job_error(where + ": expected an array");
    }
    std::vector<complex_value> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(complex_field(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

power_law_params parse_power_law(const json& v, const std::string& where)
{
    require_keys(v, where, {"a_re", "p_re", "a_im", "p_im"});
    power_law_params p;
    if (v.contains("a_re")) p.a_re = real_field(v["a_re"], where + ".a_re");
    if (v.contains("p_re")) p.p_re = real_field(v["p_re"], where + ".p_re");
    if (v.contains("a_im")) p.a_im = real_field(v["a_im"], where + ".a_im");
    if (v.contains("p_im")) p.p_im = real_field(v["p_im"], where + ".p_im");
    return p;
}

spectrum_spec parse_spectrum(const json& v)
{
    require_keys(v, "spectrum", {"explicit", "power_law"});
    spectrum_spec s;
    if (v.contains("explicit")) {
        s.points = complex_list(v["explicit"], "spectrum.explicit");
        if (s.points->empty()) {
            throw job_error("spectrum.explicit: must not be empty");
        }
    }
    if (v.contains("power_law")) {
        s.power_law = parse_power_law(v["power_law"], "spectrum.power_law");
    }
    if (s.points.has_value() == s.power_law.has_value()) {
        throw job_error("spectrum: exactly one of \"explicit\" and \"power_law\" is required");
    }
    return s;
}

decay_params parse_decay(const json& v, const std::string& where)
{
    require_keys(v, where, {"log_scale", "c", "r", "q", "d"});
    decay_params d;
    if (v.contains("log_scale")) d.log_scale = real_field(v["log_scale"], where + ".log_scale");
    if (v.contains("c")) d.c = real_field(v["c"], where + ".c");
    if (v.contains("r")) d.r = real_field(v["r"], where + ".r");
    if (v.contains("q")) {
        const auto q = int_field(v["q"], where + ".q");
        if (q < 0 || q > 8) {
            throw job_error(where + ".q: must be in [0, 8]");
        }
        d.q = static_cast<int>(q);
    }
    if (v.contains("d")) d.d = real_field(v["d"], where + ".d");
    return d;
}

vector_spec parse_vector(const json& v, std::size_t i)
{
    const std::string where = "vectors[" + std::to_string(i) + "]";
    require_keys(v, where, {"name", "explicit", "decay"});
    vector_spec out;
    out.name = v.contains("name") ? string_field(v["name"], where + ".name") : "v" + std::to_string(i + 1);
    if (v.contains("explicit")) {
        out.coords = complex_list(v["explicit"], where + ".explicit");
    }
    if (v.contains("decay")) {
        out.decay = parse_decay(v["decay"], where + ".decay");
    }
    if (out.coords.has_value() == out.decay.has_value()) {
        throw job_error(where + ": exactly one of \"explicit\" and \"decay\" is required");
    }
    return out;
}

void require(bool present, const std::string& command, const char* field)
{
    if (!present) {
        throw job_error(command + ": missing required field \"" + field + "\"");
    }
}

void validate(const job_spec& j)
{
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), j.command) == cmds.end()) {
        throw job_error("command: unknown command \"" + j.command + "\"");
    }
    if (j.beta && *j.beta < 0.0) {
        throw job_error("beta must be >= 0");
    }
    if (j.flavor != "roumieu" && j.flavor != "beurling" && j.flavor != "both") {
        throw job_error("flavor must be one of roumieu, beurling, both");
    }
    if (j.counter_case != "bounded" && j.counter_case != "unbounded") {
        throw job_error("case must be bounded or unbounded");
    }
    if (j.p < 1.0) {
        throw job_error("p must be >= 1");
    }
    if (j.t_max < 0.0) {
        throw job_error("t_max must be >= 0");
    }
    if (j.n_max < 3 || j.n_max > 400) {
        throw job_error("n_max must be in [3, 400]");
    }
    if (!(j.tol > 0.0)) {
        throw job_error("tol must be > 0");
    }
    if (j.kmax && *j.kmax < 16) {
        throw job_error("kmax must be >= 16");
    }
    for (double t : j.t_grid) {
        if (t < 0.0) {
            throw job_error("t_grid entries must be >= 0");
        }
    }
    if (j.boundary.im_max <= 0.0) {
        throw job_error("boundary.im_max must be > 0");
    }
    if (j.boundary.samples < 2 || j.boundary.samples > 100000) {
        throw job_error("boundary.samples must be in [2, 100000]");
    }
    if (j.boundary.b_plus && *j.boundary.b_plus <= 0.0) {
        throw job_error("boundary.b_plus must be > 0");
    }

    const auto& c = j.command;
    const bool positive_beta = j.beta && *j.beta > 0.0;
    if (c == "classify-spectrum" || c == "harness") {
        require(j.spectrum.has_value(), c, "spectrum");
        require(j.beta.has_value(), c, "beta");
        if (!positive_beta) {
            throw job_error(c + ": beta must be > 0");
        }
    } else if (c == "classify-vector") {
        require(j.spectrum.has_value(), c, "spectrum");
        require(!j.vectors.empty(), c, "vectors");
        require(j.beta.has_value(), c, "beta");
    } else if (c == "evolve") {
        require(j.spectrum.has_value(), c, "spectrum");
        require(!j.vectors.empty(), c, "vectors");
        require(!j.t_grid.empty(), c, "t_grid");
    } else if (c == "estimate-order") {
        require(j.spectrum.has_value(), c, "spectrum");
        require(!j.vectors.empty(), c, "vectors");
    } else if (c == "counterexample") {
        require(j.beta.has_value(), c, "beta");
        if (!positive_beta) {
            throw job_error(c + ": beta must be > 0");
        }
        if (j.spectrum && !j.spectrum->power_law) {
            throw job_error(c + ": spectrum must be a power_law family");
        }
    } else if (c == "region-boundary") {
        require(j.beta.has_value(), c, "beta");
        if (!positive_beta) {
            throw job_error(c + ": beta must be > 0");
        }
        if (!j.boundary.b_plus) {
            require(j.spectrum.has_value(), c, "spectrum");
        }
    }
    if (j.spectrum && j.spectrum->points) {
        for (const auto& v : j.vectors) {
            if (v.coords && v.coords->size() != j.spectrum->points->size()) {
                throw job_error("vector \"" + v.name + "\": explicit length must equal the spectrum size");
            }
        }
    }
}

json complex_json(complex_value z)
{
    return json::array({z.real(), z.imag()});
}

json complex_list_json(const std::vector<complex_value>& zs)
{
    json a = json::array();
    for (const auto& z : zs) {
        a.push_back(complex_json(z));
    }
    return a;
}

}  // namespace

const std::vector<std::string>& known_commands()
{
    static const std::vector<std::string> cmds{"classify-spectrum", "classify-vector", "evolve", "estimate-order",
                                               "counterexample",    "harness",         "region-boundary"};
    return cmds;
}

job_spec parse_jobspec(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw job_error("invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    } catch (const json::exception& e) {
        throw job_error(std::string("invalid JSON: ") + e.what());
    }
    require_keys(root, "job", {"command", "spectrum", "vectors", "beta", "flavor", "t_grid", "p", "t_max", "n_max",
                               "tol", "kmax", "case", "extrapolate", "seed", "boundary", "output"});
    job_spec j;
    require(root.contains("command"), "job", "command");
    j.command = string_field(root["command"], "command");
    if (root.contains("spectrum")) {
        j.spectrum = parse_spectrum(root["spectrum"]);
    }
    if (root.contains("vectors")) {
        const auto& vs = root["vectors"];
        if (!vs.is_array()) {
            throw job_error("vectors: expected an array");
        }
        for (std::size_t i = 0; i < vs.size(); ++i) {
            j.vectors.push_back(parse_vector(vs[i], i));
        }
    }
    if (root.contains("beta")) j.beta = real_field(root["beta"], "beta");
    if (root.contains("flavor")) j.flavor = string_field(root["flavor"], "flavor");
    if (root.contains("t_grid")) {
        const auto& ts = root["t_grid"];
        if (!ts.is_array()) {
            throw job_error("t_grid: expected an array");
        }
        for (std::size_t i = 0; i < ts.size(); ++i) {
            j.t_grid.push_back(real_field(ts[i], "t_grid[" + std::to_string(i) + "]"));
        }
    }
    if (root.contains("p")) j.p = real_field(root["p"], "p");
    if (root.contains("t_max")) j.t_max = real_field(root["t_max"], "t_max");
    if (root.contains("n_max")) {
        const auto n = int_field(root["n_max"], "n_max");
        j.n_max = static_cast<int>(std::clamp<std::int64_t>(n, -1, 1 << 20));
    }
    if (root.contains("tol")) j.tol = real_field(root["tol"], "tol");
    if (root.contains("kmax")) j.kmax = int_field(root["kmax"], "kmax");
    if (root.contains("case")) j.counter_case = string_field(root["case"], "case");
    if (root.contains("extrapolate")) {
        if (!root["extrapolate"].is_boolean()) {
            throw job_error("extrapolate: expected a boolean");
        }
        j.extrapolate = root["extrapolate"].get<bool>();
    }
    if (root.contains("seed")) {
        const auto& s = root["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            throw job_error("seed: expected a non-negative integer");
        }
        j.seed = s.get<std::uint64_t>();
    }
    if (root.contains("boundary")) {
        const auto& b = root["boundary"];
        require_keys(b, "boundary", {"b_plus", "im_max", "samples"});
        if (b.contains("b_plus")) j.boundary.b_plus = real_field(b["b_plus"], "boundary.b_plus");
        if (b.contains("im_max")) j.boundary.im_max = real_field(b["im_max"], "boundary.im_max");
        if (b.contains("samples")) {
            const auto n = int_field(b["samples"], "boundary.samples");
            j.boundary.samples = static_cast<int>(std::clamp<std::int64_t>(n, -1, 1 << 30));
        }
    }
    if (root.contains("output")) j.output = string_field(root["output"], "output");
    validate(j);
    return j;
}

std::string serialize(const job_spec& j)
{
    json root;
    root["command"] = j.command;
    if (j.spectrum) {
        json s;
        if (j.spectrum->points) {
            s["explicit"] = complex_list_json(*j.spectrum->points);
        }
        if (j.spectrum->power_law) {
            const auto& p = *j.spectrum->power_law;
            s["power_law"] = {{"a_re", p.a_re}, {"p_re", p.p_re}, {"a_im", p.a_im}, {"p_im", p.p_im}};
        }
        root["spectrum"] = s;
    }
    json vs = json::array();
    for (const auto& v : j.vectors) {
        json o;
        o["name"] = v.name;
        if (v.coords) {
            o["explicit"] = complex_list_json(*v.coords);
        }
        if (v.decay) {
            const auto& d = *v.decay;
            o["decay"] = {{"log_scale", d.log_scale}, {"c", d.c}, {"r", d.r}, {"q", d.q}, {"d", d.d}};
        }
        vs.push_back(o);
    }
    root["vectors"] = vs;
    if (j.beta) {
        root["beta"] = *j.beta;
    }
    root["flavor"] = j.flavor;
    root["t_grid"] = j.t_grid;
    root["p"] = j.p;
    root["t_max"] = j.t_max;
    root["n_max"] = j.n_max;
    root["tol"] = j.tol;
    if (j.kmax) {
        root["kmax"] = *j.kmax;
    }
    root["case"] = j.counter_case;
    root["extrapolate"] = j.extrapolate;
    root["seed"] = j.seed;
    json b;
    if (j.boundary.b_plus) {
        b["b_plus"] = *j.boundary.b_plus;
    }
    b["im_max"] = j.boundary.im_max;
    b["samples"] = j.boundary.samples;
    root["boundary"] = b;
    if (j.output) {
        root["output"] = *j.output;
    }
    return root.dump();
}

std::string job_id(const job_spec& job)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize(job)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

spectrum_ptr build_spectrum(const spectrum_spec& s)
{
    if (s.points) {
        return make_spectrum(spectrum_family::explicit_points(*s.points));
    }
    if (s.power_law) {
        return make_spectrum(spectrum_family::power_law(*s.power_law));
    }
    throw job_error("spectrum: no family given");
}

coefficient_vector build_vector(const vector_spec& v, const spectrum_ptr& s, double p)
{
    if (v.coords) {
        return coefficient_vector::from_complex(s, *v.coords, p);
    }
    if (v.decay) {
        return coefficient_vector::decay(s, *v.decay, p);
    }
    throw job_error("vector \"" + v.name + "\": no coordinates given");
}

}  // namespace gevrey::cli
