#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevrey/coefficient_vector.hpp"
#include "gevrey/spectrum.hpp"

namespace gevrey::cli {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int format_version = 1;

// Malformed or semantically invalid job text.
class job_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct spectrum_spec {
    std::optional<std::vector<complex_value>> points;
    std::optional<power_law_params> power_law;

    friend bool operator==(const spectrum_spec&, const spectrum_spec&) = default;
};

struct vector_spec {
    std::string name;
    std::optional<std::vector<complex_value>> coords;
    std::optional<decay_params> decay;

    friend bool operator==(const vector_spec&, const vector_spec&) = default;
};

struct boundary_spec {
    std::optional<double> b_plus;
    double im_max = 10.0;
    int samples = 101;

    friend bool operator==(const boundary_spec&, const boundary_spec&) = default;
};

struct job_spec {
    std::string command;
    std::optional<spectrum_spec> spectrum;
    std::vector<vector_spec> vectors;
    std::optional<double> beta;
    std::string flavor = "both";      // roumieu | beurling | both
    std::vector<double> t_grid;
    double p = 2.0;
    double t_max = 100.0;
    int n_max = 40;
    double tol = 1e-10;
    std::optional<std::int64_t> kmax;
    std::string counter_case = "bounded";  // counterexample: bounded | unbounded
    bool extrapolate = false;
    std::uint64_t seed = 1;
    boundary_spec boundary;
    std::optional<std::string> output;

    friend bool operator==(const job_spec&, const job_spec&) = default;
};

const std::vector<std::string>& known_commands();

// Strict parse: unknown fields are rejected, parse errors carry the byte
// offset, semantic errors name the violated requirement.
job_spec parse_jobspec(const std::string& text);

// Canonical JSON text (every field written, fixed key order).
std::string serialize(const job_spec& job);

// FNV-1a of the canonical text, as 16 hex digits.
std::string job_id(const job_spec& job);

spectrum_ptr build_spectrum(const spectrum_spec& s);
coefficient_vector build_vector(const vector_spec& v, const spectrum_ptr& s, double p);

}  // namespace gevrey::cli
