#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/counterexamples.hpp"
#include "gevrey/gevrey_classifier.hpp"

namespace gevrey {

struct catalog_entry {
    std::string name;
    coefficient_vector f;
};

// Decay vectors exp(-k^2), exp(-k^1.5), k^-k, exp(-k), k^-2, exp(-sqrt k) and a
// finitely supported vector on infinite families; the constant vector and
// seeded random vectors on finite ones.
std::vector<catalog_entry> default_catalog(const spectrum_ptr& sigma, std::uint64_t seed = 1, double p = 2.0);

struct class_entry {
    std::string vector;
    double t = 0.0;
    gevrey_flavor flavor = gevrey_flavor::roumieu;
    gevrey_verdict verdict;
};

struct harness_options {
    std::vector<double> times{0.0, 1.0};
    double t_max = 100.0;
    classifier_options classifier{};
    bool throw_on_contradiction = true;
};

struct harness_report {
    std::string spectrum;
    double beta = 1.0;
    region_report region;
    std::vector<std::string> admitted;
    std::vector<std::string> skipped;  // "name: reason"
    std::vector<class_entry> entries;
    std::optional<violating_plan> plan;
    std::optional<counterexample_artifacts> counterexample;
    std::vector<std::string> contradictions;
    std::vector<std::string> unknowns;

    bool consistent() const { return contradictions.empty(); }
};

// Region condition, solution classes of every admissible catalog vector at the
// given times, and the counterexample when the region condition fails.
// Consistency requirements:
//   holds     => every solution class is Beurling
//   violated  => the constructed vector is admissible and not Roumieu
//   jump      => never all Roumieu while some Beurling refuted
harness_report theorem_equivalence_harness(const spectrum_ptr& sigma, double beta,
                                           const std::vector<catalog_entry>& catalog,
                                           const harness_options& options = {});

// Beurling(b) => Roumieu(b) => Beurling(b') for b < b' in the list; returns
// the violations found (empty when the chain holds).
std::vector<std::string> inclusion_chain_violations(const coefficient_vector& f, std::vector<double> betas,
                                                    const classifier_options& options = {});

}  // namespace gevrey
