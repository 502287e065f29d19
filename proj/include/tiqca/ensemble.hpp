#pragma once

#include <cstdint>
#include <random>

#include "tiqca/circuit.hpp"
#include "tiqca/compiler.hpp"

namespace tiqca {

struct EnsembleParams {
    std::int64_t m = 0;
    double epsilon = 0.0;
    int n = 1;           // logical qubits per computer
    int trials = 1;
    std::uint64_t master_seed = 0;
    SchemeMode mode = SchemeMode::six();
    Boundary boundary = Boundary::Periodic;
    int pulse_cap = 16;  // longest partition simulated at pulse level

    void validate() const;
};

struct EnsembleReport {
    // Inputs echoed for reproducibility.
    std::int64_t m = 0;
    double epsilon = 0.0;
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int mode_levels = 6;

    double partitions_mean = 0.0, partitions_stderr = 0.0;
    double working_mean = 0.0, working_stderr = 0.0;
    double predicted_partitions = 0.0, predicted_working = 0.0;
    double m3_mean = 0.0, m3_stderr = 0.0;
    double m4_mean = 0.0, m4_stderr = 0.0;
    double m4_working_mean = 0.0;  // signal contributed by working partitions
    double m4_other_mean = 0.0;    // signal from all remaining partitions
    std::int64_t skipped_count = 0;
    std::int64_t crosscheck_count = 0;
    double crosscheck_max_dev = 0.0;
    double escape_fraction = 0.0;  // 5-level runs: trials with pointer escape
    double escape_wilson3 = 0.0;   // 3-sigma Wilson half-width of the fraction

    std::string to_json() const;
};

/// Half-width of the Wilson score interval for a sampled proportion at z
/// standard errors.
double wilson_halfwidth(double p_hat, std::int64_t samples, double z);

/// Deterministic per-trial seed: splitmix64(master + golden * (trial + 1)).
std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t trial_index);

/// Independent per-site Bernoulli(epsilon) walls over m sites.
BasisString sample_wall_config(std::int64_t m, double epsilon, std::mt19937_64& rng,
                               const SchemeMode& mode);

double expected_partitions(std::int64_t m, double epsilon);
/// Probability that a partition has k or more sites: (1-eps)^k.
double partition_tail_probability(double epsilon, int k);
double expected_working(std::int64_t m, double epsilon, int n);

struct ScalingRow {
    int n = 0;
    double epsilon = 0.0;        // 1/n^2
    double ratio = 0.0;          // (1 - 1/n^2)^{2n+4}
    double working_density = 0.0;
};

std::vector<ScalingRow> scaling_table(const std::vector<int>& n_values);

EnsembleReport run_ensemble(const EnsembleParams& params, const LogicalCircuit& circuit);

/// Max deviation over all levels x between <M_x> of the pure
/// product-superposition run and the probability-weighted ensemble of
/// per-configuration pure runs of the same program.
double pure_mixed_equivalence(int m, double epsilon, const PulseProgram& program,
                              const SchemeMode& mode, Boundary boundary = Boundary::Periodic);

}  // namespace tiqca
