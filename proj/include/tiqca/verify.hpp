#pragma once

#include <random>

#include "tiqca/dense_oracle.hpp"
#include "tiqca/ensemble.hpp"

namespace tiqca {

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    std::string detail;
};

/// Max per-amplitude distance between a and b after aligning the global
/// phase on a's dominant entry. Large sentinel when supports mismatch.
double phase_aligned_distance(const SparseState& a, const SparseState& b);

/// Same for dense vectors.
double phase_aligned_distance_dense(const DenseState& a, const DenseState& b);

double max_amplitude_distance(const DenseState& a, const DenseState& b);

SparseState random_sparse_state(std::mt19937_64& rng, const LatticeConfig& config, int support_size);

/// Random pulse over the artifact vocabulary: basis exchanges (any angle),
/// control-3 rotations and level swaps.
Pulse random_pulse(std::mt19937_64& rng, const SchemeMode& mode, bool include_rotations);

/// Sparse per-site rule vs dense matrix-exponential oracle vs staggered layers.
std::vector<CheckResult> verify_oracle(int cases, std::uint64_t seed);

/// Replays of the protocol-defining configuration traces (pointer creation, pointer
/// crossing and reflection, five-level creation).
std::vector<CheckResult> verify_protocols();

/// Pure product-superposition runs against per-configuration ensembles.
std::vector<CheckResult> verify_pure_mixed();

/// Working-ratio table values and monotone approach to one.
std::vector<CheckResult> verify_scaling();

}  // namespace tiqca
