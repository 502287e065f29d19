#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tiqca/error.hpp"

namespace tiqca {

using cplx = std::complex<double>;

/// Amplitudes with modulus below this are dropped (never renormalized), so
/// unitarity violations stay observable through SparseState::norm().
constexpr double kAmplitudeCutoff = 1e-14;

/// Largest dense vector the oracle representation will allocate.
constexpr std::int64_t kDenseGuard = 10'000'000;

/// Internal-level scheme: 6 levels with level 5 as the partition wall, or the
/// reduced 5-level scheme where level 1 doubles as the wall.
struct SchemeMode {
    int levels = 6;
    int wall_level = 5;

    static SchemeMode six() { return SchemeMode{6, 5}; }
    static SchemeMode five() { return SchemeMode{5, 1}; }
    static SchemeMode from_levels(int levels);

    void validate() const;
    bool operator==(const SchemeMode&) const = default;
};

enum class Boundary { Periodic, Open };

struct LatticeConfig {
    int m = 0;
    Boundary boundary = Boundary::Periodic;
    SchemeMode mode = SchemeMode::six();

    void validate() const;
    bool operator==(const LatticeConfig&) const = default;
};

/// A classical lattice configuration, one digit character per site, site 0
/// leftmost. Levels are stored as '0'..'5' so keys serialize as-is.
using BasisString = std::string;

inline int level_at(const BasisString& s, int site) { return s[static_cast<size_t>(site)] - '0'; }
inline void set_level(BasisString& s, int site, int level) {
    s[static_cast<size_t>(site)] = static_cast<char>('0' + level);
}

void validate_basis_string(const BasisString& s, const LatticeConfig& config);

/// Sparse superposition over basis strings. The canonical state
/// representation: all pulses act as low-branching maps on the support.
struct SparseState {
    LatticeConfig config;
    std::unordered_map<BasisString, cplx> amps;

    double norm_sq() const;
    double norm() const;
    /// Drops entries below kAmplitudeCutoff. Does not renormalize.
    void prune();
    /// Support sorted by decreasing probability, ties broken by key.
    std::vector<std::pair<BasisString, cplx>> sorted_support() const;
};

/// Full d^m vector, site-major (site 0 most significant). Verification
/// oracle only; guarded by kDenseGuard.
struct DenseState {
    LatticeConfig config;
    std::vector<cplx> v;
};

std::int64_t dense_dimension(const LatticeConfig& config);
std::int64_t dense_index(const BasisString& s, const LatticeConfig& config);

SparseState make_basis_state(const LatticeConfig& config, const BasisString& s);

/// m-fold tensor power of a single-site amplitude vector (one amplitude per
/// level). Support is enumerated exactly over the nonzero levels.
SparseState make_product_state(const LatticeConfig& config, const std::vector<cplx>& site_amps);

/// Expected number of sites found in `level`: sum_s |amp(s)|^2 * count(s, level).
double expectation_level_count(const SparseState& state, int level);

cplx inner_product(const SparseState& a, const SparseState& b);

DenseState to_dense(const SparseState& state);
SparseState to_sparse(const DenseState& dense);

/// Probability distribution of the configuration restricted to `sites`
/// (map from extracted substring to probability). Used for locality checks.
std::unordered_map<std::string, double> marginal_distribution(const SparseState& state,
                                                              const std::vector<int>& sites);

}  // namespace tiqca
