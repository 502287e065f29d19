#include "tiqca/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace tiqca {

SchemeMode SchemeMode::from_levels(int levels) {
    if (levels == 6) return six();
    if (levels == 5) return five();
    throw Error(ErrorKind::InvalidConfig, "levels must be 5 or 6, got " + std::to_string(levels));
}

void SchemeMode::validate() const {
    if (levels != 5 && levels != 6)
        throw Error(ErrorKind::InvalidConfig, "levels must be 5 or 6");
    int expected_wall = (levels == 6) ? 5 : 1;
    if (wall_level != expected_wall)
        throw Error(ErrorKind::ModeMismatch,
                    "wall level must be " + std::to_string(expected_wall) + " in " +
                        std::to_string(levels) + "-level mode");
}

void LatticeConfig::validate() const {
    mode.validate();
    if (m < 2) throw Error(ErrorKind::InvalidConfig, "lattice needs m >= 2 sites, got " + std::to_string(m));
}

void validate_basis_string(const BasisString& s, const LatticeConfig& config) {
    config.validate();
    if (static_cast<int>(s.size()) != config.m)
        throw Error(ErrorKind::InvalidConfig,
                    "basis string length " + std::to_string(s.size()) + " != m = " + std::to_string(config.m));
    for (char c : s) {
        int lvl = c - '0';
        if (lvl < 0 || lvl >= config.mode.levels)
            throw Error(ErrorKind::InvalidLevel,
                        std::string("level '") + c + "' out of range for " +
                            std::to_string(config.mode.levels) + "-level mode");
    }
}

double SparseState::norm_sq() const {
    double s = 0.0;
    for (const auto& [k, a] : amps) s += std::norm(a);
    return s;
}

double SparseState::norm() const { return std::sqrt(norm_sq()); }

void SparseState::prune() {
    for (auto it = amps.begin(); it != amps.end();) {
        if (std::abs(it->second) < kAmplitudeCutoff)
            it = amps.erase(it);
        else
            ++it;
    }
}

std::vector<std::pair<BasisString, cplx>> SparseState::sorted_support() const {
    std::vector<std::pair<BasisString, cplx>> out(amps.begin(), amps.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        double px = std::norm(x.second), py = std::norm(y.second);
        if (px != py) return px > py;
        return x.first < y.first;
    });
    return out;
}

std::int64_t dense_dimension(const LatticeConfig& config) {
    std::int64_t dim = 1;
    for (int i = 0; i < config.m; ++i) {
        dim *= config.mode.levels;
        if (dim > kDenseGuard)
            throw Error(ErrorKind::OracleTooLarge,
                        "dense dimension " + std::to_string(config.mode.levels) + "^" +
                            std::to_string(config.m) + " exceeds the oracle guard");
    }
    return dim;
}

std::int64_t dense_index(const BasisString& s, const LatticeConfig& config) {
    std::int64_t idx = 0;
    for (int i = 0; i < config.m; ++i) idx = idx * config.mode.levels + level_at(s, i);
    return idx;
}

SparseState make_basis_state(const LatticeConfig& config, const BasisString& s) {
    validate_basis_string(s, config);
    SparseState state{config, {}};
    state.amps.emplace(s, cplx{1.0, 0.0});
    return state;
}

SparseState make_product_state(const LatticeConfig& config, const std::vector<cplx>& site_amps) {
    config.validate();
    if (static_cast<int>(site_amps.size()) != config.mode.levels)
        throw Error(ErrorKind::InvalidLevel, "need one amplitude per level");
    double nrm = 0.0;
    for (const auto& a : site_amps) nrm += std::norm(a);
    if (std::abs(nrm - 1.0) > 1e-12)
        throw Error(ErrorKind::NotNormalized, "site amplitudes are not normalized");

    std::vector<int> nz;
    for (int l = 0; l < config.mode.levels; ++l)
        if (std::abs(site_amps[static_cast<size_t>(l)]) > 0.0) nz.push_back(l);
    double support = std::pow(static_cast<double>(nz.size()), config.m);
    if (support > 1e7)
        throw Error(ErrorKind::SupportOverflow, "product-state support exceeds 10^7 entries");

    SparseState state{config, {}};
    state.amps.reserve(static_cast<size_t>(support));
    BasisString key(static_cast<size_t>(config.m), '0');
    // Depth-first enumeration over the nonzero levels of every site.
    std::vector<int> choice(static_cast<size_t>(config.m), 0);
    int depth = 0;
    cplx acc{1.0, 0.0};
    std::vector<cplx> partial(static_cast<size_t>(config.m) + 1);
    partial[0] = acc;
    while (depth >= 0) {
        if (depth == config.m) {
            state.amps.emplace(key, partial[static_cast<size_t>(depth)]);
            --depth;
            continue;
        }
        size_t d = static_cast<size_t>(depth);
        if (choice[d] == static_cast<int>(nz.size())) {
            choice[d] = 0;
            --depth;
            continue;
        }
        int lvl = nz[static_cast<size_t>(choice[d])];
        set_level(key, depth, lvl);
        partial[d + 1] = partial[d] * site_amps[static_cast<size_t>(lvl)];
        ++choice[d];
        ++depth;
        // Skip subtrees whose prefix already fell below the cutoff.
        if (std::abs(partial[d + 1]) < kAmplitudeCutoff) {
            --depth;
        }
    }
    state.prune();
    return state;
}

double expectation_level_count(const SparseState& state, int level) {
    if (level < 0 || level >= state.config.mode.levels)
        throw Error(ErrorKind::InvalidLevel, "level out of range");
    char c = static_cast<char>('0' + level);
    double acc = 0.0;
    for (const auto& [s, a] : state.amps) {
        int count = static_cast<int>(std::count(s.begin(), s.end(), c));
        acc += std::norm(a) * count;
    }
    return acc;
}

cplx inner_product(const SparseState& a, const SparseState& b) {
    if (!(a.config == b.config))
        throw Error(ErrorKind::ConfigMismatch, "states live on different lattices");
    const SparseState& small = a.amps.size() <= b.amps.size() ? a : b;
    const SparseState& large = a.amps.size() <= b.amps.size() ? b : a;
    bool small_is_a = &small == &a;
    cplx acc{0.0, 0.0};
    for (const auto& [s, amp] : small.amps) {
        auto it = large.amps.find(s);
        if (it == large.amps.end()) continue;
        acc += small_is_a ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return acc;
}

DenseState to_dense(const SparseState& state) {
    std::int64_t dim = dense_dimension(state.config);
    DenseState dense{state.config, std::vector<cplx>(static_cast<size_t>(dim), cplx{0.0, 0.0})};
    for (const auto& [s, a] : state.amps) dense.v[static_cast<size_t>(dense_index(s, state.config))] = a;
    return dense;
}

SparseState to_sparse(const DenseState& dense) {
    SparseState state{dense.config, {}};
    int m = dense.config.m;
    int d = dense.config.mode.levels;
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(dense.v.size()); ++idx) {
        const cplx& a = dense.v[static_cast<size_t>(idx)];
        if (std::abs(a) < kAmplitudeCutoff) continue;
        BasisString s(static_cast<size_t>(m), '0');
        std::int64_t rem = idx;
        for (int i = m - 1; i >= 0; --i) {
            set_level(s, i, static_cast<int>(rem % d));
            rem /= d;
        }
        state.amps.emplace(std::move(s), a);
    }
    return state;
}

std::unordered_map<std::string, double> marginal_distribution(const SparseState& state,
                                                              const std::vector<int>& sites) {
    std::unordered_map<std::string, double> dist;
    for (const auto& [s, a] : state.amps) {
        std::string sub;
        sub.reserve(sites.size());
        for (int site : sites) sub.push_back(s[static_cast<size_t>(site)]);
        dist[sub] += std::norm(a);
    }
    return dist;
}

}  // namespace tiqca
