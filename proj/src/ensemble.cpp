#include "tiqca/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace tiqca {

namespace {

double sample_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_stderr(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0) / static_cast<double>(xs.size()));
}

}  // namespace

void EnsembleParams::validate() const {
    mode.validate();
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw Error(ErrorKind::InvalidConfig, "epsilon must lie strictly between 0 and 1");
    if (trials < 1) throw Error(ErrorKind::InvalidConfig, "need at least one trial");
    if (n < 1) throw Error(ErrorKind::InvalidConfig, "need at least one qubit");
    if (m < 2 * static_cast<std::int64_t>(n) + 6)
        throw Error(ErrorKind::InvalidConfig, "lattice must hold at least one working partition (m >= 2n+6)");
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t trial_index) {
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial_index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

BasisString sample_wall_config(std::int64_t m, double epsilon, std::mt19937_64& rng,
                               const SchemeMode& mode) {
    BasisString s(static_cast<size_t>(m), '0');
    char wall = static_cast<char>('0' + mode.wall_level);
    for (std::int64_t i = 0; i < m; ++i) {
        // 53-bit uniform in [0,1); pinned here so trials replay bit-exactly.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < epsilon) s[static_cast<size_t>(i)] = wall;
    }
    return s;
}

double wilson_halfwidth(double p_hat, std::int64_t samples, double z) {
    if (samples <= 0) return 1.0;
    double n = static_cast<double>(samples);
    double z2 = z * z;
    return z / (1.0 + z2 / n) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
}

double expected_partitions(std::int64_t m, double epsilon) {
    return static_cast<double>(m) * epsilon;
}

double partition_tail_probability(double epsilon, int k) { return std::pow(1.0 - epsilon, k); }

double expected_working(std::int64_t m, double epsilon, int n) {
    return expected_partitions(m, epsilon) * partition_tail_probability(epsilon, 2 * n + 4);
}

std::vector<ScalingRow> scaling_table(const std::vector<int>& n_values) {
    std::vector<ScalingRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 2) throw Error(ErrorKind::InvalidScaling, "scaling table needs n >= 2 (epsilon < 1)");
        ScalingRow row;
        row.n = n;
        row.epsilon = 1.0 / (static_cast<double>(n) * n);
        row.ratio = std::pow(1.0 - row.epsilon, 2 * n + 4);
        row.working_density = row.epsilon * row.ratio;
        rows.push_back(row);
    }
    return rows;
}

namespace {

struct TrialStats {
    double partitions = 0.0;
    double working = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    double m4_working = 0.0;
    double m4_other = 0.0;
    std::int64_t skipped = 0;
    bool escaped = false;
};

struct PartitionSignal {
    double m3 = 0.0;
    double m4 = 0.0;
};

/// Pulse-level simulation of one wall-bounded partition: a fresh sub-lattice
/// wall + 0^len + wall evolved by creation plus the compiled circuit.
PartitionSignal simulate_partition(int len, const PulseProgram& full_program, const SchemeMode& mode) {
    LatticeConfig cfg{len + 2, Boundary::Open, mode};
    BasisString s(static_cast<size_t>(len + 2), '0');
    set_level(s, 0, mode.wall_level);
    set_level(s, len + 1, mode.wall_level);
    SparseState state = make_basis_state(cfg, s);
    state = apply_program(state, full_program);
    return {expectation_level_count(state, 3), expectation_level_count(state, 4)};
}

/// 6-level-mode trial: partitions evolve independently because the walls are
/// invariant under every pulse in use. Short-partition signals depend only on
/// the length, so they are computed once per run.
TrialStats run_trial_six(const EnsembleParams& params, const BasisString& walls,
                         const PulseProgram& full_program, const PartitionSignal& working_signal,
                         int working_min_len, std::vector<PartitionSignal>& short_cache,
                         std::vector<bool>& short_cached, std::int64_t& crosscheck_budget,
                         double& crosscheck_dev, std::int64_t& crosscheck_count) {
    TrialStats stats;
    auto wall_count = static_cast<std::int64_t>(
        std::count(walls.begin(), walls.end(), static_cast<char>('0' + params.mode.wall_level)));
    auto runs = partition_split(walls, params.mode, params.boundary);
    stats.partitions = wall_count == 0 ? 1.0 : static_cast<double>(wall_count);

    if (wall_count == 0) return stats;  // all-zero lattice: provably inert under the whole program

    for (const auto& [start, len] : runs) {
        bool working = len >= working_min_len;
        if (working) {
            stats.working += 1.0;
            stats.m3 += working_signal.m3;
            stats.m4 += working_signal.m4;
            stats.m4_working += working_signal.m4;
            if (crosscheck_budget > 0 && len <= params.pulse_cap) {
                --crosscheck_budget;
                ++crosscheck_count;
                PartitionSignal slow = simulate_partition(len, full_program, params.mode);
                crosscheck_dev = std::max({crosscheck_dev, std::abs(slow.m3 - working_signal.m3),
                                           std::abs(slow.m4 - working_signal.m4)});
            }
        } else if (len <= params.pulse_cap) {
            if (!short_cached[static_cast<size_t>(len)]) {
                short_cache[static_cast<size_t>(len)] = simulate_partition(len, full_program, params.mode);
                short_cached[static_cast<size_t>(len)] = true;
            }
            const PartitionSignal& sig = short_cache[static_cast<size_t>(len)];
            stats.m3 += sig.m3;
            stats.m4 += sig.m4;
            stats.m4_other += sig.m4;
        } else {
            ++stats.skipped;
        }
    }
    return stats;
}

/// 5-level-mode trial: the wall level doubles as a qubit level, partitions
/// interact, so the whole lattice is simulated and pointer escape tracked.
TrialStats run_trial_five(const EnsembleParams& params, const BasisString& walls,
                          const PulseProgram& creation, const PulseProgram& compiled,
                          int working_min_len) {
    TrialStats stats;
    auto wall_count = static_cast<std::int64_t>(
        std::count(walls.begin(), walls.end(), static_cast<char>('0' + params.mode.wall_level)));
    auto runs = partition_split(walls, params.mode, params.boundary);
    stats.partitions = wall_count == 0 ? 1.0 : static_cast<double>(wall_count);
    for (const auto& [start, len] : runs)
        if (len >= working_min_len) stats.working += 1.0;

    LatticeConfig cfg{static_cast<int>(params.m), params.boundary, params.mode};
    SparseState state = make_basis_state(cfg, walls);
    state = apply_program(state, creation);

    // Pointer inventory per original partition, from the created string.
    const BasisString& created = state.amps.begin()->first;
    std::vector<PointerCensus> created_census;
    created_census.reserve(runs.size());
    for (const auto& [start, len] : runs)
        created_census.push_back(pointer_census_range(created, params.mode, start, len));

    state = apply_program(state, compiled);
    stats.m3 = expectation_level_count(state, 3);
    stats.m4 = expectation_level_count(state, 4);

    // Escape: some branch no longer confines pointers to their original
    // partitions. Either a bordering wall was consumed (the breakout route:
    // later pulses walk pointers through the opening) or a partition's
    // pointer inventory changed.
    char wall_char = static_cast<char>('0' + params.mode.wall_level);
    for (const auto& [s, amp] : state.amps) {
        for (size_t i = 0; i < walls.size() && !stats.escaped; ++i)
            if (walls[i] == wall_char && s[i] != wall_char) stats.escaped = true;
        for (size_t r = 0; r < runs.size() && !stats.escaped; ++r) {
            PointerCensus now = pointer_census_range(s, params.mode, runs[r].first, runs[r].second);
            if (now.total_pointers() != created_census[r].total_pointers()) stats.escaped = true;
        }
        if (stats.escaped) break;
    }
    return stats;
}

}  // namespace

EnsembleReport run_ensemble(const EnsembleParams& params, const LogicalCircuit& circuit) {
    params.validate();
    circuit.validate();
    if (circuit.n != params.n)
        throw Error(ErrorKind::ConfigMismatch, "circuit qubit count differs from ensemble n");
    if (params.mode.levels == 5 && params.m > params.pulse_cap)
        throw Error(ErrorKind::SupportOverflow,
                    "5-level ensembles simulate the full lattice; m exceeds the pulse cap");

    CompiledProgram compiled = compile_circuit(circuit, params.mode);
    PulseProgram creation = macro_program(MacroName::PointerCreate, params.mode);
    PulseProgram full_program = creation;
    full_program.name = "creation+compiled";
    full_program.pulses.insert(full_program.pulses.end(), compiled.program.pulses.begin(),
                               compiled.program.pulses.end());

    // Working partitions all produce the same signal; derive it once from the
    // reference simulation (cross-checked below against pulse-level runs).
    ReferenceResult ref = reference_simulate(circuit);
    PartitionSignal working_signal{2.0, ref.measured ? 2.0 * ref.p_one : 0.0};
    const int working_min_len = compiled.l_min;  // 2n+4

    std::vector<TrialStats> trials;
    trials.reserve(static_cast<size_t>(params.trials));
    std::int64_t crosscheck_budget = 8;
    double crosscheck_dev = 0.0;
    std::int64_t crosscheck_count = 0;
    std::vector<PartitionSignal> short_cache(static_cast<size_t>(params.pulse_cap) + 1);
    std::vector<bool> short_cached(static_cast<size_t>(params.pulse_cap) + 1, false);

    for (int t = 0; t < params.trials; ++t) {
        std::mt19937_64 rng(trial_seed(params.master_seed, t));
        BasisString walls = sample_wall_config(params.m, params.epsilon, rng, params.mode);
        if (params.mode.levels == 6)
            trials.push_back(run_trial_six(params, walls, full_program, working_signal,
                                           working_min_len, short_cache, short_cached,
                                           crosscheck_budget, crosscheck_dev, crosscheck_count));
        else
            trials.push_back(run_trial_five(params, walls, creation, compiled.program, working_min_len));
    }

    EnsembleReport rep;
    rep.m = params.m;
    rep.epsilon = params.epsilon;
    rep.n = params.n;
    rep.trials = params.trials;
    rep.seed = params.master_seed;
    rep.mode_levels = params.mode.levels;
    rep.predicted_partitions = expected_partitions(params.m, params.epsilon);
    rep.predicted_working = expected_working(params.m, params.epsilon, params.n);

    std::vector<double> partitions, working, m3, m4;
    double m4w = 0.0, m4o = 0.0;
    std::int64_t escapes = 0;
    for (const TrialStats& s : trials) {
        partitions.push_back(s.partitions);
        working.push_back(s.working);
        m3.push_back(s.m3);
        m4.push_back(s.m4);
        m4w += s.m4_working;
        m4o += s.m4_other;
        rep.skipped_count += s.skipped;
        escapes += s.escaped ? 1 : 0;
    }
    rep.partitions_mean = sample_mean(partitions);
    rep.partitions_stderr = sample_stderr(partitions, rep.partitions_mean);
    rep.working_mean = sample_mean(working);
    rep.working_stderr = sample_stderr(working, rep.working_mean);
    rep.m3_mean = sample_mean(m3);
    rep.m3_stderr = sample_stderr(m3, rep.m3_mean);
    rep.m4_mean = sample_mean(m4);
    rep.m4_stderr = sample_stderr(m4, rep.m4_mean);
    rep.m4_working_mean = m4w / static_cast<double>(params.trials);
    rep.m4_other_mean = m4o / static_cast<double>(params.trials);
    rep.crosscheck_count = crosscheck_count;
    rep.crosscheck_max_dev = crosscheck_dev;
    rep.escape_fraction = static_cast<double>(escapes) / static_cast<double>(params.trials);
    rep.escape_wilson3 = wilson_halfwidth(rep.escape_fraction, params.trials, 3.0);
    return rep;
}

std::string EnsembleReport::to_json() const {
    nlohmann::ordered_json j;
    j["m"] = m;
    j["epsilon"] = epsilon;
    j["n"] = n;
    j["trials"] = trials;
    j["seed"] = seed;
    j["mode_levels"] = mode_levels;
    j["partitions_mean"] = partitions_mean;
    j["partitions_stderr"] = partitions_stderr;
    j["working_mean"] = working_mean;
    j["working_stderr"] = working_stderr;
    j["predicted_partitions"] = predicted_partitions;
    j["predicted_working"] = predicted_working;
    j["m3_mean"] = m3_mean;
    j["m3_stderr"] = m3_stderr;
    j["m4_mean"] = m4_mean;
    j["m4_stderr"] = m4_stderr;
    j["m4_working_mean"] = m4_working_mean;
    j["m4_other_mean"] = m4_other_mean;
    j["skipped_count"] = skipped_count;
    j["crosscheck_count"] = crosscheck_count;
    j["crosscheck_max_dev"] = crosscheck_max_dev;
    j["escape_fraction"] = escape_fraction;
    j["escape_wilson3"] = escape_wilson3;
    return j.dump(2);
}

double pure_mixed_equivalence(int m, double epsilon, const PulseProgram& program,
                              const SchemeMode& mode, Boundary boundary) {
    mode.validate();
    if (m < 2 || m > 12)
        throw Error(ErrorKind::SupportOverflow, "exact full-superposition check is limited to m <= 12");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw Error(ErrorKind::InvalidConfig, "epsilon must lie in [0, 1]");
    LatticeConfig cfg{m, boundary, mode};
    int wall = mode.wall_level;

    // Pure side: the product superposition evolved coherently.
    std::vector<cplx> site_amps(static_cast<size_t>(mode.levels), cplx{0.0, 0.0});
    site_amps[0] = std::sqrt(1.0 - epsilon);
    site_amps[static_cast<size_t>(wall)] = std::sqrt(epsilon);
    SparseState pure = make_product_state(cfg, site_amps);
    pure = apply_program(pure, program);
    std::vector<double> mx_pure(static_cast<size_t>(mode.levels));
    for (int x = 0; x < mode.levels; ++x) mx_pure[static_cast<size_t>(x)] = expectation_level_count(pure, x);

    // Ensemble side: every wall configuration as an independent pure run,
    // weighted by eps^#walls (1-eps)^#zeros.
    std::vector<double> mx_mix(static_cast<size_t>(mode.levels), 0.0);
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        double p = 1.0;
        BasisString s(static_cast<size_t>(m), '0');
        for (int i = 0; i < m; ++i) {
            if ((bits >> i) & 1u) {
                set_level(s, i, wall);
                p *= epsilon;
            } else {
                p *= 1.0 - epsilon;
            }
        }
        if (p == 0.0) continue;
        SparseState branch = make_basis_state(cfg, s);
        branch = apply_program(branch, program);
        for (int x = 0; x < mode.levels; ++x)
            mx_mix[static_cast<size_t>(x)] += p * expectation_level_count(branch, x);
    }

    double dev = 0.0;
    for (int x = 0; x < mode.levels; ++x)
        dev = std::max(dev, std::abs(mx_pure[static_cast<size_t>(x)] - mx_mix[static_cast<size_t>(x)]));
    return dev;
}

}  // namespace tiqca
