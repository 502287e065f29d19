#include "tiqca/verify.hpp"

#include <algorithm>
#include <cmath>

namespace tiqca {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kBadDistance = 1e9;

const BasisString kMixedExample = "0000005000000000000050005000000005";
const BasisString kMixedExampleCreated = "0000325230000000003250005230000325";

}  // namespace

double phase_aligned_distance(const SparseState& a, const SparseState& b) {
    if (a.amps.empty() && b.amps.empty()) return 0.0;
    if (a.amps.empty() || b.amps.empty()) return kBadDistance;
    auto dominant = a.sorted_support().front();
    auto it = b.amps.find(dominant.first);
    if (it == b.amps.end()) return kBadDistance;
    cplx ratio = it->second / dominant.second;
    if (std::abs(ratio) < 1e-300) return kBadDistance;
    cplx phase = ratio / std::abs(ratio);
    double dev = 0.0;
    for (const auto& [s, amp] : a.amps) {
        auto jt = b.amps.find(s);
        cplx other = jt == b.amps.end() ? cplx{0.0, 0.0} : jt->second;
        dev = std::max(dev, std::abs(phase * amp - other));
    }
    for (const auto& [s, amp] : b.amps)
        if (!a.amps.contains(s)) dev = std::max(dev, std::abs(amp));
    return dev;
}

double phase_aligned_distance_dense(const DenseState& a, const DenseState& b) {
    size_t best = 0;
    double bestp = -1.0;
    for (size_t i = 0; i < a.v.size(); ++i) {
        double p = std::norm(a.v[i]);
        if (p > bestp) {
            bestp = p;
            best = i;
        }
    }
    if (bestp <= 0.0) return kBadDistance;
    cplx ratio = b.v[best] / a.v[best];
    if (std::abs(ratio) < 1e-300) return kBadDistance;
    cplx phase = ratio / std::abs(ratio);
    double dev = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i) dev = std::max(dev, std::abs(phase * a.v[i] - b.v[i]));
    return dev;
}

double max_amplitude_distance(const DenseState& a, const DenseState& b) {
    double dev = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i) dev = std::max(dev, std::abs(a.v[i] - b.v[i]));
    return dev;
}

SparseState random_sparse_state(std::mt19937_64& rng, const LatticeConfig& config, int support_size) {
    std::uniform_int_distribution<int> level(0, config.mode.levels - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SparseState state{config, {}};
    while (static_cast<int>(state.amps.size()) < support_size) {
        BasisString s(static_cast<size_t>(config.m), '0');
        for (int i = 0; i < config.m; ++i) set_level(s, i, level(rng));
        state.amps[s] = cplx{gauss(rng), gauss(rng)};
    }
    double nrm = state.norm();
    for (auto& [k, a] : state.amps) a /= nrm;
    return state;
}

Pulse random_pulse(std::mt19937_64& rng, const SchemeMode& mode, bool include_rotations) {
    std::uniform_int_distribution<int> kind(0, include_rotations ? 2 : 1);
    std::uniform_int_distribution<int> level(0, mode.levels - 1);
    std::uniform_real_distribution<double> angle(-3.2, 3.2);
    std::uniform_int_distribution<int> coin(0, 3);
    switch (kind(rng)) {
        case 0: {  // basis exchange
            int control = level(rng);
            int u = level(rng);
            while (u == control) u = level(rng);
            int v = coin(rng) == 0 ? u : level(rng);  // admit the controlled-phase case
            while (v == control) v = level(rng);
            double t = coin(rng) < 2 ? (coin(rng) % 2 ? kHalfPi : -kHalfPi) : angle(rng);
            return ControlledExchange::basis(control, u, v, t);
        }
        case 1: {  // global level swap
            int x = level(rng);
            int y = level(rng);
            while (y == x) y = level(rng);
            return GlobalLevelSwap{x, y};
        }
        default: {  // control-3 qubit rotation
            std::normal_distribution<double> gauss(0.0, 1.0);
            auto rand_vec = [&] {
                QubitVector q{cplx{gauss(rng), gauss(rng)}, cplx{gauss(rng), gauss(rng)}};
                double nrm = std::sqrt(q.norm_sq());
                q.c0 /= nrm;
                q.c1 /= nrm;
                return q;
            };
            QubitVector u = rand_vec();
            QubitVector v = coin(rng) == 0 ? u : rand_vec();
            return ControlledExchange::rotation(3, u, v, angle(rng));
        }
    }
}

std::vector<CheckResult> verify_oracle(int cases, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> m_dist(2, 5);
    std::uniform_int_distribution<int> support_dist(1, 4);
    std::uniform_int_distribution<int> coin(0, 1);

    double dev_sparse = 0.0, dev_staggered = 0.0;
    for (int c = 0; c < cases; ++c) {
        LatticeConfig config{m_dist(rng), coin(rng) ? Boundary::Periodic : Boundary::Open,
                             SchemeMode::six()};
        SparseState state = random_sparse_state(rng, config, support_dist(rng));
        Pulse pulse = random_pulse(rng, config.mode, true);
        SparseState fast = apply_pulse(state, pulse);
        DenseState slow = apply_pulse_dense(to_dense(state), pulse);
        dev_sparse = std::max(dev_sparse, max_amplitude_distance(to_dense(fast), slow));
        if (const auto* ce = std::get_if<ControlledExchange>(&pulse)) {
            if (config.boundary == Boundary::Open || config.m % 2 == 0) {
                DenseState lay = apply_pulse_dense_staggered(to_dense(state), *ce);
                dev_staggered = std::max(dev_staggered, max_amplitude_distance(lay, slow));
            }
        }
    }
    std::vector<CheckResult> out;
    out.push_back({"oracle-sparse-vs-dense", dev_sparse <= 1e-10, dev_sparse,
                   std::to_string(cases) + " random (state, pulse) cases"});
    out.push_back({"oracle-staggered-vs-dense", dev_staggered <= 1e-10, dev_staggered,
                   "two-layer construction against the matrix exponential"});
    return out;
}

namespace {

CheckResult replay_check(const std::string& name, const SchemeMode& mode, const BasisString& input,
                         const std::vector<PulseProgram>& programs,
                         const std::vector<BasisString>& expected) {
    LatticeConfig config{static_cast<int>(input.size()), Boundary::Open, mode};
    SparseState state = make_basis_state(config, input);
    double dev = 0.0;
    for (size_t step = 0; step < programs.size(); ++step) {
        state = apply_program(state, programs[step]);
        SparseState want = make_basis_state(config, expected[step]);
        dev = std::max(dev, phase_aligned_distance(want, state));
    }
    return {name, dev <= 1e-12, dev, input + " -> " + expected.back()};
}

}  // namespace

std::vector<CheckResult> verify_protocols() {
    SchemeMode six = SchemeMode::six();
    SchemeMode five = SchemeMode::five();
    PulseProgram create6 = macro_program(MacroName::PointerCreate, six);
    PulseProgram create5 = macro_program(MacroName::PointerCreate, five);
    PulseProgram step6 = macro_program(MacroName::StepRight, six);

    std::vector<CheckResult> out;
    out.push_back(replay_check("create-partitions", six, kMixedExample, {create6}, {kMixedExampleCreated}));
    out.push_back(replay_check("crossing-even", six, "2332", {step6}, {"3223"}));
    out.push_back(replay_check("crossing-odd-0", six, "23032", {step6, step6}, {"04040", "32023"}));
    out.push_back(replay_check("crossing-odd-1", six, "23132", {step6, step6}, {"14141", "32123"}));
    out.push_back(replay_check("border-reflection", six, "235", {step6}, {"325"}));
    out.push_back(replay_check("create-five-level", five, "00100", {create5}, {"32123"}));
    return out;
}

std::vector<CheckResult> verify_pure_mixed() {
    std::vector<CheckResult> out;
    SchemeMode six = SchemeMode::six();
    SchemeMode five = SchemeMode::five();

    PulseProgram prog6 = macro_program(MacroName::PointerCreate, six);
    PulseProgram measure6 = macro_program(MacroName::MeasurePrep, six);
    prog6.pulses.insert(prog6.pulses.end(), measure6.pulses.begin(), measure6.pulses.end());
    for (double eps : {0.1, 0.2}) {
        double dev = pure_mixed_equivalence(10, eps, prog6, six);
        out.push_back({"pure-mixed-6lvl-eps" + std::to_string(eps).substr(0, 4), dev <= 1e-10, dev,
                       "creation + measurement, m=10"});
    }

    LogicalCircuit one_qubit;
    one_qubit.n = 1;
    Gate1 g;
    g.target = 1;
    double s = std::sqrt(0.5);
    g.u = {cplx{s, 0}, cplx{0, s}, cplx{0, s}, cplx{s, 0}};  // exp(i pi/4 sx)
    one_qubit.ops = {g, MeasureGate{1}};
    CompiledProgram compiled = compile_circuit(one_qubit, five);
    PulseProgram prog5 = macro_program(MacroName::PointerCreate, five);
    prog5.pulses.insert(prog5.pulses.end(), compiled.program.pulses.begin(),
                        compiled.program.pulses.end());
    for (double eps : {0.1, 0.2}) {
        double dev = pure_mixed_equivalence(10, eps, prog5, five);
        out.push_back({"pure-mixed-5lvl-eps" + std::to_string(eps).substr(0, 4), dev <= 1e-10, dev,
                       "creation + compiled 1-qubit circuit, m=10"});
    }
    return out;
}

std::vector<CheckResult> verify_scaling() {
    std::vector<CheckResult> out;
    auto rows = scaling_table({2, 10});
    double d2 = std::abs(rows[0].ratio - 0.1001129150390625);  // (3/4)^8
    out.push_back({"scaling-ratio-n2", d2 <= 1e-12, d2, "(1-1/4)^8"});
    double d10 = std::abs(rows[1].ratio - std::pow(0.99, 24));
    out.push_back({"scaling-ratio-n10", d10 <= 1e-12 && std::abs(rows[1].ratio - 0.7857) < 5e-4, d10,
                   "(1-1/100)^24 ~ 0.7857"});

    std::vector<int> ns;
    for (int n = 2; n <= 1000; ++n) ns.push_back(n);
    auto all = scaling_table(ns);
    bool monotone = true;
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i].ratio <= all[i - 1].ratio) monotone = false;
    bool approaches_one = all.back().ratio > 0.997 && all.back().ratio < 1.0;
    out.push_back({"scaling-monotone-to-one", monotone && approaches_one,
                   1.0 - all.back().ratio, "ratio increases over n=2..1000 and approaches 1"});
    return out;
}

}  // namespace tiqca
