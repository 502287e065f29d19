// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
//   C1 protocol trace replays              C5 compiler end-to-end
//   C2 sparse vs dense oracle              C6 scalability formulas
//   C3 reversibility and unitarity         C7 pure/mixed equivalence
//   C4 locality                            C8 conservation laws

#include <chrono>
#include <cstdio>
#include <random>

#include "tiqca/compiler.hpp"
#include "tiqca/dense_oracle.hpp"
#include "tiqca/ensemble.hpp"
#include "tiqca/verify.hpp"

using namespace tiqca;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(const char* id, const char* name, bool pass, double deviation, double seconds,
            double budget_s) {
    bool ok = pass && seconds < budget_s;
    if (!ok) ++g_failures;
    std::printf("[%s] %s %-28s deviation=%.3e  %.2fs (budget %.0fs)\n", ok ? "PASS" : "FAIL", id,
                name, deviation, seconds, budget_s);
    std::fflush(stdout);
}

Mat2 random_u2(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    cplx a{g(rng), g(rng)}, b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    std::uniform_real_distribution<double> ph(-M_PI, M_PI);
    cplx phase = std::polar(1.0, ph(rng));
    return {phase * a, phase * -std::conj(b), phase * b, phase * std::conj(a)};
}

LogicalCircuit random_circuit(std::mt19937_64& rng, int n, int gates) {
    LogicalCircuit c;
    c.n = n;
    std::uniform_int_distribution<int> q_dist(1, n);
    std::uniform_int_distribution<int> kind(0, 2);
    while (static_cast<int>(c.ops.size()) < gates) {
        if (n >= 2 && kind(rng) == 1) {
            int a = q_dist(rng), b = q_dist(rng);
            while (b == a) b = q_dist(rng);
            c.ops.emplace_back(CnotGate{a, b});
        } else {
            c.ops.emplace_back(Gate1{q_dist(rng), random_u2(rng)});
        }
    }
    return c;
}

double fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx ip{0, 0};
    for (size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
    return std::norm(ip);
}

SparseState fresh_partition(int len, const SchemeMode& mode) {
    LatticeConfig cfg{len + 2, Boundary::Open, mode};
    BasisString s(static_cast<size_t>(len + 2), '0');
    set_level(s, 0, mode.wall_level);
    set_level(s, len + 1, mode.wall_level);
    return create_pointers(make_basis_state(cfg, s));
}

// --- C1: exact replays of the protocol-defining configuration traces ---------------

void criterion1() {
    Timer t;
    double dev = 0.0;
    bool pass = true;
    for (const CheckResult& c : verify_protocols()) {
        pass = pass && c.pass;
        dev = std::max(dev, c.deviation);
    }
    report("C1", "protocol-trace-replays", pass, dev, t.seconds(), 1.0);
}

// --- C2: per-site rule vs assembled-Hamiltonian exponential -----------------

void criterion2() {
    Timer t;
    std::mt19937_64 rng(220817);
    std::uniform_int_distribution<int> m_dist(2, 6);
    std::uniform_int_distribution<int> support_dist(1, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    double dev = 0.0;
    for (int c = 0; c < 200; ++c) {
        LatticeConfig cfg{m_dist(rng), coin(rng) ? Boundary::Periodic : Boundary::Open,
                          SchemeMode::six()};
        SparseState state = random_sparse_state(rng, cfg, support_dist(rng));
        Pulse pulse = random_pulse(rng, cfg.mode, true);
        DenseState fast = to_dense(apply_pulse(state, pulse));
        DenseState slow = apply_pulse_dense(to_dense(state), pulse);
        dev = std::max(dev, max_amplitude_distance(fast, slow));
    }
    report("C2", "oracle-equivalence", dev <= 1e-10, dev, t.seconds(), 120.0);
}

// --- C3: reversibility and unitarity ----------------------------------------

void criterion3() {
    Timer t;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> m_dist(2, 6);

    double drift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        LatticeConfig cfg{m_dist(rng), i % 2 ? Boundary::Periodic : Boundary::Open,
                          SchemeMode::six()};
        SparseState s = random_sparse_state(rng, cfg, 3);
        SparseState out = apply_pulse(s, random_pulse(rng, cfg.mode, true));
        drift = std::max(drift, std::abs(out.norm() - 1.0));
    }

    double round_dev = 0.0;
    for (int i = 0; i < 40; ++i) {
        LatticeConfig cfg{m_dist(rng), Boundary::Periodic, SchemeMode::six()};
        PulseProgram prog;
        prog.mode = cfg.mode;
        for (int k = 0; k < 6; ++k) prog.pulses.push_back(random_pulse(rng, cfg.mode, true));
        SparseState s = random_sparse_state(rng, cfg, 3);
        SparseState round = apply_program(apply_program(s, prog), invert(prog));
        for (const auto& [key, amp] : s.amps) {
            auto it = round.amps.find(key);
            round_dev = std::max(
                round_dev, std::abs(amp - (it == round.amps.end() ? cplx{0, 0} : it->second)));
        }
        for (const auto& [key, amp] : round.amps)
            if (!s.amps.contains(key)) round_dev = std::max(round_dev, std::abs(amp));
    }
    bool pass = drift <= 1e-12 && round_dev <= 1e-12;
    report("C3", "reversibility-unitarity", pass, std::max(drift, round_dev), t.seconds(), 120.0);
}

// --- C4: finite propagation speed -------------------------------------------

void criterion4() {
    Timer t;
    std::mt19937_64 rng(4);
    int m = 12;
    LatticeConfig cfg{m, Boundary::Periodic, SchemeMode::six()};
    double dev = 0.0;
    bool pass = true;
    for (int rep = 0; rep < 12; ++rep) {
        int j = static_cast<int>(rng() % static_cast<unsigned>(m));
        BasisString base(static_cast<size_t>(m), '0');
        for (int i = 0; i < m; ++i) set_level(base, i, static_cast<int>(rng() % 6));
        BasisString other = base;
        set_level(other, j, (level_at(base, j) + 1 + static_cast<int>(rng() % 5)) % 6);
        SparseState a = make_basis_state(cfg, base);
        SparseState b = make_basis_state(cfg, other);
        for (int steps = 1; steps <= 5; ++steps) {
            Pulse p = random_pulse(rng, cfg.mode, false);
            a = apply_pulse(a, p);
            b = apply_pulse(b, p);
            std::vector<int> far;
            for (int i = 0; i < m; ++i)
                if (std::min(std::abs(i - j), m - std::abs(i - j)) > steps) far.push_back(i);
            if (far.empty()) continue;
            auto da = marginal_distribution(a, far);
            auto db = marginal_distribution(b, far);
            if (da.size() != db.size()) pass = false;
            for (const auto& [key, prob] : da) {
                auto it = db.find(key);
                if (it == db.end()) {
                    pass = false;
                    continue;
                }
                dev = std::max(dev, std::abs(prob - it->second));
            }
        }
    }
    report("C4", "locality-light-cone", pass && dev <= 1e-12, dev, t.seconds(), 60.0);
}

// --- C5: compiler end-to-end -------------------------------------------------

void criterion5() {
    Timer t;
    std::mt19937_64 rng(5);
    SchemeMode six = SchemeMode::six();
    std::uniform_int_distribution<int> n_dist(2, 3);
    std::uniform_int_distribution<int> g_dist(1, 8);
    double worst_fid = 1.0;
    double worst_meas = 0.0;
    bool pass = true;
    for (int rep = 0; rep < 50; ++rep) {
        int n = n_dist(rng);
        LogicalCircuit c = random_circuit(rng, n, g_dist(rng));
        CompiledProgram cp = compile_circuit(c, six);
        int len = 2 * n + 6;
        SparseState state = apply_program(fresh_partition(len, six), cp.program);
        ReferenceResult ref = reference_simulate(c);
        try {
            auto [left, right] = logical_readout(state, 1, len, n);
            worst_fid = std::min(
                {worst_fid, fidelity(left, ref.amplitudes), fidelity(right, ref.amplitudes)});
        } catch (const Error&) {
            pass = false;
        }

        LogicalCircuit measured = c;
        measured.ops.emplace_back(MeasureGate{1 + static_cast<int>(rng() % n)});
        CompiledProgram mp = compile_circuit(measured, six);
        SparseState mstate = apply_program(fresh_partition(len, six), mp.program);
        ReferenceResult mref = reference_simulate(measured);
        worst_meas = std::max(worst_meas,
                              std::abs(expectation_level_count(mstate, 4) - 2.0 * mref.p_one));
    }
    pass = pass && worst_fid >= 1.0 - 1e-9 && worst_meas <= 1e-9;
    report("C5", "compiler-end-to-end", pass, std::max(1.0 - worst_fid, worst_meas), t.seconds(),
           300.0);
}

// --- C6: scalability formulas -------------------------------------------------

void criterion6() {
    Timer t;
    bool pass = true;
    double dev = 0.0;
    const Mat2 x{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
    for (double eps : {0.01, 0.02}) {
        for (int n : {2, 4}) {
            LogicalCircuit c;
            c.n = n;
            c.ops = {Gate1{1, x}, MeasureGate{1}};
            EnsembleParams params;
            params.m = 100000;
            params.epsilon = eps;
            params.n = n;
            params.trials = 50;
            params.master_seed = 600 + n + static_cast<int>(eps * 1000);
            EnsembleReport rep = run_ensemble(params, c);
            double zp =
                std::abs(rep.partitions_mean - rep.predicted_partitions) / rep.partitions_stderr;
            double zw = std::abs(rep.working_mean - rep.predicted_working) / rep.working_stderr;
            if (zp > 3.0 || zw > 3.0) pass = false;
            if (rep.crosscheck_count > 0 && rep.crosscheck_max_dev > 1e-9) pass = false;
            dev = std::max(dev, std::max(zp, zw));
        }
    }

    auto rows = scaling_table({2, 10});
    if (std::abs(rows[0].ratio - 0.1001) > 5e-5) pass = false;
    if (std::abs(rows[1].ratio - 0.7857) > 5e-5) pass = false;
    std::vector<int> ns;
    for (int n = 2; n <= 1000; ++n) ns.push_back(n);
    auto all = scaling_table(ns);
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i].ratio <= all[i - 1].ratio) pass = false;
    if (!(all.back().ratio > 0.995)) pass = false;

    report("C6", "scalability-formulas", pass, dev, t.seconds(), 120.0);
}

// --- C7: pure/mixed equivalence ------------------------------------------------

void criterion7() {
    Timer t;
    double dev = 0.0;
    SchemeMode six = SchemeMode::six();
    PulseProgram prog6 = macro_program(MacroName::PointerCreate, six);
    PulseProgram meas6 = macro_program(MacroName::MeasurePrep, six);
    prog6.pulses.insert(prog6.pulses.end(), meas6.pulses.begin(), meas6.pulses.end());
    for (double eps : {0.1, 0.2})
        for (int m : {10, 12}) dev = std::max(dev, pure_mixed_equivalence(m, eps, prog6, six));

    SchemeMode five = SchemeMode::five();
    LogicalCircuit one;
    one.n = 1;
    double s = std::sqrt(0.5);
    one.ops = {Gate1{1, Mat2{cplx{s, 0}, cplx{0, s}, cplx{0, s}, cplx{s, 0}}}, MeasureGate{1}};
    CompiledProgram c5 = compile_circuit(one, five);
    PulseProgram prog5 = macro_program(MacroName::PointerCreate, five);
    prog5.pulses.insert(prog5.pulses.end(), c5.program.pulses.begin(), c5.program.pulses.end());
    for (double eps : {0.1, 0.2})
        for (int m : {10, 12}) dev = std::max(dev, pure_mixed_equivalence(m, eps, prog5, five));

    report("C7", "pure-mixed-equivalence", dev <= 1e-10, dev, t.seconds(), 300.0);
}

// --- C8: conservation laws ------------------------------------------------------

void criterion8() {
    Timer t;
    SchemeMode six = SchemeMode::six();
    std::mt19937_64 rng(8);
    bool pass = true;

    // Every pulse the artifact emits keeps level 5 out of its exchange span,
    // so wall positions are invariant string by string.
    std::vector<Pulse> artifact_pulses;
    for (MacroName name : {MacroName::PointerCreate, MacroName::StepRight, MacroName::StepLeft,
                           MacroName::CnotSrcLeft, MacroName::CnotSrcRight, MacroName::MeasurePrep})
        for (const Pulse& p : macro_program(name, six).pulses) artifact_pulses.push_back(p);
    LogicalCircuit sample = random_circuit(rng, 3, 6);
    sample.ops.emplace_back(MeasureGate{2});
    for (const Pulse& p : compile_circuit(sample, six).program.pulses)
        artifact_pulses.push_back(p);
    for (const Pulse& p : artifact_pulses)
        if (pulse_touches_level(p, 5)) pass = false;

    auto wall_positions = [](const BasisString& key) {
        std::vector<int> pos;
        for (size_t i = 0; i < key.size(); ++i)
            if (key[i] == '5') pos.push_back(static_cast<int>(i));
        return pos;
    };
    for (int rep = 0; rep < 60; ++rep) {
        LatticeConfig cfg{8, Boundary::Periodic, six};
        SparseState st = random_sparse_state(rng, cfg, 2);
        const Pulse& p = artifact_pulses[rng() % artifact_pulses.size()];
        std::vector<std::vector<int>> before;
        for (const auto& [key, amp] : st.amps) before.push_back(wall_positions(key));
        std::sort(before.begin(), before.end());
        SparseState out = apply_pulse(st, p);
        for (const auto& [key, amp] : out.amps)
            if (!std::binary_search(before.begin(), before.end(), wall_positions(key)))
                pass = false;
    }

    // Pointer inventory is unchanged by every computation macro.
    int checked = 0;
    while (checked < 100) {
        int m = 10 + static_cast<int>(rng() % 6);
        LatticeConfig cfg{m, Boundary::Open, six};
        BasisString walls(static_cast<size_t>(m), '0');
        for (int i = 0; i < m; ++i)
            if (rng() % 4 == 0) set_level(walls, i, 5);
        SparseState created = create_pointers(make_basis_state(cfg, walls));
        BasisString base = created.amps.begin()->first;
        for (int i = 1; i + 1 < m; ++i)
            if (level_at(base, i) == 0 && rng() % 3 == 0) set_level(base, i, 1);
        int total = pointer_census(base, six).total_pointers();
        if (total == 0) continue;
        ++checked;
        for (MacroName name : {MacroName::StepRight, MacroName::StepLeft, MacroName::CnotSrcLeft,
                               MacroName::CnotSrcRight, MacroName::MeasurePrep}) {
            SparseState out = apply_program(make_basis_state(cfg, base), macro_program(name, six));
            for (const auto& [key, amp] : out.amps)
                if (pointer_census(key, six).total_pointers() != total) pass = false;
        }
    }

    report("C8", "conservation-suite", pass, 0.0, t.seconds(), 120.0);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
