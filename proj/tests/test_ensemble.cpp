#include <random>

#include "doctest.h"
#include "tiqca/ensemble.hpp"
#include "tiqca/verify.hpp"

using namespace tiqca;

namespace {

const Mat2 kX{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};

LogicalCircuit flip_and_measure(int n) {
    LogicalCircuit c;
    c.n = n;
    c.ops = {Gate1{1, kX}, MeasureGate{1}};
    return c;
}

}  // namespace

TEST_CASE("trial seeds are stable and spread") {
    CHECK(trial_seed(1, 0) == trial_seed(1, 0));
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("wall sampling hits the degenerate limits") {
    std::mt19937_64 rng(5);
    CHECK(sample_wall_config(12, 0.0, rng, SchemeMode::six()) == "000000000000");
    CHECK(sample_wall_config(12, 1.0, rng, SchemeMode::six()) == "555555555555");
    CHECK(sample_wall_config(4, 1.0, rng, SchemeMode::five()) == "1111");
}

TEST_CASE("wall sampling frequency at eps = 0.5") {
    std::mt19937_64 rng(trial_seed(99, 0));
    int m = 20, draws = 10000;
    std::vector<int> hits(static_cast<size_t>(m), 0);
    for (int d = 0; d < draws; ++d) {
        BasisString s = sample_wall_config(m, 0.5, rng, SchemeMode::six());
        for (int i = 0; i < m; ++i)
            if (s[static_cast<size_t>(i)] == '5') ++hits[static_cast<size_t>(i)];
    }
    double sigma = std::sqrt(0.25 / draws);
    for (int h : hits) CHECK(std::abs(h / static_cast<double>(draws) - 0.5) <= 3.0 * sigma);
}

TEST_CASE("closed-form expectations") {
    CHECK(expected_partitions(1000000, 0.01) == 10000.0);
    CHECK(expected_partitions(5, 0.0) == 0.0);
    CHECK(std::abs(expected_working(1000000, 0.01, 10) - 7856.781408072187) < 1e-8);
    CHECK(partition_tail_probability(0.3, 0) == 1.0);
    // ratio working/partitions -> 1 as eps -> 0
    CHECK(expected_working(1000, 1e-9, 2) / expected_partitions(1000, 1e-9) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("scaling table") {
    auto rows = scaling_table({2, 10});
    CHECK(rows[0].epsilon == 0.25);
    CHECK(std::abs(rows[0].ratio - 0.1001129150390625) < 1e-15);
    CHECK(std::abs(rows[1].ratio - 0.7856781408072188) < 1e-15);
    CHECK(std::abs(rows[1].working_density - 0.007856781408072188) < 1e-15);
    CHECK_THROWS_AS(scaling_table({1}), Error);

    for (const CheckResult& c : verify_scaling()) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("ensemble statistics track the formulas at small scale") {
    EnsembleParams params;
    params.m = 2000;
    params.epsilon = 0.05;
    params.n = 2;
    params.trials = 24;
    params.master_seed = 20240501;
    EnsembleReport rep = run_ensemble(params, flip_and_measure(2));

    CHECK(rep.predicted_partitions == 100.0);
    CHECK(std::abs(rep.predicted_working - 66.34204312890623) < 1e-10);
    CHECK(std::abs(rep.partitions_mean - rep.predicted_partitions) <= 3.5 * rep.partitions_stderr);
    CHECK(std::abs(rep.working_mean - rep.predicted_working) <= 3.5 * rep.working_stderr);

    // every working partition contributes one marked atom per computer
    CHECK(rep.m4_working_mean == doctest::Approx(2.0 * rep.working_mean).epsilon(1e-12));
    CHECK(rep.m4_mean >= rep.m4_working_mean - 1e-9);
    CHECK(rep.skipped_count == 0);

    // the logical fast path agreed with the pulse-level spot checks
    CHECK(rep.crosscheck_count > 0);
    CHECK(rep.crosscheck_max_dev <= 1e-9);
}

TEST_CASE("ensemble reports are byte-stable") {
    EnsembleParams params;
    params.m = 500;
    params.epsilon = 0.03;
    params.n = 2;
    params.trials = 6;
    params.master_seed = 77;
    LogicalCircuit c = flip_and_measure(2);
    CHECK(run_ensemble(params, c).to_json() == run_ensemble(params, c).to_json());
}

TEST_CASE("degenerate trial without walls stays well-formed") {
    EnsembleParams params;
    params.m = 64;
    params.epsilon = 1e-12;
    params.n = 2;
    params.trials = 3;
    params.master_seed = 3;
    EnsembleReport rep = run_ensemble(params, flip_and_measure(2));
    CHECK(rep.partitions_mean == 1.0);  // single wraparound partition
    CHECK(rep.working_mean == 0.0);
    CHECK(rep.m4_mean == 0.0);
    CHECK(rep.skipped_count == 0);
}

TEST_CASE("partitions above the pulse cap are counted, never dropped") {
    EnsembleParams params;
    params.m = 60;
    params.epsilon = 0.15;
    params.n = 2;
    params.trials = 10;
    params.master_seed = 13;
    params.pulse_cap = 4;  // lengths 5..7 are non-working yet unsimulable
    EnsembleReport rep = run_ensemble(params, flip_and_measure(2));
    CHECK(rep.skipped_count > 0);
}

TEST_CASE("parameter validation") {
    EnsembleParams params;
    params.m = 100;
    params.epsilon = 0.0;
    params.n = 2;
    params.trials = 1;
    CHECK_THROWS_AS(params.validate(), Error);
    params.epsilon = 0.5;
    params.trials = 0;
    CHECK_THROWS_AS(params.validate(), Error);
    params.trials = 1;
    params.m = 8;
    CHECK_THROWS_AS(params.validate(), Error);
    params.m = 100;
    CHECK_NOTHROW(params.validate());

    EnsembleParams five = params;
    five.mode = SchemeMode::five();
    five.m = 100;
    CHECK_THROWS_AS(run_ensemble(five, flip_and_measure(2)), Error);
}

TEST_CASE("five-level ensembles report pointer escape that shrinks with eps") {
    // A gate on qubit 2 forces pointer stepping; stepped pointers in short
    // partitions cross to the border where later pulses chew up the wall.
    LogicalCircuit c;
    c.n = 2;
    c.ops = {Gate1{2, kX}, MeasureGate{1}};
    auto escape_at = [&](double eps) {
        EnsembleParams params;
        params.m = 12;
        params.epsilon = eps;
        params.n = 2;
        params.trials = 80;
        params.master_seed = 424242;
        params.mode = SchemeMode::five();
        return run_ensemble(params, c).escape_fraction;
    };
    double high = escape_at(0.40);
    double mid = escape_at(0.15);
    double low = escape_at(0.03);
    CHECK(high >= mid);
    CHECK(mid >= low);
    CHECK(high > 0.1);   // crowded lattices break out often
    CHECK(low <= 0.15);  // sparse walls rarely do
}

TEST_CASE("pure run equals the weighted branch ensemble") {
    SchemeMode six = SchemeMode::six();
    PulseProgram prog = macro_program(MacroName::PointerCreate, six);
    PulseProgram meas = macro_program(MacroName::MeasurePrep, six);
    prog.pulses.insert(prog.pulses.end(), meas.pulses.begin(), meas.pulses.end());

    CHECK(pure_mixed_equivalence(8, 0.0, prog, six) == 0.0);  // single branch
    CHECK(pure_mixed_equivalence(10, 0.2, prog, six) <= 1e-10);
    CHECK_THROWS_AS(pure_mixed_equivalence(20, 0.2, prog, six), Error);

    for (const CheckResult& c : verify_pure_mixed()) {
        INFO(c.name, " deviation=", c.deviation);
        CHECK(c.pass);
    }
}

TEST_CASE("distinct wall branches stay orthogonal under the level counters") {
    // Evolved branches of different wall configurations never share support,
    // so every cross term of the counting observables vanishes identically.
    // Checked over all configuration pairs at m = 8.
    SchemeMode six = SchemeMode::six();
    const int m = 8;
    LatticeConfig cfg{m, Boundary::Periodic, six};
    PulseProgram prog = macro_program(MacroName::PointerCreate, six);
    PulseProgram meas = macro_program(MacroName::MeasurePrep, six);
    prog.pulses.insert(prog.pulses.end(), meas.pulses.begin(), meas.pulses.end());

    std::vector<SparseState> branches;
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
        BasisString s(static_cast<size_t>(m), '0');
        for (int i = 0; i < m; ++i)
            if ((bits >> i) & 1u) set_level(s, i, 5);
        branches.push_back(apply_program(make_basis_state(cfg, s), prog));
    }
    int violations = 0;
    for (size_t i = 0; i < branches.size(); ++i) {
        for (size_t j = i + 1; j < branches.size(); ++j) {
            for (int x = 0; x < 6 && violations == 0; ++x) {
                cplx cross{0, 0};
                char cx = static_cast<char>('0' + x);
                for (const auto& [s, a] : branches[i].amps) {
                    auto it = branches[j].amps.find(s);
                    if (it == branches[j].amps.end()) continue;
                    auto count = std::count(s.begin(), s.end(), cx);
                    cross += std::conj(a) * it->second * static_cast<double>(count);
                }
                if (cross != cplx{0, 0}) ++violations;
            }
        }
    }
    CHECK(violations == 0);
}
