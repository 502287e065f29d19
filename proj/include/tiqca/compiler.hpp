#pragma once

#include "tiqca/circuit.hpp"
#include "tiqca/macros.hpp"
#include "tiqca/pulse.hpp"

namespace tiqca {

/// Pointer-position bookkeeping: the pointer sits in the "gap" between
/// logical qubits k and k+1, with home = 0 at the left partition border.
/// Stepping moves the gap; the physical two-site qubit hop stays hidden at
/// this layer.
struct TapeLayout {
    int n = 0;
    int gap = 0;

    static constexpr int kHome = 0;

    void step_right() {
        if (gap >= n) throw Error(ErrorKind::RoutingError, "pointer gap beyond the last qubit");
        ++gap;
    }
    void step_left() {
        if (gap <= 0) throw Error(ErrorKind::RoutingError, "pointer gap below home");
        --gap;
    }
    bool at_home() const { return gap == kHome; }
};

/// Result of compiling a logical circuit to a global pulse program.
/// `checkpoints` records (pulses emitted so far, gap) after every macro for
/// audit.
struct CompiledProgram {
    PulseProgram program;
    int n = 0;
    int l_min = 0;  // minimum partition length with non-colliding qubit ranges
    std::vector<std::pair<int, int>> checkpoints;

    std::vector<int> gap_trajectory() const {
        std::vector<int> out;
        out.reserve(checkpoints.size());
        for (const auto& [_, g] : checkpoints) out.push_back(g);
        return out;
    }
};

/// Compiles a circuit into the global pulse vocabulary: STEP macros for
/// routing, three-rotation Euler sequences per single-qubit gate (plus one
/// phase pulse when the determinant calls for it), the six-pulse CNOT macro
/// with polarity corrections, and a terminal measurement marking. The
/// measured qubit is swapped to position 1 so the pointer is home before the
/// final marking pulse (level-4 residue forbids stepping afterwards).
CompiledProgram compile_circuit(const LogicalCircuit& circuit, const SchemeMode& mode);

/// Extracts the two computers of a partition whose pointers returned home:
/// the left computer's qubits (first n sites right of the left pointer) and
/// the right computer's (first n sites left of the right pointer, reversed).
/// `start`/`length` locate the partition inside the lattice strings.
std::pair<std::vector<cplx>, std::vector<cplx>> logical_readout(const SparseState& state, int start,
                                                                int length, int n);

}  // namespace tiqca
