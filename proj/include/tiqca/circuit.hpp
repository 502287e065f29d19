#pragma once

#include <array>
#include <optional>
#include <variant>

#include "tiqca/lattice.hpp"

namespace tiqca {

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
bool mat2_is_unitary(const Mat2& u, double tol);

struct Gate1 {
    int target = 1;  // 1-based qubit index
    Mat2 u{};
};

struct CnotGate {
    int control = 1;
    int target = 2;
};

struct MeasureGate {
    int target = 1;
};

using GateOp = std::variant<Gate1, CnotGate, MeasureGate>;

/// Abstract n-qubit circuit: single-qubit unitaries, CNOTs and at most one
/// terminal measurement.
struct LogicalCircuit {
    int n = 1;
    std::vector<GateOp> ops;

    void validate() const;
    bool has_measure() const;
    int measured_qubit() const;  // 0 when absent
};

/// Angles (alpha, beta, gamma) with G = e^{i alpha sx} e^{i beta sy} e^{i gamma sx}
/// for special-unitary G, each angle in (-pi, pi].
std::array<double, 3> euler_angles(const Mat2& g);

Mat2 rx_matrix(double theta);
Mat2 ry_matrix(double theta);

struct ReferenceResult {
    std::vector<cplx> amplitudes;  // 2^n, qubit 1 most significant
    bool measured = false;
    int measured_qubit = 0;
    double p_one = 0.0;  // probability of outcome 1 on the measured qubit
};

/// Plain gate-by-gate state-vector simulation from |0...0>.
ReferenceResult reference_simulate(const LogicalCircuit& circuit);

// --- Circuit text format ----------------------------------------------------
// qubits <n>
// g <q> <8 reals: row-major re/im of the 2x2 unitary>
// cx <control> <target>
// measure <q>
// '#' starts a comment.

LogicalCircuit parse_circuit(const std::string& text);
std::string circuit_to_text(const LogicalCircuit& circuit);

}  // namespace tiqca
