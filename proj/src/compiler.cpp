#include "tiqca/compiler.hpp"

#include <cmath>

namespace tiqca {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kQuarterPi = 0.7853981633974483;

const QubitVector kE0{cplx{1, 0}, cplx{0, 0}};
const QubitVector kE1{cplx{0, 0}, cplx{1, 0}};
const QubitVector kIE1{cplx{0, 0}, cplx{0, 1}};  // i|1>, the sigma-y pair partner

struct Emitter {
    SchemeMode mode;
    int n;
    PulseProgram program;
    TapeLayout tape;
    std::vector<std::pair<int, int>> checkpoints{{0, 0}};

    PulseProgram step_right_macro, step_left_macro, cnot_left_macro, cnot_right_macro, measure_macro;

    explicit Emitter(const SchemeMode& m, int qubits) : mode(m), n(qubits), tape{qubits, 0} {
        program.mode = m;
        step_right_macro = macro_program(MacroName::StepRight, m);
        step_left_macro = macro_program(MacroName::StepLeft, m);
        cnot_left_macro = macro_program(MacroName::CnotSrcLeft, m);
        cnot_right_macro = macro_program(MacroName::CnotSrcRight, m);
        measure_macro = macro_program(MacroName::MeasurePrep, m);
    }

    int gap() const { return tape.gap; }

    void checkpoint() {
        checkpoints.emplace_back(static_cast<int>(program.pulses.size()), tape.gap);
    }

    void append(const PulseProgram& macro) {
        program.pulses.insert(program.pulses.end(), macro.pulses.begin(), macro.pulses.end());
        checkpoint();
    }

    void route_to(int target) {
        while (tape.gap < target) {
            tape.step_right();
            append(step_right_macro);
        }
        while (tape.gap > target) {
            tape.step_left();
            append(step_left_macro);
        }
    }

    /// Control-3 rotation addressing the qubit right of the pointer (gap+1).
    void rot(double angle, const QubitVector& u, const QubitVector& v) {
        program.pulses.emplace_back(ControlledExchange::rotation(3, u, v, angle));
        checkpoint();
    }

    /// exp(i a sx), exp(i b sy), exp(i c sx) plus a determinant phase pulse
    /// when needed; always three rotation lines per gate.
    void gate1(const Gate1& g) {
        route_to(g.target - 1);
        cplx det = g.u[0] * g.u[3] - g.u[1] * g.u[2];
        double delta = 0.5 * std::arg(det);
        Mat2 su = g.u;
        cplx undo = std::polar(1.0, -2.0 * delta);
        su[1] *= undo;
        su[3] *= undo;  // su = U . diag(1, e^{-2i delta})
        if (std::abs(delta) > 1e-12) rot(delta, kE1, kE1);
        auto [alpha, beta, gamma] = euler_angles(su);
        rot(gamma, kE0, kE1);
        rot(beta, kE0, kIE1);
        rot(alpha, kE0, kE1);
    }

    /// Adjacent CNOT. The raw macro sequence flips the target when the
    /// source holds 0, with branch phases i (flip) and -1 (hold); one phase
    /// pulse diag(1,-i) on the source and one X rotation on the target turn
    /// it into a standard CNOT up to a global phase.
    void cnot_adjacent(int control, int target) {
        if (target == control + 1) {
            route_to(control - 1);
            rot(-kQuarterPi, kE1, kE1);  // source = qubit control, right of the 3
            route_to(control);
            if (gap() < 1 || gap() > n - 1)
                throw Error(ErrorKind::RoutingError, "cnot pointer gap touches the partition border");
            append(cnot_left_macro);
            rot(kHalfPi, kE0, kE1);  // X on target = qubit control+1
        } else if (target == control - 1) {
            route_to(target);
            if (gap() < 1 || gap() > n - 1)
                throw Error(ErrorKind::RoutingError, "cnot pointer gap touches the partition border");
            rot(-kQuarterPi, kE1, kE1);  // source = qubit control, right of the 3
            append(cnot_right_macro);
            route_to(target - 1);
            rot(kHalfPi, kE0, kE1);  // X on target, right of the 3 one gap down
        } else {
            throw Error(ErrorKind::RoutingError, "cnot_adjacent needs neighboring qubits");
        }
    }

    void swap_adjacent(int a, int b) {
        cnot_adjacent(a, b);
        cnot_adjacent(b, a);
        cnot_adjacent(a, b);
    }

    void cnot(const CnotGate& c) {
        if (std::abs(c.control - c.target) == 1) {
            cnot_adjacent(c.control, c.target);
            return;
        }
        // Lower through swap chains: walk the control next to the target.
        if (c.target > c.control) {
            for (int j = c.control; j <= c.target - 2; ++j) swap_adjacent(j, j + 1);
            cnot_adjacent(c.target - 1, c.target);
            for (int j = c.target - 2; j >= c.control; --j) swap_adjacent(j, j + 1);
        } else {
            for (int j = c.control - 1; j >= c.target + 1; --j) swap_adjacent(j, j + 1);
            cnot_adjacent(c.target + 1, c.target);
            for (int j = c.target + 1; j <= c.control - 1; ++j) swap_adjacent(j, j + 1);
        }
    }

    void measure(const MeasureGate& mg) {
        // Bring the measured value to qubit 1, then mark it from home.
        for (int j = mg.target - 1; j >= 1; --j) swap_adjacent(j, j + 1);
        route_to(0);
        append(measure_macro);
    }
};

}  // namespace

CompiledProgram compile_circuit(const LogicalCircuit& circuit, const SchemeMode& mode) {
    circuit.validate();
    mode.validate();
    Emitter em(mode, circuit.n);
    for (const GateOp& op : circuit.ops) {
        if (const auto* g = std::get_if<Gate1>(&op))
            em.gate1(*g);
        else if (const auto* c = std::get_if<CnotGate>(&op))
            em.cnot(*c);
        else
            em.measure(std::get<MeasureGate>(op));
    }
    if (!circuit.has_measure()) em.route_to(0);

    CompiledProgram out;
    out.program = std::move(em.program);
    out.program.name = "compiled";
    out.n = circuit.n;
    out.l_min = 2 * circuit.n + 4;
    out.checkpoints = std::move(em.checkpoints);
    return out;
}

std::pair<std::vector<cplx>, std::vector<cplx>> logical_readout(const SparseState& state, int start,
                                                                int length, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidCircuit, "readout needs n >= 1");
    if (length < 2 * n + 4)
        throw Error(ErrorKind::PartitionTooSmall,
                    "partition length " + std::to_string(length) + " < " + std::to_string(2 * n + 4));
    if (start < 0 || start + length > state.config.m)
        throw Error(ErrorKind::InvalidConfig, "partition exceeds the lattice");
    if (state.amps.empty()) throw Error(ErrorKind::InvalidConfig, "empty state");

    size_t dim = size_t{1} << n;
    std::vector<std::vector<cplx>> joint(dim, std::vector<cplx>(dim, cplx{0.0, 0.0}));
    std::string outside_ref;
    auto site = [&](const BasisString& s, int i) { return s[static_cast<size_t>(start + i)]; };

    for (const auto& [s, a] : state.amps) {
        if (site(s, 0) != '2' || site(s, 1) != '3' || site(s, length - 2) != '3' ||
            site(s, length - 1) != '2')
            throw Error(ErrorKind::PointerNotHome, "pointer patterns are away from home: " + s);
        for (int i = n + 2; i <= length - 3 - n; ++i)
            if (site(s, i) != '0')
                throw Error(ErrorKind::PointerNotHome, "tape content leaked between computers: " + s);
        std::string outside = s.substr(0, static_cast<size_t>(start)) +
                              s.substr(static_cast<size_t>(start + length));
        if (outside_ref.empty())
            outside_ref = outside;
        else if (outside != outside_ref)
            throw Error(ErrorKind::PointerNotHome, "support varies outside the partition");

        size_t li = 0, ri = 0;
        for (int q = 1; q <= n; ++q) {
            char cl = site(s, 1 + q);           // left computer: sites 2 .. n+1
            char cr = site(s, length - 2 - q);  // right computer: sites len-3 .. len-2-n
            if ((cl != '0' && cl != '1') || (cr != '0' && cr != '1'))
                throw Error(ErrorKind::PointerNotHome, "qubit window holds a non-qubit level: " + s);
            li = (li << 1) | static_cast<size_t>(cl - '0');
            ri = (ri << 1) | static_cast<size_t>(cr - '0');
        }
        joint[li][ri] += a;
    }

    // The two computers evolve on disjoint sites, so the joint table must be
    // rank one: factor it and verify the residual.
    size_t i0 = 0, j0 = 0;
    double best = -1.0;
    double total_sq = 0.0;
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            double p = std::norm(joint[i][j]);
            total_sq += p;
            if (p > best) {
                best = p;
                i0 = i;
                j0 = j;
            }
        }
    if (total_sq <= 0.0) throw Error(ErrorKind::PointerNotHome, "partition carries no amplitude");

    std::vector<cplx> left(dim), right(dim);
    double ln = 0.0, rn = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        left[i] = joint[i][j0];
        ln += std::norm(left[i]);
    }
    for (size_t j = 0; j < dim; ++j) {
        right[j] = joint[i0][j];
        rn += std::norm(right[j]);
    }
    ln = std::sqrt(ln);
    rn = std::sqrt(rn);
    for (auto& c : left) c /= ln;
    for (auto& c : right) c /= rn;

    cplx scale = joint[i0][j0] / (left[i0] * right[j0]);
    double max_resid = 0.0;
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            max_resid = std::max(max_resid, std::abs(joint[i][j] - scale * left[i] * right[j]));
    if (max_resid > 1e-8 * std::sqrt(best))
        throw Error(ErrorKind::ReadoutEntangled, "partition state is not a product of two computers");
    return {std::move(left), std::move(right)};
}

}  // namespace tiqca
