#include "tiqca/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tiqca {

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

bool mat2_is_unitary(const Mat2& u, double tol) {
    // U^dagger U == I
    cplx g00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
    cplx g01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
    cplx g11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
    return std::abs(g00 - cplx{1.0, 0.0}) <= tol && std::abs(g01) <= tol &&
           std::abs(g11 - cplx{1.0, 0.0}) <= tol;
}

void LogicalCircuit::validate() const {
    if (n < 1) throw Error(ErrorKind::InvalidCircuit, "circuit needs at least one qubit");
    for (size_t i = 0; i < ops.size(); ++i) {
        const GateOp& op = ops[i];
        if (const auto* g = std::get_if<Gate1>(&op)) {
            if (g->target < 1 || g->target > n)
                throw Error(ErrorKind::InvalidCircuit, "gate target out of range");
            if (!mat2_is_unitary(g->u, 1e-10))
                throw Error(ErrorKind::NotUnitary, "single-qubit gate matrix is not unitary");
        } else if (const auto* c = std::get_if<CnotGate>(&op)) {
            if (c->control < 1 || c->control > n || c->target < 1 || c->target > n)
                throw Error(ErrorKind::InvalidCircuit, "cnot index out of range");
            if (c->control == c->target)
                throw Error(ErrorKind::InvalidCircuit, "cnot control equals target");
        } else {
            const auto& mg = std::get<MeasureGate>(op);
            if (mg.target < 1 || mg.target > n)
                throw Error(ErrorKind::InvalidCircuit, "measured qubit out of range");
            if (i + 1 != ops.size())
                throw Error(ErrorKind::InvalidCircuit, "measurement must be the final operation");
        }
    }
}

bool LogicalCircuit::has_measure() const {
    return !ops.empty() && std::holds_alternative<MeasureGate>(ops.back());
}

int LogicalCircuit::measured_qubit() const {
    return has_measure() ? std::get<MeasureGate>(ops.back()).target : 0;
}

Mat2 rx_matrix(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {cplx{c, 0}, cplx{0, s}, cplx{0, s}, cplx{c, 0}};
}

Mat2 ry_matrix(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {cplx{c, 0}, cplx{s, 0}, cplx{-s, 0}, cplx{c, 0}};
}

std::array<double, 3> euler_angles(const Mat2& g) {
    if (!mat2_is_unitary(g, 1e-10)) throw Error(ErrorKind::NotUnitary, "matrix is not unitary");
    cplx det = g[0] * g[3] - g[1] * g[2];
    if (std::abs(det - cplx{1.0, 0.0}) > 1e-10)
        throw Error(ErrorKind::NotSpecialUnitary, "matrix determinant must be 1");

    // G = w I + i (x sx + y sy + z sz)
    double w = 0.5 * (g[0].real() + g[3].real());
    double z = 0.5 * (g[0].imag() - g[3].imag());
    double x = 0.5 * (g[1].imag() + g[2].imag());
    double y = 0.5 * (g[1].real() - g[2].real());

    double cb = std::hypot(w, x);
    double sb = std::hypot(y, z);
    double beta = std::atan2(sb, cb);
    double sum = cb > 1e-14 ? std::atan2(x, w) : 0.0;   // alpha + gamma
    double diff = sb > 1e-14 ? std::atan2(-z, y) : 0.0;  // alpha - gamma
    if (sb <= 1e-14) return {sum, 0.0, 0.0};
    if (cb <= 1e-14) return {0.5 * diff, beta, -0.5 * diff};
    return {0.5 * (sum + diff), beta, 0.5 * (sum - diff)};
}

ReferenceResult reference_simulate(const LogicalCircuit& circuit) {
    circuit.validate();
    if (circuit.n > 12)
        throw Error(ErrorKind::SupportOverflow, "reference simulation is capped at 12 qubits");
    int n = circuit.n;
    size_t dim = size_t{1} << n;
    ReferenceResult res;
    res.amplitudes.assign(dim, cplx{0.0, 0.0});
    res.amplitudes[0] = 1.0;
    auto bit_of = [&](size_t idx, int q) { return (idx >> (n - q)) & 1u; };

    for (const GateOp& op : circuit.ops) {
        if (const auto* g = std::get_if<Gate1>(&op)) {
            size_t mask = size_t{1} << (n - g->target);
            for (size_t idx = 0; idx < dim; ++idx) {
                if (idx & mask) continue;
                cplx a0 = res.amplitudes[idx];
                cplx a1 = res.amplitudes[idx | mask];
                res.amplitudes[idx] = g->u[0] * a0 + g->u[1] * a1;
                res.amplitudes[idx | mask] = g->u[2] * a0 + g->u[3] * a1;
            }
        } else if (const auto* c = std::get_if<CnotGate>(&op)) {
            size_t tmask = size_t{1} << (n - c->target);
            for (size_t idx = 0; idx < dim; ++idx) {
                if (!bit_of(idx, c->control) || (idx & tmask)) continue;
                std::swap(res.amplitudes[idx], res.amplitudes[idx | tmask]);
            }
        } else {
            const auto& mg = std::get<MeasureGate>(op);
            res.measured = true;
            res.measured_qubit = mg.target;
            double p = 0.0;
            for (size_t idx = 0; idx < dim; ++idx)
                if (bit_of(idx, mg.target)) p += std::norm(res.amplitudes[idx]);
            res.p_one = p;
        }
    }
    return res;
}

LogicalCircuit parse_circuit(const std::string& text) {
    LogicalCircuit circuit;
    circuit.n = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (op == "qubits") {
            if (circuit.n != 0) fail("duplicate 'qubits' line");
            if (!(ls >> circuit.n) || circuit.n < 1) fail("expected 'qubits <n>'");
        } else if (op == "g") {
            int q;
            double r[8];
            if (!(ls >> q >> r[0] >> r[1] >> r[2] >> r[3] >> r[4] >> r[5] >> r[6] >> r[7]))
                fail("expected 'g <q> <8 reals>'");
            Gate1 gate;
            gate.target = q;
            gate.u = {cplx{r[0], r[1]}, cplx{r[2], r[3]}, cplx{r[4], r[5]}, cplx{r[6], r[7]}};
            circuit.ops.emplace_back(gate);
        } else if (op == "cx") {
            int c, t;
            if (!(ls >> c >> t)) fail("expected 'cx <control> <target>'");
            circuit.ops.emplace_back(CnotGate{c, t});
        } else if (op == "measure") {
            int q;
            if (!(ls >> q)) fail("expected 'measure <q>'");
            circuit.ops.emplace_back(MeasureGate{q});
        } else {
            fail("unknown directive '" + op + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
    }
    if (circuit.n == 0) {
        lineno = 0;
        fail("missing 'qubits <n>' line");
    }
    try {
        circuit.validate();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("circuit: ") + e.what());
    }
    return circuit;
}

namespace {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string circuit_to_text(const LogicalCircuit& circuit) {
    std::string out = "qubits " + std::to_string(circuit.n) + "\n";
    for (const GateOp& op : circuit.ops) {
        if (const auto* g = std::get_if<Gate1>(&op)) {
            out += "g " + std::to_string(g->target);
            for (const cplx& c : g->u) out += " " + fmt_real(c.real()) + " " + fmt_real(c.imag());
            out += "\n";
        } else if (const auto* c = std::get_if<CnotGate>(&op)) {
            out += "cx " + std::to_string(c->control) + " " + std::to_string(c->target) + "\n";
        } else {
            out += "measure " + std::to_string(std::get<MeasureGate>(op).target) + "\n";
        }
    }
    return out;
}

}  // namespace tiqca
