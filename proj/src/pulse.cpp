#include "tiqca/pulse.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tiqca {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

/// 2x2 complex matrix, row-major.
using Mat2 = std::array<cplx, 4>;

/// exp(i*theta*H) for Hermitian 2x2 H, via the Pauli decomposition
/// H = c*I + w.sigma:  e^{i theta H} = e^{i theta c} (cos(theta|w|) I
/// + i sin(theta|w|) (w/|w|).sigma).
Mat2 hermitian_phase_exp(const Mat2& h, double theta) {
    double c = 0.5 * (h[0].real() + h[3].real());
    double wz = 0.5 * (h[0].real() - h[3].real());
    double wx = h[1].real();
    double wy = -h[1].imag();
    double wn = std::sqrt(wx * wx + wy * wy + wz * wz);
    cplx phase = std::polar(1.0, theta * c);
    if (wn < 1e-300) return {phase, 0.0, 0.0, phase};
    double ct = std::cos(theta * wn);
    double st = std::sin(theta * wn);
    cplx is{0.0, st};
    cplx m00 = phase * (ct + is * (wz / wn));
    cplx m11 = phase * (ct - is * (wz / wn));
    cplx m01 = phase * is * cplx{wx / wn, -wy / wn};
    cplx m10 = phase * is * cplx{wx / wn, wy / wn};
    return {m00, m01, m10, m11};
}

/// Generator A = |u><v| + |v><u| of a rotation pulse, in the {|0>,|1>} basis.
Mat2 rotation_generator(const QubitVector& u, const QubitVector& v) {
    Mat2 a;
    a[0] = u.c0 * std::conj(v.c0) + v.c0 * std::conj(u.c0);
    a[1] = u.c0 * std::conj(v.c1) + v.c0 * std::conj(u.c1);
    a[2] = u.c1 * std::conj(v.c0) + v.c1 * std::conj(u.c0);
    a[3] = u.c1 * std::conj(v.c1) + v.c1 * std::conj(u.c1);
    return a;
}

struct SpanAction {
    // Levels spanned by the exchange pair; size 1 (u == v) or 2.
    std::array<int, 2> span_levels{-1, -1};
    int span_size = 0;
    // Site unitaries for activation count 1 and 2 in span coordinates.
    Mat2 m1{};
    Mat2 m2{};
    // Scalar phases for the u == v basis case.
    cplx phase1{1.0, 0.0};
    cplx phase2{1.0, 0.0};
    bool scalar = false;

    bool in_span(int level) const {
        return (span_size > 0 && level == span_levels[0]) ||
               (span_size > 1 && level == span_levels[1]);
    }
    int span_index(int level) const { return level == span_levels[0] ? 0 : 1; }
};

SpanAction make_span_action(const ControlledExchange& ce) {
    SpanAction act;
    if (ce.is_basis()) {
        int a = std::get<int>(ce.u);
        int b = std::get<int>(ce.v);
        if (a == b) {
            act.scalar = true;
            act.span_levels = {a, -1};
            act.span_size = 1;
            // A = 2|a><a| restricted to |a>.
            act.phase1 = std::polar(1.0, 2.0 * ce.angle);
            act.phase2 = std::polar(1.0, 4.0 * ce.angle);
            return act;
        }
        act.span_levels = {a, b};
        act.span_size = 2;
        Mat2 sigma_x{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        act.m1 = hermitian_phase_exp(sigma_x, ce.angle);
        act.m2 = hermitian_phase_exp(sigma_x, 2.0 * ce.angle);
        return act;
    }
    act.span_levels = {0, 1};
    act.span_size = 2;
    Mat2 gen = rotation_generator(std::get<QubitVector>(ce.u), std::get<QubitVector>(ce.v));
    act.m1 = hermitian_phase_exp(gen, ce.angle);
    act.m2 = hermitian_phase_exp(gen, 2.0 * ce.angle);
    return act;
}

int neighbor_count(const BasisString& s, int site, char control_char, const LatticeConfig& config) {
    int m = config.m;
    int k = 0;
    if (config.boundary == Boundary::Periodic) {
        k += s[static_cast<size_t>((site + m - 1) % m)] == control_char;
        k += s[static_cast<size_t>((site + 1) % m)] == control_char;
    } else {
        if (site > 0) k += s[static_cast<size_t>(site - 1)] == control_char;
        if (site + 1 < m) k += s[static_cast<size_t>(site + 1)] == control_char;
    }
    return k;
}

}  // namespace

void QubitVector::validate() const {
    if (std::abs(norm_sq() - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidPulse, "qubit vector is not normalized");
}

void ControlledExchange::validate(const SchemeMode& mode) const {
    if (control < 0 || control >= mode.levels)
        throw Error(ErrorKind::InvalidPulse, "control level out of range");
    if (!std::isfinite(angle)) throw Error(ErrorKind::InvalidPulse, "pulse angle is not finite");
    if (std::holds_alternative<int>(u) != std::holds_alternative<int>(v))
        throw Error(ErrorKind::InvalidPulse, "exchange pair must be both levels or both qubit vectors");
    if (is_basis()) {
        int a = std::get<int>(u);
        int b = std::get<int>(v);
        if (a < 0 || a >= mode.levels || b < 0 || b >= mode.levels)
            throw Error(ErrorKind::InvalidPulse, "exchange level out of range");
        if (a == control || b == control)
            throw Error(ErrorKind::InvalidPulse, "exchange levels must differ from the control level");
    } else {
        // Qubit rotations live in span{|0>,|1>}; the control must be
        // orthogonal to it.
        if (control == 0 || control == 1)
            throw Error(ErrorKind::InvalidPulse, "rotation control must lie outside the qubit span");
        std::get<QubitVector>(u).validate();
        std::get<QubitVector>(v).validate();
    }
}

void GlobalLevelSwap::validate(const SchemeMode& mode) const {
    if (x < 0 || x >= mode.levels || y < 0 || y >= mode.levels)
        throw Error(ErrorKind::InvalidPulse, "swap level out of range");
    if (x == y) throw Error(ErrorKind::InvalidPulse, "swap levels must differ");
}

void validate_pulse(const Pulse& pulse, const SchemeMode& mode) {
    std::visit([&](const auto& p) { p.validate(mode); }, pulse);
}

bool pulse_touches_level(const Pulse& pulse, int level) {
    if (const auto* sw = std::get_if<GlobalLevelSwap>(&pulse)) return sw->x == level || sw->y == level;
    const auto& ce = std::get<ControlledExchange>(pulse);
    if (ce.is_basis()) return std::get<int>(ce.u) == level || std::get<int>(ce.v) == level;
    return level == 0 || level == 1;
}

void PulseProgram::validate() const {
    mode.validate();
    for (const auto& p : pulses) validate_pulse(p, mode);
}

std::vector<int> site_activation(const BasisString& s, const ControlledExchange& pulse,
                                 const LatticeConfig& config) {
    validate_basis_string(s, config);
    pulse.validate(config.mode);
    char cc = static_cast<char>('0' + pulse.control);
    std::vector<int> k(static_cast<size_t>(config.m));
    for (int i = 0; i < config.m; ++i) k[static_cast<size_t>(i)] = neighbor_count(s, i, cc, config);
    return k;
}

namespace {

SparseState apply_level_swap(const SparseState& state, const GlobalLevelSwap& sw) {
    char cx = static_cast<char>('0' + sw.x);
    char cy = static_cast<char>('0' + sw.y);
    SparseState out{state.config, {}};
    out.amps.reserve(state.amps.size());
    for (const auto& [s, a] : state.amps) {
        BasisString t = s;
        for (char& c : t) {
            if (c == cx)
                c = cy;
            else if (c == cy)
                c = cx;
        }
        out.amps.emplace(std::move(t), a);
    }
    return out;
}

SparseState apply_controlled_exchange(const SparseState& state, const ControlledExchange& ce) {
    const SpanAction act = make_span_action(ce);
    char cc = static_cast<char>('0' + ce.control);
    const LatticeConfig& config = state.config;
    SparseState out{config, {}};
    out.amps.reserve(state.amps.size() * 2);

    std::vector<std::pair<BasisString, cplx>> branch, next;
    for (const auto& [s, a] : state.amps) {
        branch.clear();
        branch.emplace_back(s, a);
        for (int site = 0; site < config.m; ++site) {
            int lvl = level_at(s, site);
            if (!act.in_span(lvl)) continue;
            int k = neighbor_count(s, site, cc, config);
            if (k == 0) continue;
            if (act.scalar) {
                const cplx& ph = (k == 1) ? act.phase1 : act.phase2;
                for (auto& [t, b] : branch) b *= ph;
                continue;
            }
            const Mat2& mat = (k == 1) ? act.m1 : act.m2;
            next.clear();
            for (const auto& [t, b] : branch) {
                int j = act.span_index(level_at(t, site));
                for (int i2 = 0; i2 < 2; ++i2) {
                    cplx coef = mat[static_cast<size_t>(i2 * 2 + j)];
                    if (std::abs(coef) < kAmplitudeCutoff) continue;
                    BasisString t2 = t;
                    set_level(t2, site, act.span_levels[static_cast<size_t>(i2)]);
                    next.emplace_back(std::move(t2), b * coef);
                }
            }
            branch.swap(next);
        }
        for (auto& [t, b] : branch) out.amps[t] += b;
    }
    out.prune();
    return out;
}

}  // namespace

SparseState apply_pulse(const SparseState& state, const Pulse& pulse) {
    validate_pulse(pulse, state.config.mode);
    if (const auto* sw = std::get_if<GlobalLevelSwap>(&pulse)) return apply_level_swap(state, *sw);
    return apply_controlled_exchange(state, std::get<ControlledExchange>(pulse));
}

SparseState apply_program(const SparseState& state, const PulseProgram& program) {
    if (!(program.mode == state.config.mode))
        throw Error(ErrorKind::ModeMismatch, "program and state disagree on the level scheme");
    SparseState cur = state;
    for (const auto& p : program.pulses) cur = apply_pulse(cur, p);
    return cur;
}

PulseProgram invert(const PulseProgram& program) {
    PulseProgram inv;
    inv.mode = program.mode;
    inv.name = program.name.empty() ? "" : program.name + "_inverse";
    inv.pulses.reserve(program.pulses.size());
    for (auto it = program.pulses.rbegin(); it != program.pulses.rend(); ++it) {
        if (const auto* ce = std::get_if<ControlledExchange>(&*it)) {
            ControlledExchange neg = *ce;
            neg.angle = -neg.angle;
            inv.pulses.emplace_back(neg);
        } else {
            inv.pulses.emplace_back(*it);
        }
    }
    return inv;
}

namespace {

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string pulse_to_text(const Pulse& pulse) {
    if (const auto* sw = std::get_if<GlobalLevelSwap>(&pulse))
        return "SW " + std::to_string(sw->x) + " " + std::to_string(sw->y);
    const auto& ce = std::get<ControlledExchange>(pulse);
    if (ce.is_basis()) {
        double mag = std::abs(ce.angle);
        if (std::abs(mag - kHalfPi) > 1e-12)
            throw Error(ErrorKind::InvalidPulse, "LX lines carry only angles of +-pi/2");
        return "LX " + std::to_string(ce.control) + " " + std::to_string(std::get<int>(ce.u)) +
               " " + std::to_string(std::get<int>(ce.v)) + (ce.angle > 0 ? " +" : " -");
    }
    if (ce.control != 3)
        throw Error(ErrorKind::InvalidPulse, "ROT lines are control-3 rotations");
    const auto& u = std::get<QubitVector>(ce.u);
    const auto& v = std::get<QubitVector>(ce.v);
    std::string out = "ROT " + fmt_real(ce.angle);
    for (const cplx& c : {u.c0, u.c1, v.c0, v.c1}) {
        out += " " + fmt_real(c.real()) + " " + fmt_real(c.imag());
    }
    return out;
}

std::string program_to_text(const PulseProgram& program) {
    std::string out;
    if (!program.name.empty()) out += "# " + program.name + "\n";
    for (const auto& p : program.pulses) out += pulse_to_text(p) + "\n";
    return out;
}

PulseProgram parse_pulse_program(const std::string& text, const SchemeMode& mode) {
    PulseProgram program;
    program.mode = mode;
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
        if (op == "LX") {
            int x, a, b;
            std::string sign;
            if (!(ls >> x >> a >> b >> sign) || (sign != "+" && sign != "-"))
                fail("expected 'LX <x> <a> <b> <+|->'");
            program.pulses.emplace_back(
                ControlledExchange::basis(x, a, b, sign == "+" ? kHalfPi : -kHalfPi));
        } else if (op == "ROT") {
            double t;
            double r[8];
            if (!(ls >> t >> r[0] >> r[1] >> r[2] >> r[3] >> r[4] >> r[5] >> r[6] >> r[7]))
                fail("expected 'ROT <t> <8 reals>'");
            QubitVector u{{r[0], r[1]}, {r[2], r[3]}};
            QubitVector v{{r[4], r[5]}, {r[6], r[7]}};
            program.pulses.emplace_back(ControlledExchange::rotation(3, u, v, t));
        } else if (op == "SW") {
            int x, y;
            if (!(ls >> x >> y)) fail("expected 'SW <x> <y>'");
            program.pulses.emplace_back(GlobalLevelSwap{x, y});
        } else {
            fail("unknown pulse '" + op + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        try {
            validate_pulse(program.pulses.back(), mode);
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    return program;
}

}  // namespace tiqca
