#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tiqca/lattice.hpp"

namespace tiqca {

/// A state in span{|0>,|1>}, the qubit subspace of a site.
struct QubitVector {
    cplx c0{0.0, 0.0};
    cplx c1{0.0, 0.0};

    double norm_sq() const { return std::norm(c0) + std::norm(c1); }
    void validate() const;
    bool operator==(const QubitVector&) const = default;
};

/// Exchange target of a controlled pulse: either a bare level or a qubit
/// vector (the latter restricted to span{|0>,|1>}).
using ExchangeTarget = std::variant<int, QubitVector>;

/// Global translation- and reflection-invariant pulse e^{iHt} built from the
/// next-neighbor generator |control,u><control,v| + h.c. (plus reflection).
/// Every site evolves by e^{i*t*k*A} with A = |u><v| + |v><u| and k the
/// number of control-level neighbors.
struct ControlledExchange {
    int control = 0;
    ExchangeTarget u;
    ExchangeTarget v;
    double angle = 0.0;

    bool is_basis() const { return std::holds_alternative<int>(u); }
    void validate(const SchemeMode& mode) const;
    bool operator==(const ControlledExchange&) const = default;

    static ControlledExchange basis(int control, int a, int b, double angle) {
        return ControlledExchange{control, a, b, angle};
    }
    static ControlledExchange rotation(int control, QubitVector u, QubitVector v, double angle) {
        return ControlledExchange{control, u, v, angle};
    }
};

/// Exchanges levels x and y at every site of the lattice.
struct GlobalLevelSwap {
    int x = 0;
    int y = 0;

    void validate(const SchemeMode& mode) const;
    bool operator==(const GlobalLevelSwap&) const = default;
};

using Pulse = std::variant<ControlledExchange, GlobalLevelSwap>;

void validate_pulse(const Pulse& pulse, const SchemeMode& mode);
bool pulse_touches_level(const Pulse& pulse, int level);

struct PulseProgram {
    std::vector<Pulse> pulses;
    std::string name;
    SchemeMode mode = SchemeMode::six();

    void validate() const;
};

/// Number of control-level neighbors (0, 1 or 2) of every site. Open
/// boundaries contribute nothing for the missing neighbor.
std::vector<int> site_activation(const BasisString& s, const ControlledExchange& pulse,
                                 const LatticeConfig& config);

SparseState apply_pulse(const SparseState& state, const Pulse& pulse);
SparseState apply_program(const SparseState& state, const PulseProgram& program);

/// Reversed order with negated exchange angles; level swaps are self-inverse.
PulseProgram invert(const PulseProgram& program);

// --- Pulse program text format ---------------------------------------------
// LX <x> <a> <b> <+|->                         basis exchange, angle +-pi/2
// ROT <t> <8 reals: re/im of u0,u1,v0,v1>      control-3 rotation, angle t
// SW <x> <y>                                   global level swap
// '#' starts a comment.

std::string pulse_to_text(const Pulse& pulse);
std::string program_to_text(const PulseProgram& program);
PulseProgram parse_pulse_program(const std::string& text, const SchemeMode& mode);

}  // namespace tiqca
