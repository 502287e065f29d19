#pragma once

#include "tiqca/pulse.hpp"

namespace tiqca {

/// The named pulse sequences of the scheme. Macros are data: fixed pulse
/// lists that can be serialized, inverted and audited like any program.
enum class MacroName {
    PointerCreate,
    StepRight,
    StepLeft,
    CnotSrcLeft,
    CnotSrcRight,
    MeasurePrep,
};

const char* macro_name_str(MacroName name);
MacroName macro_name_from_str(const std::string& s);

PulseProgram macro_program(MacroName name, const SchemeMode& mode);

/// Syntactic pointer inventory of one basis string: active pointer patterns
/// "23" / "32", the inactive crossing patterns "04040" / "14141" (each worth
/// a pointer pair), and wall positions.
struct PointerCensus {
    int right_pointers = 0;  // "23", addresses qubits to its right
    int left_pointers = 0;   // "32", addresses qubits to its left
    int inactive_pairs = 0;  // "04040" or "14141"
    std::vector<int> wall_positions;

    int total_pointers() const { return right_pointers + left_pointers + 2 * inactive_pairs; }
    bool operator==(const PointerCensus&) const = default;
};

PointerCensus pointer_census(const BasisString& s, const SchemeMode& mode);

/// Census restricted to the window [start, start+length).
PointerCensus pointer_census_range(const BasisString& s, const SchemeMode& mode, int start, int length);

/// Maximal wall-free runs as (start, length). Under periodic boundary the
/// runs touching both ends merge into one wraparound run.
std::vector<std::pair<int, int>> partition_split(const BasisString& s, const SchemeMode& mode,
                                                 Boundary boundary);

/// Applies the pointer-creation sequence for the state's mode.
SparseState create_pointers(const SparseState& state);

}  // namespace tiqca
