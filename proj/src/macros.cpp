#include "tiqca/macros.hpp"

#include <string_view>

namespace tiqca {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

Pulse lx(int x, int a, int b) { return ControlledExchange::basis(x, a, b, kHalfPi); }

}  // namespace

const char* macro_name_str(MacroName name) {
    switch (name) {
        case MacroName::PointerCreate: return "POINTER_CREATE";
        case MacroName::StepRight: return "STEP_RIGHT";
        case MacroName::StepLeft: return "STEP_LEFT";
        case MacroName::CnotSrcLeft: return "CNOT_SRC_LEFT";
        case MacroName::CnotSrcRight: return "CNOT_SRC_RIGHT";
        case MacroName::MeasurePrep: return "MEASURE_PREP";
    }
    return "?";
}

MacroName macro_name_from_str(const std::string& s) {
    for (MacroName name : {MacroName::PointerCreate, MacroName::StepRight, MacroName::StepLeft,
                           MacroName::CnotSrcLeft, MacroName::CnotSrcRight, MacroName::MeasurePrep}) {
        if (s == macro_name_str(name)) return name;
    }
    throw Error(ErrorKind::ParseError, "unknown macro '" + s + "'");
}

PulseProgram macro_program(MacroName name, const SchemeMode& mode) {
    mode.validate();
    PulseProgram p;
    p.mode = mode;
    p.name = macro_name_str(name);
    switch (name) {
        case MacroName::PointerCreate: {
            int w = mode.wall_level;
            p.pulses = {lx(w, 0, 2), lx(2, 0, 3), lx(3, 2, 4), lx(w, 0, 2), lx(3, 2, 4)};
            return p;
        }
        case MacroName::StepRight:
            p.pulses = {lx(0, 3, 4), lx(4, 0, 2), lx(0, 4, 3), lx(1, 3, 4),
                        lx(4, 1, 2), lx(1, 4, 3), GlobalLevelSwap{2, 3}};
            return p;
        case MacroName::StepLeft: {
            PulseProgram right = macro_program(MacroName::StepRight, mode);
            p.pulses = invert(right).pulses;
            return p;
        }
        case MacroName::CnotSrcLeft:
            // Source is the qubit next to the pointer's 2, target next to the 3.
            p.pulses = {lx(0, 2, 4), lx(4, 3, 2), lx(2, 1, 0), lx(4, 3, 2), lx(2, 1, 0), lx(0, 2, 4)};
            return p;
        case MacroName::CnotSrcRight:
            // Same sequence with the roles of levels 2 and 3 exchanged.
            p.pulses = {lx(0, 3, 4), lx(4, 2, 3), lx(3, 1, 0), lx(4, 2, 3), lx(3, 1, 0), lx(0, 3, 4)};
            return p;
        case MacroName::MeasurePrep:
            p.pulses = {lx(3, 1, 4)};
            return p;
    }
    throw Error(ErrorKind::ParseError, "unknown macro");
}

PointerCensus pointer_census_range(const BasisString& s, const SchemeMode& mode, int start, int length) {
    PointerCensus census;
    int end = start + length;
    char wall = static_cast<char>('0' + mode.wall_level);
    for (int i = start; i < end; ++i) {
        if (s[static_cast<size_t>(i)] == wall) census.wall_positions.push_back(i);
        if (i + 1 < end) {
            char a = s[static_cast<size_t>(i)], b = s[static_cast<size_t>(i + 1)];
            if (a == '2' && b == '3') ++census.right_pointers;
            if (a == '3' && b == '2') ++census.left_pointers;
        }
        if (i + 4 < end) {
            std::string_view w(&s[static_cast<size_t>(i)], 5);
            if (w == "04040" || w == "14141") ++census.inactive_pairs;
        }
    }
    return census;
}

PointerCensus pointer_census(const BasisString& s, const SchemeMode& mode) {
    return pointer_census_range(s, mode, 0, static_cast<int>(s.size()));
}

std::vector<std::pair<int, int>> partition_split(const BasisString& s, const SchemeMode& mode,
                                                 Boundary boundary) {
    char wall = static_cast<char>('0' + mode.wall_level);
    int m = static_cast<int>(s.size());
    std::vector<std::pair<int, int>> runs;
    int i = 0;
    while (i < m) {
        if (s[static_cast<size_t>(i)] == wall) {
            ++i;
            continue;
        }
        int start = i;
        while (i < m && s[static_cast<size_t>(i)] != wall) ++i;
        runs.emplace_back(start, i - start);
    }
    // Wraparound: a run touching both ends is one partition.
    if (boundary == Boundary::Periodic && runs.size() >= 2 && runs.front().first == 0 &&
        runs.back().first + runs.back().second == m) {
        runs.back().second += runs.front().second;
        runs.erase(runs.begin());
    }
    return runs;
}

SparseState create_pointers(const SparseState& state) {
    return apply_program(state, macro_program(MacroName::PointerCreate, state.config.mode));
}

}  // namespace tiqca
