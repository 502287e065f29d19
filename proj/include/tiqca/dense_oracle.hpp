#pragma once

#include "tiqca/pulse.hpp"

namespace tiqca {

/// Ground-truth pulse action: assembles the next-neighbor Hamiltonian
/// sum_i (|x,u><x,v| + |x,v><x,u| + reflection) over neighboring pairs and
/// applies exp(i*H*t) by a scaled Taylor expansion of the matrix action.
/// Never uses the per-site activation rule.
DenseState apply_pulse_dense(const DenseState& state, const Pulse& pulse);

/// Third cross-check variant: the two staggered layers of two-site unitaries
/// exp(i*h*t), even pairs then odd pairs. Requires an even site count under
/// periodic boundary.
DenseState apply_pulse_dense_staggered(const DenseState& state, const ControlledExchange& pulse);

}  // namespace tiqca
