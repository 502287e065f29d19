#include "tiqca/dense_oracle.hpp"

#include <array>
#include <cmath>

namespace tiqca {

namespace {

struct Coupling {
    // One 2x2 Hermitian generator block acting between two levels (or on a
    // single level when lo == hi, where the diagonal weight applies).
    std::array<int, 2> levels{-1, -1};
    int size = 0;
    std::array<cplx, 4> a{};  // row-major, a[i*2+j] = <levels[i]| A |levels[j]>
};

Coupling coupling_of(const ControlledExchange& ce) {
    Coupling c;
    if (ce.is_basis()) {
        int u = std::get<int>(ce.u);
        int v = std::get<int>(ce.v);
        if (u == v) {
            c.levels = {u, -1};
            c.size = 1;
            c.a[0] = 2.0;  // A = 2|u><u|
            return c;
        }
        c.levels = {u, v};
        c.size = 2;
        c.a = {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        return c;
    }
    const auto& u = std::get<QubitVector>(ce.u);
    const auto& v = std::get<QubitVector>(ce.v);
    c.levels = {0, 1};
    c.size = 2;
    c.a[0] = u.c0 * std::conj(v.c0) + v.c0 * std::conj(u.c0);
    c.a[1] = u.c0 * std::conj(v.c1) + v.c0 * std::conj(u.c1);
    c.a[2] = u.c1 * std::conj(v.c0) + v.c1 * std::conj(u.c0);
    c.a[3] = u.c1 * std::conj(v.c1) + v.c1 * std::conj(u.c1);
    return c;
}

struct Triplet {
    std::int64_t row;
    std::int64_t col;
    cplx val;
};

std::vector<std::pair<int, int>> neighbor_pairs(const LatticeConfig& config) {
    std::vector<std::pair<int, int>> pairs;
    int last = config.boundary == Boundary::Periodic ? config.m : config.m - 1;
    for (int i = 0; i < last; ++i) pairs.emplace_back(i, (i + 1) % config.m);
    return pairs;
}

/// Sparse COO assembly of H = sum over pairs of
/// P_control (x) A + A (x) P_control.
std::vector<Triplet> assemble_hamiltonian(const ControlledExchange& ce, const LatticeConfig& config) {
    std::int64_t dim = dense_dimension(config);
    int d = config.mode.levels;
    int m = config.m;
    Coupling cp = coupling_of(ce);

    std::vector<std::int64_t> stride(static_cast<size_t>(m));
    stride[static_cast<size_t>(m - 1)] = 1;
    for (int i = m - 2; i >= 0; --i) stride[static_cast<size_t>(i)] = stride[static_cast<size_t>(i) + 1] * d;

    auto level_of = [&](std::int64_t idx, int site) {
        return static_cast<int>((idx / stride[static_cast<size_t>(site)]) % d);
    };

    std::vector<Triplet> trips;
    for (const auto& [pi, pj] : neighbor_pairs(config)) {
        for (std::int64_t idx = 0; idx < dim; ++idx) {
            int li = level_of(idx, pi);
            int lj = level_of(idx, pj);
            // P_control on site pi, A on site pj.
            if (li == ce.control) {
                for (int sj = 0; sj < cp.size; ++sj) {
                    if (cp.levels[static_cast<size_t>(sj)] != lj) continue;
                    for (int si = 0; si < cp.size; ++si) {
                        cplx val = cp.a[static_cast<size_t>(si * 2 + sj)];
                        if (val == cplx{0.0, 0.0}) continue;
                        std::int64_t row =
                            idx + (cp.levels[static_cast<size_t>(si)] - lj) * stride[static_cast<size_t>(pj)];
                        trips.push_back({row, idx, val});
                    }
                }
            }
            // A on site pi, P_control on site pj.
            if (lj == ce.control) {
                for (int sj = 0; sj < cp.size; ++sj) {
                    if (cp.levels[static_cast<size_t>(sj)] != li) continue;
                    for (int si = 0; si < cp.size; ++si) {
                        cplx val = cp.a[static_cast<size_t>(si * 2 + sj)];
                        if (val == cplx{0.0, 0.0}) continue;
                        std::int64_t row =
                            idx + (cp.levels[static_cast<size_t>(si)] - li) * stride[static_cast<size_t>(pi)];
                        trips.push_back({row, idx, val});
                    }
                }
            }
        }
    }
    return trips;
}

void matvec(const std::vector<Triplet>& h, const std::vector<cplx>& x, std::vector<cplx>& y) {
    std::fill(y.begin(), y.end(), cplx{0.0, 0.0});
    for (const auto& t : h) y[static_cast<size_t>(t.row)] += t.val * x[static_cast<size_t>(t.col)];
}

/// y = exp(i*theta*H) x via repeated short Taylor sums: theta is split into
/// substeps with ||H * sub|| <= 1 so 25 series terms reach machine floor.
void taylor_exp_apply(const std::vector<Triplet>& h, double theta, double norm_bound,
                      std::vector<cplx>& x) {
    if (theta == 0.0) return;
    int steps = 1;
    double scaled = std::abs(theta) * norm_bound;
    while (scaled > 1.0 && steps < (1 << 24)) {
        scaled *= 0.5;
        steps *= 2;
    }
    double sub = theta / steps;
    std::vector<cplx> term(x.size()), tmp(x.size());
    for (int s = 0; s < steps; ++s) {
        term = x;
        for (int k = 1; k <= 25; ++k) {
            matvec(h, term, tmp);
            cplx factor = cplx{0.0, sub} / static_cast<double>(k);
            for (size_t i = 0; i < x.size(); ++i) {
                term[i] = factor * tmp[i];
                x[i] += term[i];
            }
        }
    }
}

DenseState apply_swap_dense(const DenseState& state, const GlobalLevelSwap& sw) {
    const LatticeConfig& config = state.config;
    int d = config.mode.levels;
    int m = config.m;
    DenseState out{config, std::vector<cplx>(state.v.size(), cplx{0.0, 0.0})};
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(state.v.size()); ++idx) {
        if (state.v[static_cast<size_t>(idx)] == cplx{0.0, 0.0}) continue;
        std::int64_t rem = idx;
        std::int64_t jdx = 0;
        std::int64_t place = 1;
        for (int i = 0; i < m; ++i) {
            int lvl = static_cast<int>(rem % d);
            rem /= d;
            if (lvl == sw.x)
                lvl = sw.y;
            else if (lvl == sw.y)
                lvl = sw.x;
            jdx += lvl * place;
            place *= d;
        }
        out.v[static_cast<size_t>(jdx)] = state.v[static_cast<size_t>(idx)];
    }
    return out;
}

}  // namespace

DenseState apply_pulse_dense(const DenseState& state, const Pulse& pulse) {
    state.config.validate();
    validate_pulse(pulse, state.config.mode);
    dense_dimension(state.config);
    if (const auto* sw = std::get_if<GlobalLevelSwap>(&pulse)) return apply_swap_dense(state, *sw);
    const auto& ce = std::get<ControlledExchange>(pulse);
    auto h = assemble_hamiltonian(ce, state.config);
    // ||H|| <= #pairs * 2 * ||A||, ||A|| <= 2 for any admitted pair.
    double bound = 4.0 * static_cast<double>(neighbor_pairs(state.config).size());
    DenseState out = state;
    taylor_exp_apply(h, ce.angle, bound, out.v);
    return out;
}

DenseState apply_pulse_dense_staggered(const DenseState& state, const ControlledExchange& pulse) {
    const LatticeConfig& config = state.config;
    config.validate();
    pulse.validate(config.mode);
    if (config.boundary == Boundary::Periodic && config.m % 2 != 0)
        throw Error(ErrorKind::InvalidConfig, "staggered layers need an even periodic lattice");

    int d = config.mode.levels;
    int m = config.m;
    Coupling cp = coupling_of(pulse);
    std::vector<std::int64_t> stride(static_cast<size_t>(m));
    stride[static_cast<size_t>(m - 1)] = 1;
    for (int i = m - 2; i >= 0; --i) stride[static_cast<size_t>(i)] = stride[static_cast<size_t>(i) + 1] * d;

    // Two-site exp(i*h*t): when one pair site holds the control, the partner
    // evolves by the single-site block exponential. Computed via the same
    // Pauli closed form as a 2x2 (or scalar) exponential.
    cplx phase1 = std::polar(1.0, 2.0 * pulse.angle);
    std::array<cplx, 4> mat{};
    if (cp.size == 2) {
        double c = 0.5 * (cp.a[0].real() + cp.a[3].real());
        double wz = 0.5 * (cp.a[0].real() - cp.a[3].real());
        double wx = cp.a[1].real();
        double wy = -cp.a[1].imag();
        double wn = std::sqrt(wx * wx + wy * wy + wz * wz);
        cplx ph = std::polar(1.0, pulse.angle * c);
        if (wn < 1e-300) {
            mat = {ph, 0.0, 0.0, ph};
        } else {
            double ct = std::cos(pulse.angle * wn);
            double st = std::sin(pulse.angle * wn);
            cplx is{0.0, st};
            mat[0] = ph * (ct + is * (wz / wn));
            mat[3] = ph * (ct - is * (wz / wn));
            mat[1] = ph * is * cplx{wx / wn, -wy / wn};
            mat[2] = ph * is * cplx{wx / wn, wy / wn};
        }
    }

    auto level_of = [&](std::int64_t idx, int site) {
        return static_cast<int>((idx / stride[static_cast<size_t>(site)]) % d);
    };

    auto apply_pair = [&](std::vector<cplx>& v, int pi, int pj) {
        // Mix the partner site wherever the other site holds the control.
        auto mix = [&](int ctrl_site, int part_site) {
            std::int64_t ps = stride[static_cast<size_t>(part_site)];
            for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(v.size()); ++idx) {
                if (level_of(idx, ctrl_site) != pulse.control) continue;
                int lp = level_of(idx, part_site);
                if (cp.size == 1) {
                    if (lp == cp.levels[0]) v[static_cast<size_t>(idx)] *= phase1;
                    continue;
                }
                if (lp != cp.levels[0]) continue;  // visit each doublet once
                std::int64_t other = idx + (cp.levels[1] - cp.levels[0]) * ps;
                cplx a0 = v[static_cast<size_t>(idx)];
                cplx a1 = v[static_cast<size_t>(other)];
                v[static_cast<size_t>(idx)] = mat[0] * a0 + mat[1] * a1;
                v[static_cast<size_t>(other)] = mat[2] * a0 + mat[3] * a1;
            }
        };
        mix(pi, pj);
        mix(pj, pi);
    };

    DenseState out = state;
    for (int layer = 0; layer < 2; ++layer) {
        for (int i = layer; i + 1 <= m - 1 + (config.boundary == Boundary::Periodic ? 1 : 0); i += 2) {
            if (i >= m) break;
            int j = i + 1;
            if (j == m) {
                if (config.boundary != Boundary::Periodic) break;
                j = 0;
            }
            apply_pair(out.v, i, j);
        }
    }
    return out;
}

}  // namespace tiqca
