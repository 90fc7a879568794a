#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qwtorus/dynamics.hpp"
#include "qwtorus/enumeration.hpp"
#include "qwtorus/gibbs.hpp"

namespace qwtorus {

// Total exit rate: S1 = sum_p a_{r(p)} (1-q^{B_p})(1-q^{D_p+1})/(1-q^{C_p+1}).
template <class S>
S s1(const Configuration& config, const GibbsParams<S>& params) {
    S sum(0);
    for (int r = 0; r < config.N(); ++r)
        for (int k = 0; k < config.m1(); ++k) sum += rate(config, {r, k}, params);
    return sum;
}

// Total entry rate: S2 = sum_p a_{r(p)+1} (1-q^{A_p+1})(1-q^{E_p})/(1-q^{F_p+1}),
// the row index wrapping N -> 1.
template <class S>
S s2(const Configuration& config, const GibbsParams<S>& params) {
    S sum(0);
    const int N = config.N();
    for (int r = 0; r < N; ++r)
        for (int k = 0; k < config.m1(); ++k) {
            NeighborFrame f = neighbor_frame(config, {r, k});
            if (f.E == 0) continue;
            sum += params.a[(r + 1) % N] * (S(1) - qpow(params.q, f.A + 1)) *
                   (S(1) - qpow(params.q, f.E)) / (S(1) - qpow(params.q, f.F + 1));
        }
    return sum;
}

// One per-particle balance identity: the reverse move through p carries
// exactly the p-term of S2.
//   lhs = [pi(eta_p)/pi(eta)] * L(eta_p, eta)   (weight ratio by its definition)
//   rhs = a_{r(p)+1} (1-q^{A_p+1})(1-q^{E_p})/(1-q^{F_p+1})
// When eta_p does not exist both sides are zero.
template <class S>
struct BalanceCheck {
    S lhs{}, rhs{};
    bool predecessor_exists = false;
    bool equal = false;
};

template <class S>
BalanceCheck<S> check_balance(const Configuration& config, ParticleRef p, const GibbsParams<S>& params) {
    BalanceCheck<S> out;
    NeighborFrame f = neighbor_frame(config, p);
    out.rhs = f.E == 0 ? S(0)
                       : params.a[(p.row + 1) % config.N()] * (S(1) - qpow(params.q, f.A + 1)) *
                             (S(1) - qpow(params.q, f.E)) / (S(1) - qpow(params.q, f.F + 1));
    out.lhs = S(0);
    Family fam = family_down(config, p);
    bool blocked = false;
    for (const ParticleRef& m : fam.members)
        if (neighbor_frame(config, m).D == 0) { blocked = true; break; }
    if (!blocked) {
        Configuration pred = config.shifted(fam.members, -1);
        if (validate(pred) && family_up(pred, fam.extreme()).size() == fam.size()) {
            out.predecessor_exists = true;
            NeighborFrame low = neighbor_frame(config, fam.extreme());
            S back_rate = params.a[fam.extreme().row] * (S(1) - qpow(params.q, low.B + 1)) *
                          (S(1) - qpow(params.q, low.D)) / (S(1) - qpow(params.q, low.C));
            out.lhs = weight(pred, params) / weight(config, params) * back_rate;
        }
    }
    if constexpr (std::is_same_v<S, Rat>) {
        out.equal = out.lhs == out.rhs;
    } else {
        out.equal = std::abs(out.lhs - out.rhs) <= 1e-12 * (1.0 + std::abs(out.rhs));
    }
    return out;
}

// One evaluation point for the four derivative terms of the invariance
// proof.  Gaps follow the frame constraints B <= A, F <= A, C <= D, E <= D;
// the auxiliary gaps of the right and upper-left neighbors additionally need
// aux_D_p5 >= D - E.
struct FrameSample {
    Rat q;
    long A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
    long aux_B_p1 = 0; // B of the right neighbor p1
    long aux_D_p5 = 0; // D of the upper-left neighbor p5

    void check() const;
};

struct DerivativeTerms {
    Rat s10, s11, s20, s21;
};

// The four terms of d/ds (S1 - S2)/log q after the neighbor-gap
// substitutions, as functions of q, A..F and the two auxiliaries alone.
// S10 - S20 and S11 - S21 vanish identically.
DerivativeTerms derivative_terms(const FrameSample& sample);

FrameSample random_frame_sample(std::mt19937_64& rng, long max_gap, const Rat& q);

template <class S>
struct StationarityReport {
    Sector sector;
    std::size_t states = 0;
    std::vector<S> residual; // (pi * L)(eta) per state, enumeration order
    S max_abs_residual{};
    bool pass = false;
};

// Builds pi and the generator over the enumerated sector and checks
// pi * L = 0, exactly for S = Rat and against `tol` for S = double.  The
// matrix route is cross-checked per state against the reverse-move route
// (incoming mass minus pi * S1); any disagreement raises consistency_error.
// perturb_state >= 0 doubles that state's weight first (negative control).
template <class S>
StationarityReport<S> check_stationarity(const Sector& sector, const GibbsParams<S>& params,
                                         std::uint64_t cap = kDefaultEnumCap, int threads = 1,
                                         int perturb_state = -1, double tol = 1e-12);

// Strong connectivity of the positive-rate transition graph.
template <class S>
bool check_ergodicity(const Sector& sector, const GibbsParams<S>& params,
                      std::uint64_t cap = kDefaultEnumCap);

namespace detail {
bool strongly_connected(const std::vector<std::vector<int>>& adj);
} // namespace detail

// A single particle stepping one site right (a hexagon rotation); the
// particle is identified by its position before the step.
struct SingleMove {
    int row = 0;
    int x = 0;
};

// Constructive ergodicity: the list of single-particle moves transforming
// eta into eta2, found by repeatedly walking from a positive face of the
// relative height to a stuck face and rotating there.  The list length
// equals the total relative height of eta over eta2.
std::vector<SingleMove> connect(const Configuration& eta, const Configuration& eta2);

// Applies connect()-style moves, validating after each step.
Configuration replay_moves(const Configuration& eta, const std::vector<SingleMove>& moves);

// ---- implementation ----

template <class S>
StationarityReport<S> check_stationarity(const Sector& sector, const GibbsParams<S>& params,
                                         std::uint64_t cap, int threads, int perturb_state, double tol) {
    std::vector<Configuration> states = enumerate_sector(sector, cap);
    if (states.empty()) throw sector_error("check_stationarity: sector is empty");

    std::vector<S> pi(states.size());
    {
        std::vector<S> w(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) w[i] = weight(states[i], params);
        if (perturb_state >= 0) {
            if (static_cast<std::size_t>(perturb_state) >= states.size())
                throw structural_error("perturb_state out of range");
            w[perturb_state] *= S(2);
        }
        S z(0);
        for (const S& wi : w) z += wi;
        for (std::size_t i = 0; i < states.size(); ++i) pi[i] = w[i] / z;
    }

    Generator<S> gen = build_generator(states, params, threads);
    StationarityReport<S> report;
    report.sector = sector;
    report.states = states.size();
    report.residual = gen.left_apply(pi);

    // Independent route per state: incoming reverse-move mass minus exit rate.
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, OccupationHash> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].occupation(), i);
    for (std::size_t i = 0; i < states.size(); ++i) {
        S incoming(0);
        for (const auto& rm : reverse_moves(states[i], params)) {
            auto it = index.find(rm.predecessor.occupation());
            if (it == index.end()) throw consistency_error("check_stationarity: predecessor not enumerated");
            incoming += pi[it->second] * rm.rate;
        }
        S alt = incoming - pi[i] * s1(states[i], params);
        if constexpr (std::is_same_v<S, Rat>) {
            if (alt != report.residual[i])
                throw consistency_error("check_stationarity: matrix and reverse-move residuals disagree");
        } else {
            if (std::abs(alt - report.residual[i]) > 1e-9)
                throw consistency_error("check_stationarity: matrix and reverse-move residuals disagree");
        }
    }

    S max_abs(0);
    for (const S& r : report.residual) {
        S v = r < S(0) ? S(-r) : r;
        if (max_abs < v) max_abs = v;
    }
    report.max_abs_residual = max_abs;
    if constexpr (std::is_same_v<S, Rat>) {
        report.pass = max_abs == 0;
    } else {
        report.pass = max_abs < tol;
    }
    return report;
}

template <class S>
bool check_ergodicity(const Sector& sector, const GibbsParams<S>& params, std::uint64_t cap) {
    std::vector<Configuration> states = enumerate_sector(sector, cap);
    if (states.empty()) throw sector_error("check_ergodicity: sector is empty");
    if (states.size() == 1) return true;
    Generator<S> gen = build_generator(states, params);
    std::vector<std::vector<int>> adj(gen.size());
    for (std::size_t i = 0; i < gen.size(); ++i)
        for (const auto& [j, v] : gen.off[i])
            if (v > S(0)) adj[i].push_back(j);
    return detail::strongly_connected(adj);
}

} // namespace qwtorus
