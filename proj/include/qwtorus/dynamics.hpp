#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qwtorus/gibbs.hpp"
#include "qwtorus/lattice.hpp"

namespace qwtorus {

enum class FamilyDirection : std::uint8_t { up, down };

// Chain of vertically aligned particles: root first, then successive
// up-right neighbors with F = 0 (direction up) or down-left neighbors with
// C = 0 (direction down).  In a proper sector |members| <= N-1.
struct Family {
    ParticleRef root;
    FamilyDirection direction = FamilyDirection::up;
    std::vector<ParticleRef> members;

    const ParticleRef& extreme() const { return members.back(); }
    int size() const { return static_cast<int>(members.size()); }
};

// Follows F = 0 edges upward (resp. C = 0 downward) from p until the chain
// stops.  A chain of length N would be a loop, impossible in a proper
// sector; it raises consistency_error.
Family family_up(const Configuration& config, ParticleRef p);
Family family_down(const Configuration& config, ParticleRef p);

// Jump rate of particle p: a_{r(p)} (1-q^{B_p})(1-q^{D_p+1})/(1-q^{C_p+1}),
// with q^0 = 1 so that B_p = 0 gives rate 0 for every q including q = 0.
template <class S>
S rate(const Configuration& config, ParticleRef p, const GibbsParams<S>& params) {
    NeighborFrame f = neighbor_frame(config, p);
    if (f.B == 0) return S(0);
    return params.a[p.row] * (S(1) - qpow(params.q, f.B)) * (S(1) - qpow(params.q, f.D + 1)) /
           (S(1) - qpow(params.q, f.C + 1));
}

// Shifts every member of an up-family one step right.  The contract
// requires the root's rate to be positive (B_root >= 1).
Configuration apply_move(const Configuration& config, const Family& family);

template <class S>
struct Move {
    Family family;
    S rate;
    Configuration successor;
};

// One candidate per particle with positive rate; successors stay in the
// sector of config.
template <class S>
std::vector<Move<S>> enabled_moves(const Configuration& config, const GibbsParams<S>& params) {
    std::vector<Move<S>> moves;
    for (int r = 0; r < config.N(); ++r)
        for (int k = 0; k < config.m1(); ++k) {
            ParticleRef p{r, k};
            S rt = rate(config, p, params);
            if (!(rt > S(0))) continue;
            Family fam = family_up(config, p);
            moves.push_back({fam, std::move(rt), apply_move(config, fam)});
        }
    return moves;
}

template <class S>
struct ReverseMove {
    Configuration predecessor; // eta_p: V^-_p shifted one step left
    S rate;                    // L(eta_p, eta), the rate of the move back
    Family family;             // V^-_p inside eta
};

// All predecessors eta_p of eta: for each particle p, shift V^-_p left by
// one; keep it when the result is a valid configuration whose forward
// family move returns exactly to eta.  The rate follows the closed form in
// the frames of eta read at the lowest member.
template <class S>
std::vector<ReverseMove<S>> reverse_moves(const Configuration& config, const GibbsParams<S>& params) {
    std::vector<ReverseMove<S>> out;
    for (int r = 0; r < config.N(); ++r)
        for (int k = 0; k < config.m1(); ++k) {
            ParticleRef p{r, k};
            Family fam = family_down(config, p);
            // Any member with its left neighbor adjacent cannot shift left.
            bool blocked = false;
            for (const ParticleRef& m : fam.members)
                if (neighbor_frame(config, m).D == 0) { blocked = true; break; }
            if (blocked) continue;
            Configuration pred = config.shifted(fam.members, -1);
            if (!validate(pred)) continue;
            // Forward family of the shifted root must be exactly the shifted
            // members; a longer chain means the forward move overshoots eta.
            Family fwd = family_up(pred, fam.extreme());
            if (fwd.size() != fam.size()) continue;
            NeighborFrame low = neighbor_frame(config, fam.extreme());
            S rt = params.a[fam.extreme().row] * (S(1) - qpow(params.q, low.B + 1)) *
                   (S(1) - qpow(params.q, low.D)) / (S(1) - qpow(params.q, low.C));
            out.push_back({std::move(pred), std::move(rt), std::move(fam)});
        }
    return out;
}

// Sparse rate matrix over an enumerated sector, rows summing to zero.
template <class S>
struct Generator {
    std::vector<std::map<int, S>> off; // off[i][j] = L(i, j), i != j
    std::vector<S> diagonal;

    std::size_t size() const { return diagonal.size(); }

    S row_sum(std::size_t i) const {
        S s = diagonal[i];
        for (const auto& [j, v] : off[i]) s += v;
        return s;
    }

    // pi * L as a dense vector.
    std::vector<S> left_apply(const std::vector<S>& pi) const {
        std::vector<S> res(size(), S(0));
        for (std::size_t i = 0; i < size(); ++i) {
            res[i] += pi[i] * diagonal[i];
            for (const auto& [j, v] : off[i]) res[j] += pi[i] * v;
        }
        return res;
    }
};

template <class S>
Generator<S> build_generator(const std::vector<Configuration>& states, const GibbsParams<S>& params,
                             int threads = 1) {
    if (states.empty()) throw structural_error("build_generator: empty state list");
    std::unordered_map<std::vector<std::uint64_t>, int, OccupationHash> index;
    index.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].occupation(), static_cast<int>(i));

    Generator<S> gen;
    gen.off.resize(states.size());
    gen.diagonal.assign(states.size(), S(0));
    detail::parallel_apply(states.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (auto& mv : enabled_moves(states[i], params)) {
                auto it = index.find(mv.successor.occupation());
                if (it == index.end())
                    throw consistency_error("build_generator: successor escapes the enumerated sector");
                auto [pos, fresh] = gen.off[i].emplace(it->second, mv.rate);
                if (!fresh)
                    throw consistency_error("build_generator: two families lead to the same successor");
            }
            S s(0);
            for (const auto& [j, v] : gen.off[i]) s += v;
            gen.diagonal[i] = -s;
        }
    });
    return gen;
}

struct TrajectoryEvent {
    double time;
    ParticleRef root;
    int family_size;
};

struct Trajectory {
    explicit Trajectory(Configuration final_state) : final_config(std::move(final_state)) {}

    std::uint64_t seed = 0;
    double t_end = 0;
    std::uint64_t event_count = 0;
    std::vector<TrajectoryEvent> events;                     // empty unless recorded
    std::unordered_map<std::string, double> occupation_time; // keyed by occupation hex
    Configuration final_config;
};

struct SimulateOptions {
    double t_max = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_events = 0; // 0 = unbounded
    bool record_events = false;
    bool track_occupation = true;
    // Called after each applied move with the new configuration.
    std::function<void(const Configuration&, const TrajectoryEvent&)> observer;
};

// Exact continuous-time sampling: exponential holding time at total rate R,
// move picked proportionally to its rate.  Deterministic for a fixed seed;
// the uniform variates come from mt19937_64 via (x >> 11) * 2^-53.
Trajectory simulate(const Configuration& init, const GibbsParams<double>& params,
                    const SimulateOptions& options);

Trajectory simulate(const Configuration& init, const GibbsParams<double>& params, double t_max,
                    std::uint64_t seed);

} // namespace qwtorus
