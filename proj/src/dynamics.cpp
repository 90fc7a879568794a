#include "qwtorus/dynamics.hpp"

#include <cmath>
#include <random>

namespace qwtorus {

namespace {

Family follow_chain(const Configuration& config, ParticleRef p, FamilyDirection dir) {
    Family fam;
    fam.root = p;
    fam.direction = dir;
    fam.members.push_back(p);
    for (;;) {
        NeighborFrame f = neighbor_frame(config, fam.members.back());
        if (dir == FamilyDirection::up) {
            if (f.F != 0) break;
            fam.members.push_back(f.p6);
        } else {
            if (f.C != 0) break;
            fam.members.push_back(f.p3);
        }
        if (fam.size() >= config.N())
            throw consistency_error("family chain closed a loop: configuration is not in a proper sector");
    }
    return fam;
}

} // namespace

Family family_up(const Configuration& config, ParticleRef p) {
    return follow_chain(config, p, FamilyDirection::up);
}

Family family_down(const Configuration& config, ParticleRef p) {
    return follow_chain(config, p, FamilyDirection::down);
}

Configuration apply_move(const Configuration& config, const Family& family) {
    if (family.direction != FamilyDirection::up)
        throw structural_error("apply_move: family must be an up-family");
    if (neighbor_frame(config, family.root).B == 0)
        throw structural_error("apply_move: root rate is zero (B = 0)");
    return config.shifted(family.members, +1);
}

Trajectory simulate(const Configuration& init, const GibbsParams<double>& params,
                    const SimulateOptions& options) {
    if (!validate(init)) throw structural_error("simulate: initial configuration is invalid");
    sector_of(init); // raises on malformed sectors before the loop starts
    if (!(options.t_max > 0)) throw structural_error("simulate: t_max must be positive");

    std::mt19937_64 rng(options.seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    Trajectory traj(init);
    traj.seed = options.seed;

    Configuration cur = init;
    double t = 0.0;
    const int N = cur.N(), m1 = cur.m1();
    std::vector<ParticleRef> roots;
    std::vector<double> rates;
    roots.reserve(static_cast<std::size_t>(N) * m1);
    rates.reserve(static_cast<std::size_t>(N) * m1);

    auto credit = [&](const std::string& hex, double dt) {
        if (options.track_occupation) traj.occupation_time[hex] += dt;
    };

    for (;;) {
        roots.clear();
        rates.clear();
        double total = 0.0;
        for (int r = 0; r < N; ++r)
            for (int k = 0; k < m1; ++k) {
                double rt = rate(cur, {r, k}, params);
                if (rt > 0.0) {
                    roots.push_back({r, k});
                    rates.push_back(rt);
                    total += rt;
                }
            }
        if (total <= 0.0)
            throw consistency_error("simulate: frozen state reached, which contradicts ergodicity");

        const double dt = -std::log1p(-uniform()) / total;
        if (t + dt >= options.t_max) {
            credit(cur.occupation_hex(), options.t_max - t);
            t = options.t_max;
            break;
        }
        credit(cur.occupation_hex(), dt);
        t += dt;

        double pick = uniform() * total;
        std::size_t chosen = 0;
        for (; chosen + 1 < rates.size(); ++chosen) {
            pick -= rates[chosen];
            if (pick < 0.0) break;
        }
        Family fam = family_up(cur, roots[chosen]);
        cur = apply_move(cur, fam);
        ++traj.event_count;

        TrajectoryEvent ev{t, fam.root, fam.size()};
        if (options.record_events) traj.events.push_back(ev);
        if (options.observer) options.observer(cur, ev);
        if (options.max_events > 0 && traj.event_count >= options.max_events) break;
    }

    traj.t_end = t;
    traj.final_config = std::move(cur);
    return traj;
}

Trajectory simulate(const Configuration& init, const GibbsParams<double>& params, double t_max,
                    std::uint64_t seed) {
    SimulateOptions opt;
    opt.t_max = t_max;
    opt.seed = seed;
    return simulate(init, params, opt);
}

} // namespace qwtorus
