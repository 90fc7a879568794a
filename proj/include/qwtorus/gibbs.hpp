#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "qwtorus/lattice.hpp"
#include "qwtorus/scalar.hpp"

namespace qwtorus {

// Deformation q in [0, 1) and one positive activity per row.
// S is Rat for exact verification or double for simulation.
//
// (q;q)_n values are memoized per instance for exact q; the float backend
// just recomputes (cheap, and avoids keying a cache by floating point).
// The cache grows on use: call ensure_pochhammer() up front when sharing a
// params object across threads.
template <class S>
struct GibbsParams {
    S q{};
    std::vector<S> a;

    GibbsParams(S q_, std::vector<S> a_) : q(std::move(q_)), a(std::move(a_)) {
        if (!(q >= S(0) && q < S(1))) throw structural_error("GibbsParams: q must lie in [0, 1)");
        if (a.empty()) throw structural_error("GibbsParams: need one activity per row");
        for (const S& ak : a)
            if (!(ak > S(0))) throw structural_error("GibbsParams: activities must be positive");
    }

    int rows() const { return static_cast<int>(a.size()); }

    // (q;q)_n = (1-q)(1-q^2)...(1-q^n), empty product at n = 0.
    S pochhammer(int n) const;
    void ensure_pochhammer(int n) const { (void)pochhammer(n); }

  private:
    mutable std::vector<S> poch_;
};

template <>
inline Rat GibbsParams<Rat>::pochhammer(int n) const {
    if (n < 0) throw structural_error("pochhammer: negative index");
    if (poch_.empty()) poch_.push_back(Rat(1));
    while (static_cast<int>(poch_.size()) <= n) {
        long j = static_cast<long>(poch_.size());
        poch_.push_back(poch_.back() * (Rat(1) - qpow(q, j)));
    }
    return poch_[n];
}

template <>
inline double GibbsParams<double>::pochhammer(int n) const {
    if (n < 0) throw structural_error("pochhammer: negative index");
    double p = 1.0, qj = 1.0;
    for (int j = 1; j <= n; ++j) {
        qj *= q;
        p *= 1.0 - qj;
    }
    return p;
}

template <class S>
S q_pochhammer(const GibbsParams<S>& params, int n) {
    return params.pochhammer(n);
}

// Unnormalized Gibbs weight: prod_p a_{r(p)}^{C_p} (q;q)_{A_p} / ((q;q)_{B_p} (q;q)_{C_p}).
template <class S>
S weight(const Configuration& config, const GibbsParams<S>& params);

// Conditional single-site weight:
//   a_{r(p)}^{C_p} a_{r(p6)}^{F_p} (q;q)_{A_p}(q;q)_{D_p}
//     / ((q;q)_{B_p}(q;q)_{C_p}(q;q)_{E_p}(q;q)_{F_p}).
// Proportional to the law of p's position given all other particles.
template <class S>
S conditional_weight(const Configuration& config, ParticleRef p, const GibbsParams<S>& params);

// Normalized measure over a fully enumerated sector; exact when S = Rat.
template <class S>
std::vector<S> measure_table(const std::vector<Configuration>& states, const GibbsParams<S>& params,
                             int threads = 1);

// Log-space backend for tori where the weight product leaves double range.
LogDouble log_weight(const Configuration& config, const GibbsParams<double>& params);
std::vector<double> measure_table_log(const std::vector<Configuration>& states,
                                      const GibbsParams<double>& params);

// CSV export: occupation,weight_num,weight_den,probability
void write_measure_csv(std::ostream& os, const std::vector<Configuration>& states,
                       const GibbsParams<Rat>& params);

// ---- implementation ----

template <class S>
S weight(const Configuration& config, const GibbsParams<S>& params) {
    if (params.rows() != config.N()) throw structural_error("weight: activity count != N");
    S w(1);
    for (int r = 0; r < config.N(); ++r) {
        for (int k = 0; k < config.m1(); ++k) {
            NeighborFrame f = neighbor_frame(config, {r, k});
            w *= qpow(params.a[r], f.C) * params.pochhammer(f.A) /
                 (params.pochhammer(f.B) * params.pochhammer(f.C));
        }
    }
    return w;
}

template <class S>
S conditional_weight(const Configuration& config, ParticleRef p, const GibbsParams<S>& params) {
    if (params.rows() != config.N()) throw structural_error("conditional_weight: activity count != N");
    NeighborFrame f = neighbor_frame(config, p);
    const S& a_r = params.a[p.row];
    const S& a_up = params.a[f.p6.row];
    return qpow(a_r, f.C) * qpow(a_up, f.F) * params.pochhammer(f.A) * params.pochhammer(f.D) /
           (params.pochhammer(f.B) * params.pochhammer(f.C) * params.pochhammer(f.E) *
            params.pochhammer(f.F));
}

namespace detail {
void parallel_apply(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& chunk);
} // namespace detail

template <class S>
std::vector<S> measure_table(const std::vector<Configuration>& states, const GibbsParams<S>& params,
                             int threads) {
    if (states.empty()) throw structural_error("measure_table: empty state list");
    params.ensure_pochhammer(states.front().L());
    std::vector<S> w(states.size());
    detail::parallel_apply(states.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) w[i] = weight(states[i], params);
    });
    S z(0);
    for (const S& wi : w) z += wi;
    for (S& wi : w) wi /= z;
    return w;
}

} // namespace qwtorus
