#pragma once

// Test-only oracles, kept independent of the library's enumeration and
// balance code paths.

#include <map>
#include <vector>

#include "qwtorus/dynamics.hpp"
#include "qwtorus/gibbs.hpp"
#include "qwtorus/lattice.hpp"

namespace qwtorus::test {

// The naive route: every m1-subset per row, every N-tuple of rows, filtered
// by validate and classified by sector_of.
inline std::map<int, std::vector<Configuration>> oracle_census(int L, int N, int m1) {
    std::vector<std::vector<int>> subsets;
    std::vector<int> comb(m1);
    for (int i = 0; i < m1; ++i) comb[i] = i;
    for (;;) {
        subsets.push_back(comb);
        int i = m1 - 1;
        while (i >= 0 && comb[i] == L - m1 + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < m1; ++j) comb[j] = comb[j - 1] + 1;
    }

    std::map<int, std::vector<Configuration>> census;
    std::vector<std::size_t> pick(N, 0);
    for (;;) {
        std::vector<std::vector<int>> rows;
        rows.reserve(N);
        for (int r = 0; r < N; ++r) rows.push_back(subsets[pick[r]]);
        Configuration c = Configuration::from_rows(L, N, std::move(rows));
        if (validate(c)) census[sector_of(c).m2].push_back(std::move(c));

        int r = 0;
        while (r < N && ++pick[r] == subsets.size()) pick[r++] = 0;
        if (r == N) break;
    }
    for (auto& [m2, v] : census) std::sort(v.begin(), v.end());
    return census;
}

// Probability ratio pi(eta_p)/pi(eta) in the product form over the shifted
// family, read entirely from the frames of eta.  `family` is the down-family
// V^-_p inside eta, root first.  Requires the predecessor to exist.
inline Rat product_form_ratio(const Configuration& eta, const Family& family,
                              const GibbsParams<Rat>& params) {
    const int N = eta.N();
    const ParticleRef top = family.root;
    const ParticleRef low = family.members.back();
    NeighborFrame ftop = neighbor_frame(eta, top);
    NeighborFrame flow = neighbor_frame(eta, low);

    auto qq = [&](long n) {
        if (n < 0) throw structural_error("product_form_ratio: negative pochhammer index");
        return params.pochhammer(static_cast<int>(n));
    };

    Rat ratio = params.a[(top.row + 1) % N] / params.a[low.row];
    ratio *= qq(ftop.F) * qq(flow.C) / (qq(ftop.F + 1) * qq(flow.C - 1));
    for (const ParticleRef& m : family.members) {
        NeighborFrame f = neighbor_frame(eta, m);
        ratio *= qq(f.A + 1) * qq(f.D - 1) * qq(f.E) * qq(f.B) /
                 (qq(f.A) * qq(f.D) * qq(f.E - 1) * qq(f.B + 1));
    }
    return ratio;
}

// The telescoped closed form of the same ratio.
inline Rat closed_form_ratio(const Configuration& eta, const Family& family,
                             const GibbsParams<Rat>& params) {
    const int N = eta.N();
    const ParticleRef top = family.root;
    const ParticleRef low = family.members.back();
    NeighborFrame ftop = neighbor_frame(eta, top);
    NeighborFrame flow = neighbor_frame(eta, low);
    const Rat& q = params.q;
    return params.a[(top.row + 1) % N] / params.a[low.row] *
           (Rat(1) - qpow(q, flow.C)) * (Rat(1) - qpow(q, ftop.A + 1)) * (Rat(1) - qpow(q, ftop.E)) /
           ((Rat(1) - qpow(q, flow.B + 1)) * (Rat(1) - qpow(q, flow.D)) *
            (Rat(1) - qpow(q, ftop.F + 1)));
}

} // namespace qwtorus::test
