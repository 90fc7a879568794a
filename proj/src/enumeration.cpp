#include "qwtorus/enumeration.hpp"

#include <algorithm>

namespace qwtorus {

namespace {

int mod(int a, int L) {
    int r = a % L;
    return r < 0 ? r + L : r;
}

// C(n, k) saturating at limit.
std::uint64_t binom_capped(int n, int k, std::uint64_t limit) {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        if (c > limit) return limit + 1;
    }
    return c;
}

// True iff each cyclic window (x, x_right] of `upper` holds exactly one
// particle of `lower`; rows are sorted ascending.
bool interlaces_over(const std::vector<int>& upper, const std::vector<int>& lower, int L) {
    const int m = static_cast<int>(upper.size());
    for (int k = 0; k < m; ++k) {
        const int x = upper[k];
        const int w = mod(upper[(k + 1) % m] - x, L);
        int cnt = 0;
        for (int y : lower) {
            int d = mod(y - x, L);
            if (d >= 1 && d <= w) ++cnt;
        }
        if (cnt != 1) return false;
    }
    return true;
}

void extend_rows(std::vector<std::vector<int>>& rows, int L, int N, int m1,
                 std::vector<Configuration>& out) {
    if (static_cast<int>(rows.size()) == N) {
        if (interlaces_over(rows[0], rows[N - 1], L))
            out.push_back(Configuration::from_rows(L, N, rows));
        return;
    }
    // One choice per window [b_j, b_{j+1}) of the row below yields exactly
    // the rows interlacing over it.
    const std::vector<int>& below = rows.back();
    std::vector<int> widths(m1), choice(m1, 0);
    for (int j = 0; j < m1; ++j) widths[j] = mod(below[(j + 1) % m1] - below[j], L);
    for (;;) {
        std::vector<int> next(m1);
        for (int j = 0; j < m1; ++j) next[j] = mod(below[j] + choice[j], L);
        std::sort(next.begin(), next.end());
        rows.push_back(std::move(next));
        extend_rows(rows, L, N, m1, out);
        rows.pop_back();

        int j = 0;
        while (j < m1 && ++choice[j] == widths[j]) choice[j++] = 0;
        if (j == m1) break;
    }
}

} // namespace

std::size_t SectorCensus::total() const {
    std::size_t n = 0;
    for (const auto& [m2, v] : by_m2) n += v.size();
    return n;
}

SectorCensus enumerate_all(int L, int N, int m1, std::uint64_t cap) {
    if (!(1 < m1 && m1 < L)) throw sector_error("enumerate_all: need 1 < m1 < L");
    if (L > 63) throw sector_error("enumerate_all: L must be <= 63");
    if (N < 1) throw sector_error("enumerate_all: need N >= 1");

    const std::uint64_t per_row = binom_capped(L, m1, cap);
    std::uint64_t bound = 1;
    for (int r = 0; r < N; ++r) {
        if (bound > cap / std::max<std::uint64_t>(per_row, 1)) { bound = cap + 1; break; }
        bound *= per_row;
    }
    if (bound > cap)
        throw resource_limit_error("enumeration candidate bound C(L,m1)^N exceeds cap " + std::to_string(cap));

    std::vector<Configuration> all;
    // row 0: every m1-subset of [0, L)
    std::vector<int> comb(m1);
    for (int i = 0; i < m1; ++i) comb[i] = i;
    for (;;) {
        std::vector<std::vector<int>> rows{comb};
        extend_rows(rows, L, N, m1, all);
        int i = m1 - 1;
        while (i >= 0 && comb[i] == L - m1 + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < m1; ++j) comb[j] = comb[j - 1] + 1;
    }

    SectorCensus census;
    census.L = L;
    census.N = N;
    census.m1 = m1;
    for (auto& c : all) {
        if (!validate(c)) throw consistency_error("enumerate_all produced an invalid configuration");
        census.by_m2[sector_of(c).m2].push_back(std::move(c));
    }
    for (auto& [m2, v] : census.by_m2) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return census;
}

std::vector<Configuration> enumerate_sector(const Sector& sector, std::uint64_t cap) {
    Sector s = Sector::checked_proper(sector.L, sector.N, sector.m1, sector.m2);
    SectorCensus census = enumerate_all(s.L, s.N, s.m1, cap);
    auto it = census.by_m2.find(s.m2);
    if (it == census.by_m2.end()) return {};
    return std::move(it->second);
}

Configuration twisted_configuration(const Sector& sector) {
    Sector s = Sector::checked_proper(sector.L, sector.N, sector.m1, sector.m2);
    if (s.L % s.m1 != 0)
        throw sector_error("twisted_configuration: m1 must divide L");
    const int spacing = s.L / s.m1;
    const long tn = static_cast<long>(s.m2) * s.L;
    const long td = static_cast<long>(s.m1) * s.N;
    if (tn % td != 0)
        throw sector_error("twisted_configuration: twist m2*L/(m1*N) is not an integer");
    const int twist = static_cast<int>(tn / td);
    if (twist >= spacing)
        throw sector_error("twisted_configuration: twist too large for the spacing");

    std::vector<std::vector<int>> rows(s.N, std::vector<int>(s.m1));
    for (int r = 0; r < s.N; ++r)
        for (int j = 0; j < s.m1; ++j) rows[r][j] = mod(j * spacing + r * twist, s.L);
    Configuration c = Configuration::checked(s.L, s.N, std::move(rows));
    if (!(sector_of(c) == s)) throw consistency_error("twisted_configuration landed in the wrong sector");
    return c;
}

} // namespace qwtorus
