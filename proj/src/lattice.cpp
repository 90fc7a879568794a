#include "qwtorus/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qwtorus {

namespace {

int mod(int a, int L) {
    int r = a % L;
    return r < 0 ? r + L : r;
}

} // namespace

int Sector::winding_h() const {
    int g = std::gcd(m1, m2);
    return m2 / g;
}

int Sector::winding_v() const {
    int g = std::gcd(m1, m2);
    return m1 / g;
}

bool Sector::proper() const {
    return m2 >= 1 && static_cast<long>(m1) * N + static_cast<long>(m2) * L < static_cast<long>(L) * N;
}

Sector Sector::checked(int L, int N, int m1, int m2) {
    if (L < 3 || L > 63) throw sector_error("L must be in [3, 63], got " + std::to_string(L));
    if (N < 1) throw sector_error("N must be >= 1, got " + std::to_string(N));
    if (!(1 < m1 && m1 < L))
        throw sector_error("m1 must satisfy 1 < m1 < L (m1 = 1 and m1 = L are excluded); got m1 = " +
                           std::to_string(m1) + " with L = " + std::to_string(L));
    if (!(0 <= m2 && m2 < N))
        throw sector_error("m2 must satisfy 0 <= m2 < N; got m2 = " + std::to_string(m2));
    if (static_cast<long>(m1) * N + static_cast<long>(m2) * L > static_cast<long>(L) * N)
        throw sector_error("sector bound violated: m1/L + m2/N = " + std::to_string(m1) + "/" +
                           std::to_string(L) + " + " + std::to_string(m2) + "/" + std::to_string(N) +
                           " exceeds 1");
    return Sector{L, N, m1, m2};
}

Sector Sector::checked_proper(int L, int N, int m1, int m2) {
    Sector s = checked(L, N, m1, m2);
    if (!s.proper())
        throw sector_error("not a proper sector: need 1 <= m2 and m1/L + m2/N < 1 strictly; got m1/L + m2/N = " +
                           std::to_string(m1) + "/" + std::to_string(L) + " + " + std::to_string(m2) + "/" +
                           std::to_string(N));
    return s;
}

std::string Sector::describe() const {
    std::ostringstream os;
    os << "L=" << L << " N=" << N << " m1=" << m1 << " m2=" << m2;
    return os.str();
}

Configuration Configuration::from_rows(int L, int N, std::vector<std::vector<int>> rows) {
    if (L < 3 || L > 63) throw structural_error("L must be in [3, 63]");
    if (N < 1) throw structural_error("N must be >= 1");
    if (static_cast<int>(rows.size()) != N)
        throw structural_error("expected " + std::to_string(N) + " rows, got " + std::to_string(rows.size()));
    const std::size_t m1 = rows.empty() ? 0 : rows[0].size();
    if (m1 < 2 || static_cast<int>(m1) >= L)
        throw structural_error("particles per row must satisfy 2 <= m1 < L");
    Configuration c;
    c.L_ = L;
    c.N_ = N;
    c.m1_ = static_cast<int>(m1);
    c.occ_.assign(N, 0);
    for (int r = 0; r < N; ++r) {
        if (rows[r].size() != m1)
            throw structural_error("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                   " particles, expected " + std::to_string(m1));
        std::sort(rows[r].begin(), rows[r].end());
        for (int x : rows[r]) {
            if (x < 0 || x >= L)
                throw structural_error("position " + std::to_string(x) + " outside [0, " + std::to_string(L) + ")");
            c.occ_[r] |= (std::uint64_t{1} << x);
        }
    }
    c.rows_ = std::move(rows);
    return c;
}

Configuration Configuration::checked(int L, int N, std::vector<std::vector<int>> rows) {
    Configuration c = from_rows(L, N, std::move(rows));
    if (!validate(c)) throw structural_error("configuration violates the interlacing constraints");
    return c;
}

int Configuration::position(ParticleRef p) const {
    if (p.row < 0 || p.row >= N_ || p.idx < 0 || p.idx >= m1_)
        throw structural_error("invalid particle reference (" + std::to_string(p.row) + ", " +
                               std::to_string(p.idx) + ")");
    return rows_[p.row][p.idx];
}

std::string Configuration::occupation_hex() const {
    static const char* digits = "0123456789abcdef";
    const int width = (L_ + 3) / 4;
    std::string out;
    out.reserve(static_cast<std::size_t>(width) * N_);
    for (int r = 0; r < N_; ++r)
        for (int d = width - 1; d >= 0; --d)
            out.push_back(digits[(occ_[r] >> (4 * d)) & 0xf]);
    return out;
}

Configuration Configuration::shifted(std::span<const ParticleRef> members, int delta) const {
    Configuration out = *this;
    out.sector_.reset();
    for (ParticleRef p : members) {
        int x = out.position(p);
        out.occ_[p.row] &= ~(std::uint64_t{1} << x);
        out.rows_[p.row][p.idx] = mod(x + delta, L_);
    }
    for (ParticleRef p : members) {
        int x = out.rows_[p.row][p.idx];
        if ((out.occ_[p.row] >> x) & 1u)
            throw consistency_error("shift puts two particles on site (" + std::to_string(x) + ", " +
                                    std::to_string(p.row) + ")");
        out.occ_[p.row] |= (std::uint64_t{1} << x);
    }
    return out;
}

std::string Configuration::to_json() const {
    nlohmann::ordered_json j;
    j["L"] = L_;
    j["N"] = N_;
    auto rows = nlohmann::ordered_json::array();
    for (int r = 0; r < N_; ++r) {
        std::vector<int> sorted(rows_[r].begin(), rows_[r].end());
        std::sort(sorted.begin(), sorted.end());
        rows.push_back(sorted);
    }
    j["rows"] = rows;
    j["occupation"] = occupation_hex();
    return j.dump();
}

Configuration Configuration::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw structural_error(std::string("bad configuration JSON: ") + e.what());
    }
    if (!j.contains("L") || !j.contains("N")) throw structural_error("configuration JSON needs L and N");
    int L = j["L"].get<int>();
    int N = j["N"].get<int>();
    if (j.contains("rows")) {
        auto rows = j["rows"].get<std::vector<std::vector<int>>>();
        return from_rows(L, N, std::move(rows));
    }
    if (j.contains("occupation")) {
        const std::string hex = j["occupation"].get<std::string>();
        const int width = (L + 3) / 4;
        if (static_cast<int>(hex.size()) != width * N)
            throw structural_error("occupation hex has wrong length");
        std::vector<std::vector<int>> rows(N);
        for (int r = 0; r < N; ++r) {
            std::uint64_t word = 0;
            for (int i = 0; i < width; ++i) {
                char ch = hex[static_cast<std::size_t>(r) * width + i];
                int v = ch >= '0' && ch <= '9' ? ch - '0'
                      : ch >= 'a' && ch <= 'f' ? ch - 'a' + 10
                      : ch >= 'A' && ch <= 'F' ? ch - 'A' + 10
                                               : -1;
                if (v < 0) throw structural_error("bad hex digit in occupation string");
                word = (word << 4) | static_cast<std::uint64_t>(v);
            }
            for (int x = 0; x < L; ++x)
                if ((word >> x) & 1u) rows[r].push_back(x);
        }
        return from_rows(L, N, std::move(rows));
    }
    throw structural_error("configuration JSON needs rows or occupation");
}

namespace {

// Index of the unique particle of `candidates` whose position x' satisfies
// lo <= (x' - x) mod L <= hi (forward = true) or the mirrored window for
// backward search.  Returns -1 if none or more than one.
int unique_in_window(std::span<const int> candidates, int x, int lo, int hi, int L, bool forward) {
    int found = -1;
    for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
        int d = forward ? mod(candidates[k] - x, L) : mod(x - candidates[k], L);
        if (d >= lo && d <= hi) {
            if (found >= 0) return -1;
            found = k;
        }
    }
    return found;
}

} // namespace

bool validate(const Configuration& config) {
    const int L = config.L();
    const int N = config.N();
    const int m1 = config.m1();
    for (int r = 0; r < N; ++r) {
        if (std::popcount(config.occupation()[r]) != m1) return false; // duplicate site
        auto row = config.row(r);
        auto below = config.row(mod(r - 1, N));
        for (int k = 0; k < m1; ++k) {
            const int x = row[k];
            // right neighbor distance
            int dist = L + 1;
            for (int k2 = 0; k2 < m1; ++k2) {
                if (k2 == k) continue;
                int d = mod(row[k2] - x, L);
                if (d == 0) return false;
                dist = std::min(dist, d);
            }
            // exactly one below-row particle in (x, x + dist]
            if (unique_in_window(below, x, 1, dist, L, true) < 0) return false;
        }
    }
    return true;
}

NeighborFrame neighbor_frame(const Configuration& config, ParticleRef p) {
    const int L = config.L();
    const int N = config.N();
    const int m1 = config.m1();
    const int x = config.position(p);
    auto row = config.row(p.row);

    NeighborFrame f;
    int dr = L + 1, dl = L + 1;
    for (int k = 0; k < m1; ++k) {
        if (k == p.idx) continue;
        int d1 = mod(row[k] - x, L);
        int d4 = mod(x - row[k], L);
        if (d1 > 0 && d1 < dr) { dr = d1; f.p1 = {p.row, k}; }
        if (d4 > 0 && d4 < dl) { dl = d4; f.p4 = {p.row, k}; }
    }
    if (dr > L || dl > L) throw consistency_error("neighbor_frame: row has duplicate positions");
    f.A = dr - 1;
    f.D = dl - 1;

    const int below_r = mod(p.row - 1, N);
    const int above_r = mod(p.row + 1, N);
    auto below = config.row(below_r);
    auto above = config.row(above_r);

    int k2 = unique_in_window(below, x, 1, f.A + 1, L, true);
    int k3 = unique_in_window(below, x, 0, f.D, L, false);
    int k6 = unique_in_window(above, x, 0, f.A, L, true);
    int k5 = unique_in_window(above, x, 1, f.D + 1, L, false);
    if (k2 < 0 || k3 < 0 || k5 < 0 || k6 < 0)
        throw consistency_error("neighbor_frame: interlacing violated at (" + std::to_string(p.row) + ", " +
                                std::to_string(p.idx) + ")");
    f.p2 = {below_r, k2};
    f.p3 = {below_r, k3};
    f.p5 = {above_r, k5};
    f.p6 = {above_r, k6};
    f.B = mod(below[k2] - x, L) - 1;
    f.C = mod(x - below[k3], L);
    f.E = mod(x - above[k5], L) - 1;
    f.F = mod(above[k6] - x, L);
    return f;
}

Sector sector_of(const Configuration& config) {
    if (config.sector_) return *config.sector_;
    const int L = config.L();
    const int N = config.N();
    const int m1 = config.m1();
    const long max_steps = static_cast<long>(N) * m1;

    ParticleRef cur{0, 0};
    long steps = 0;
    long disp = 0;
    do {
        NeighborFrame f = neighbor_frame(config, cur);
        disp += f.F;
        cur = f.p6;
        if (++steps > max_steps) throw consistency_error("sector_of: Gamma loop failed to close");
    } while (!(cur == ParticleRef{0, 0}));

    if (steps % N != 0) throw consistency_error("sector_of: Gamma length not a multiple of N");
    if (disp % L != 0) throw consistency_error("sector_of: Gamma displacement not a multiple of L");
    const long Nv = steps / N;
    const long Nh = disp / L;
    if ((m1 * Nh) % Nv != 0) throw consistency_error("sector_of: m1*Nh/Nv is not an integer");
    const int m2 = static_cast<int>(m1 * Nh / Nv);

    Sector s = Sector::checked(L, N, m1, m2);
    if (s.winding_h() != Nh || s.winding_v() != Nv)
        throw consistency_error("sector_of: Gamma winding is not primitive");
    config.sector_ = s;
    return s;
}

std::size_t OccupationHash::operator()(const std::vector<std::uint64_t>& occ) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t w : occ) {
        h ^= w;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace qwtorus
