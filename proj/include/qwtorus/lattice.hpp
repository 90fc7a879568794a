#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwtorus/errors.hpp"

namespace qwtorus {

/*
 * Torus and interlacing conventions used throughout:
 *
 *   Sites are (x, r) with x in Z/LZ (horizontal) and r in Z/NZ (row).
 *   Row r-1 is below row r, row r+1 above, both mod N.
 *
 *   The six neighbors of a particle p, clockwise from the right:
 *     p1 right (same row), p2 down-right, p3 down-left,
 *     p4 left (same row),  p5 up-left,    p6 up-right.
 *
 *   Horizontal gaps, all differences reduced mod L into [0, L):
 *     A = x(p1) - x(p) - 1      B = x(p2) - x(p) - 1     C = x(p) - x(p3)
 *     D = x(p) - x(p4) - 1      E = x(p) - x(p5) - 1     F = x(p6) - x(p)
 *
 *   Interlacing: for every particle p, the row below holds exactly one
 *   particle in the cyclic window (x(p), x(p1)] and exactly one in
 *   (x(p4), x(p)].  The up-row conditions (one particle in [x(p4), x(p)-1]
 *   and one in [x(p), x(p1)-1]) follow automatically.
 */

// Conserved data of one topological sector of the L x N torus.
//
// m1 = particles per row, m2 = winding index of the up-right neighbor loop
// Gamma.  Derived: n1 = N*m1 vertical dimers, n2 = L*m2 north-west dimers,
// and the primitive winding numbers (Nh, Nv) of Gamma with m2*Nv == m1*Nh.
//
// m2 == 0 (and the boundary case m1*N + m2*L == L*N) are representable so
// that a full census of configurations can be classified, but they are not
// proper sectors: the dynamics and the Gibbs measure require proper().
struct Sector {
    int L = 0;
    int N = 0;
    int m1 = 0;
    int m2 = 0;

    long n1() const { return static_cast<long>(N) * m1; }
    long n2() const { return static_cast<long>(L) * m2; }
    int winding_h() const; // Nh
    int winding_v() const; // Nv

    // True iff 1 <= m2 and m1/L + m2/N < 1 strictly.
    bool proper() const;

    // Validates 1 < m1 < L, 0 <= m2 < N, m1*N + m2*L <= L*N; throws sector_error.
    static Sector checked(int L, int N, int m1, int m2);

    // As checked(), additionally requiring proper().
    static Sector checked_proper(int L, int N, int m1, int m2);

    bool operator==(const Sector&) const = default;
    std::string describe() const;
};

// Stable particle identity: row and index within the row's cyclic order,
// assigned once at construction.  Moves change positions, never labels.
struct ParticleRef {
    int row = 0;
    int idx = 0;
    bool operator==(const ParticleRef&) const = default;
    auto operator<=>(const ParticleRef&) const = default;
};

struct NeighborFrame {
    ParticleRef p1, p2, p3, p4, p5, p6;
    int A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
};

// Interlaced particle configuration on the L x N torus.
//
// rows()[r][k] is the position of particle (r, k); the index order within a
// row is cyclic and never changes under moves, so labels are stable even
// when positions wrap past L.  Equality and hashing use the canonical
// occupation bitmask (one L-bit word per row, row 0 first), which identifies
// simultaneous cyclic relabelings of the same occupation function.
class Configuration {
  public:
    // Structural checks only: N rows, equal sizes with 2 <= m1 < L <= 63,
    // positions in [0, L).  Rows are sorted ascending to fix labels.
    // Interlacing is NOT checked here; see validate().
    static Configuration from_rows(int L, int N, std::vector<std::vector<int>> rows);

    // from_rows + validate, throwing structural_error when interlacing fails.
    static Configuration checked(int L, int N, std::vector<std::vector<int>> rows);

    int L() const { return L_; }
    int N() const { return N_; }
    int m1() const { return m1_; }

    std::span<const int> row(int r) const { return rows_[r]; }
    int position(ParticleRef p) const;
    bool occupied(int x, int r) const { return (occ_[r] >> x) & 1u; }

    const std::vector<std::uint64_t>& occupation() const { return occ_; }
    std::string occupation_hex() const;

    // Copy with the listed particles shifted horizontally by delta (+-1).
    // Throws consistency_error if two particles would land on one site.
    Configuration shifted(std::span<const ParticleRef> members, int delta) const;

    bool operator==(const Configuration& o) const {
        return L_ == o.L_ && N_ == o.N_ && occ_ == o.occ_;
    }
    // Lexicographic in the occupation encoding, row 0 first.
    bool operator<(const Configuration& o) const { return occ_ < o.occ_; }

    std::string to_json() const;
    static Configuration from_json(const std::string& text);

  private:
    Configuration() = default;
    friend Sector sector_of(const Configuration&);

    int L_ = 0, N_ = 0, m1_ = 0;
    std::vector<std::vector<int>> rows_;
    std::vector<std::uint64_t> occ_;
    mutable std::optional<Sector> sector_; // filled by sector_of
};

// True iff the interlacing constraints hold for every particle.
// Malformed structure is impossible here by construction of Configuration.
bool validate(const Configuration& config);

// Neighbor references and gaps of one particle.  Requires validate(config).
NeighborFrame neighbor_frame(const Configuration& config, ParticleRef p);

// Traces the up-right loop Gamma, counts its windings (Nh, Nv) and returns
// the sector with m2 = m1*Nh/Nv.  Independent of the starting particle;
// cached on the configuration.  Requires validate(config).
Sector sector_of(const Configuration& config);

struct OccupationHash {
    std::size_t operator()(const std::vector<std::uint64_t>& occ) const;
};

} // namespace qwtorus
