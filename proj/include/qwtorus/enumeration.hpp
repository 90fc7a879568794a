#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qwtorus/lattice.hpp"

namespace qwtorus {

inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

// Full decomposition of the interlaced configurations with m1 particles per
// row into sectors, keyed by m2.  Within each sector the states are in
// lexicographic occupation order, so downstream matrices and files are
// reproducible byte for byte.
struct SectorCensus {
    int L = 0, N = 0, m1 = 0;
    std::map<int, std::vector<Configuration>> by_m2;

    std::size_t total() const;
};

// Row-by-row depth-first enumeration: row 0 ranges over all m1-subsets,
// every further row is generated directly from the interlacing windows of
// the row below, and the torus closure (row 0 against row N-1) is checked
// last.  Refuses to start when the candidate bound C(L, m1)^N exceeds cap.
SectorCensus enumerate_all(int L, int N, int m1, std::uint64_t cap = kDefaultEnumCap);

// The m2-slice of enumerate_all for a proper sector.  Empty sectors come
// back as an empty list, not an error.
std::vector<Configuration> enumerate_sector(const Sector& sector, std::uint64_t cap = kDefaultEnumCap);

// Uniformly spaced rows with a constant twist per row: particle j of row r
// sits at j*(L/m1) + r*t with t = m2*L/(m1*N).  Needs m1 | L and the twist
// to be integral; throws sector_error otherwise.  Used as a seed for
// simulations on tori too large to enumerate.
Configuration twisted_configuration(const Sector& sector);

} // namespace qwtorus
