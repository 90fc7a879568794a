#include <doctest.h>

#include <bit>

#include "oracles.hpp"
#include "qwtorus/lattice.hpp"

using namespace qwtorus;

namespace {

Configuration reference_config() {
    return Configuration::checked(5, 2, {{0, 2}, {1, 3}});
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("validate accepts the interlaced reference configuration") {
    CHECK(validate(reference_config()));
}

TEST_CASE("validate rejects empty interlacing windows and doubled sites") {
    CHECK_FALSE(validate(Configuration::from_rows(5, 2, {{0, 1}, {2, 3}})));
    CHECK_FALSE(validate(Configuration::from_rows(5, 2, {{1, 1}, {0, 2}})));
    CHECK_FALSE(validate(Configuration::from_rows(6, 2, {{0, 3}, {1, 2}})));
}

TEST_CASE("malformed rows are structural errors, distinct from validation failure") {
    CHECK_THROWS_AS(Configuration::from_rows(5, 2, {{0, 2}}), structural_error);
    CHECK_THROWS_AS(Configuration::from_rows(5, 2, {{0, 2}, {1}}), structural_error);
    CHECK_THROWS_AS(Configuration::from_rows(5, 2, {{0, 7}, {1, 3}}), structural_error);
    CHECK_THROWS_AS(Configuration::from_rows(5, 2, {{0}, {1}}), structural_error);
    CHECK_THROWS_AS(Configuration::from_rows(5, 2, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}}),
                    structural_error);
}

TEST_CASE("vertically stacked pairs satisfy the occupation windows, in the m2 = 0 slice") {
    // Every window rule of the interlacing definition holds here; the
    // configuration is merely outside every proper (m2 >= 1) sector.
    Configuration c = Configuration::from_rows(5, 2, {{0, 1}, {0, 1}});
    CHECK(validate(c));
    CHECK(sector_of(c).m2 == 0);
    CHECK_FALSE(sector_of(c).proper());
}

TEST_CASE("neighbor frame of the reference particle") {
    Configuration c = reference_config();
    NeighborFrame f = neighbor_frame(c, {0, 0}); // particle at (x=0, row 0)
    CHECK(f.A == 1);
    CHECK(f.B == 0);
    CHECK(f.C == 2);
    CHECK(f.D == 2);
    CHECK(f.E == 1);
    CHECK(f.F == 1);
    CHECK(f.p1 == ParticleRef{0, 1});
    CHECK(f.p4 == ParticleRef{0, 1});
    CHECK(f.p2 == ParticleRef{1, 0}); // below-right: position 1
    CHECK(f.p3 == ParticleRef{1, 1}); // below-left: position 3, wrapping
    CHECK(f.p5 == ParticleRef{1, 1});
    CHECK(f.p6 == ParticleRef{1, 0});
}

TEST_CASE("m1 = 2 collapses left and right neighbors") {
    Configuration c = reference_config();
    for (int r = 0; r < c.N(); ++r)
        for (int k = 0; k < c.m1(); ++k) {
            NeighborFrame f = neighbor_frame(c, {r, k});
            CHECK(f.p1 == f.p4);
        }
}

TEST_CASE("invalid particle references are rejected") {
    Configuration c = reference_config();
    CHECK_THROWS_AS(neighbor_frame(c, {2, 0}), structural_error);
    CHECK_THROWS_AS(neighbor_frame(c, {0, 5}), structural_error);
    CHECK_THROWS_AS(neighbor_frame(c, {-1, 0}), structural_error);
}

TEST_CASE("gap sums tile the circle on every enumerated state") {
    auto census = test::oracle_census(5, 2, 2);
    for (const auto& [m2, states] : census)
        for (const Configuration& c : states)
            for (int r = 0; r < c.N(); ++r) {
                int sumA = 0, sumBC = 0, sumEF = 0;
                for (int k = 0; k < c.m1(); ++k) {
                    NeighborFrame f = neighbor_frame(c, {r, k});
                    sumA += f.A + 1;
                    sumBC += f.B + f.C + 1;
                    sumEF += f.E + f.F + 1;
                }
                CHECK(sumA == c.L());
                CHECK(sumBC == c.L());
                CHECK(sumEF == c.L());
            }
}

TEST_CASE("sector_of traces Gamma through all four particles") {
    Configuration c = reference_config();
    Sector s = sector_of(c);
    CHECK(s.m2 == 1);
    CHECK(s.winding_h() == 1);
    CHECK(s.winding_v() == 2);
    CHECK(s.n1() == 4);
    CHECK(s.n2() == 5);
    CHECK(s.proper());
}

TEST_CASE("Gamma winding is independent of the starting particle") {
    auto census = test::oracle_census(5, 2, 2);
    for (const auto& [m2, states] : census)
        for (const Configuration& c : states) {
            Sector s = sector_of(c);
            for (int r0 = 0; r0 < c.N(); ++r0)
                for (int k0 = 0; k0 < c.m1(); ++k0) {
                    // independent re-trace from (r0, k0)
                    ParticleRef cur{r0, k0};
                    long steps = 0, disp = 0;
                    do {
                        NeighborFrame f = neighbor_frame(c, cur);
                        disp += f.F;
                        cur = f.p6;
                        ++steps;
                    } while (!(cur == ParticleRef{r0, k0}));
                    CHECK(steps == static_cast<long>(s.winding_v()) * c.N());
                    CHECK(disp == static_cast<long>(s.winding_h()) * c.L());
                }
            CHECK(s.m2 * s.winding_v() == s.m1 * s.winding_h());
            CHECK(s.m1 * s.N + s.m2 * s.L <= s.L * s.N);
        }
}

TEST_CASE("sector parameter checking") {
    CHECK_THROWS_AS(Sector::checked(5, 2, 1, 1), sector_error);
    CHECK_THROWS_AS(Sector::checked(5, 2, 5, 1), sector_error);
    CHECK_THROWS_AS(Sector::checked(5, 2, 2, 2), sector_error);
    CHECK_THROWS_AS(Sector::checked(4, 3, 2, 2), sector_error);       // 1/2 + 2/3 > 1
    CHECK_THROWS_AS(Sector::checked_proper(3, 3, 2, 1), sector_error); // 2/3 + 1/3 = 1
    CHECK_THROWS_AS(Sector::checked_proper(5, 2, 2, 0), sector_error);
    CHECK(Sector::checked(3, 3, 2, 1).m2 == 1); // boundary representable, not proper
    CHECK_FALSE(Sector::checked(3, 3, 2, 1).proper());
    CHECK(Sector::checked_proper(5, 2, 2, 1).proper());
}

TEST_CASE("occupation encoding, equality and serialization round-trips") {
    Configuration c = reference_config();
    CHECK(c.occupation_hex() == "050a"); // row 0 = {0,2} -> 0x05, row 1 = {1,3} -> 0x0a
    Configuration relabeled = Configuration::from_rows(5, 2, {{2, 0}, {3, 1}});
    CHECK(c == relabeled);

    Configuration via_json = Configuration::from_json(c.to_json());
    CHECK(via_json == c);
    Configuration via_hex = Configuration::from_json(R"({"L":5,"N":2,"occupation":"050a"})");
    CHECK(via_hex == c);

    CHECK_THROWS_AS(Configuration::from_json("{"), structural_error);
    CHECK_THROWS_AS(Configuration::from_json(R"({"L":5,"N":2})"), structural_error);
    CHECK_THROWS_AS(Configuration::from_json(R"({"L":5,"N":2,"occupation":"zz"})"), structural_error);
}

TEST_CASE("shifted updates positions and occupation together") {
    Configuration c = reference_config();
    std::vector<ParticleRef> one{{1, 1}}; // particle at (3, row 1), the only unblocked one
    Configuration moved = c.shifted(one, +1);
    CHECK(moved.position({1, 1}) == 4);
    CHECK(validate(moved));

    int diff_bits = 0;
    for (int r = 0; r < 2; ++r)
        diff_bits += std::popcount(c.occupation()[r] ^ moved.occupation()[r]);
    CHECK(diff_bits == 2);

    // shifting the row-0 particle at 1... onto an occupied site must throw
    Configuration tight = Configuration::from_rows(5, 2, {{0, 1}, {1, 2}});
    std::vector<ParticleRef> first{{0, 0}};
    CHECK_THROWS_AS(tight.shifted(first, +1), consistency_error);
}

} // TEST_SUITE
