#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwtorus/lattice.hpp"

namespace qwtorus {

/*
 * Hexagonal lattice conventions.
 *
 * One white vertex W(x,y) and one black vertex B(x,y) per torus site.  The
 * three edges of W(x,y):
 *
 *     vertical    W(x,y) -- B(x,y)        a particle when matched
 *     north-east  W(x,y) -- B(x,y+1)      straight up
 *     north-west  W(x,y) -- B(x-1,y+1)    up-left
 *
 * A cover is stored as the matched-edge kind of each white vertex.  Faces
 * f(x,y) are the hexagons just right of the vertical edge at (x,y); their
 * neighbors and the edge crossed when stepping between them:
 *
 *     step          to            crossed edge (white vertex, kind)   sign
 *     +e1           f(x+1,y)      ((x+1,y), vertical)                 +1
 *     -e1           f(x-1,y)      ((x,y),   vertical)                 -1
 *     +e2           f(x,y+1)      ((x+1,y), north-west)               -1
 *     -e2           f(x,y-1)      ((x+1,y-1), north-west)             +1
 *     up-left       f(x-1,y+1)    ((x,y),   north-east)               +1
 *     down-right    f(x+1,y-1)    ((x+1,y-1), north-east)             -1
 *
 * The sign is +1 when the edge is crossed with its white vertex on the
 * right.  With these conventions an +e1 loop over an occupied row counts
 * +k1 and an +e2 loop counts -k2.
 */

enum class EdgeKind : std::uint8_t { vertical, northwest, northeast };

enum class FaceStep : std::uint8_t { e1_plus, e1_minus, e2_plus, e2_minus, up_left, down_right };

struct Face {
    int x = 0;
    int y = 0;
    bool operator==(const Face&) const = default;
};

// Perfect matching of the L x N hexagonal torus with n1 vertical and n2
// north-west dimers, indexed by the white vertex each dimer covers.
class DimerCover {
  public:
    DimerCover(Sector sector, std::vector<EdgeKind> kinds);

    const Sector& sector() const { return sector_; }
    int L() const { return sector_.L; }
    int N() const { return sector_.N; }
    EdgeKind at(int x, int y) const { return kind_[static_cast<std::size_t>(y) * L() + x]; }

    long count(EdgeKind k) const;

    // Edge crossed when stepping from face f; sign +1 iff white on the right.
    struct Crossing {
        int wx, wy;
        EdgeKind kind;
        int sign;
    };
    Crossing crossing(Face f, FaceStep step) const;
    bool crossing_occupied(Face f, FaceStep step) const;

    Face neighbor_face(Face f, FaceStep step) const;

    // The three alternating edges of face f (vertical-left, north-west-top,
    // north-east-bottom) are all dimers: rotating them moves the particle at
    // (f.x, f.y) one step right.
    bool rotatable(Face f) const;
    DimerCover rotated(Face f) const;

  private:
    Sector sector_;
    std::vector<EdgeKind> kind_;
};

// Places a vertical dimer at every particle and completes the unique
// perfect matching.  Requires validate(config).
DimerCover to_dimers(const Configuration& config);

// Inverse of to_dimers: reads particle positions off the vertical dimers.
Configuration from_dimers(const DimerCover& cover);

// Walk on faces; steps are guaranteed adjacent by construction.
class FacePath {
  public:
    FacePath(Face start, std::vector<FaceStep> steps) : start_(start), steps_(std::move(steps)) {}

    // Builds a path from a face sequence, throwing structural_error when two
    // consecutive faces are not adjacent on the (L, N) face torus.
    static FacePath from_faces(int L, int N, const std::vector<Face>& faces);

    const Face& start() const { return start_; }
    const std::vector<FaceStep>& steps() const { return steps_; }

    bool closed(int L, int N) const;
    // (horizontal, vertical) winding; meaningful for closed paths.
    std::pair<int, int> winding(int L, int N) const;

  private:
    Face start_;
    std::vector<FaceStep> steps_;
};

// Signed count of covered edges crossed by the path (the height increment
// H_X along the path).
long height_along(const DimerCover& cover, const FacePath& path);

// Canonical loops: straight +e1 at row y, straight +e2 at column x, and the
// cover-adapted loop that goes +e2 when that crosses no dimer and +e1
// otherwise, started just right of a particle.
FacePath e1_loop(int L, int y);
FacePath e2_loop(int N, int x);
FacePath gamma_loop(const DimerCover& cover, Face start);

// Heights of eta relative to eta2 on all faces, normalized to min 0.
// Requires both configurations in the same sector.
class FaceGrid {
  public:
    FaceGrid(int L, int N) : L_(L), N_(N), v_(static_cast<std::size_t>(L) * N, 0) {}
    long& at(int x, int y) { return v_[static_cast<std::size_t>(y) * L_ + x]; }
    long at(int x, int y) const { return v_[static_cast<std::size_t>(y) * L_ + x]; }
    int L() const { return L_; }
    int N() const { return N_; }
    long total() const;
    long min() const;

  private:
    int L_, N_;
    std::vector<long> v_;
};

FaceGrid relative_height(const Configuration& eta, const Configuration& eta2);

} // namespace qwtorus
