#include "qwtorus/dimer.hpp"

#include <algorithm>

namespace qwtorus {

namespace {

int mod(int a, int L) {
    int r = a % L;
    return r < 0 ? r + L : r;
}

struct StepDelta {
    int dx, dy;
};

StepDelta step_delta(FaceStep s) {
    switch (s) {
        case FaceStep::e1_plus: return {1, 0};
        case FaceStep::e1_minus: return {-1, 0};
        case FaceStep::e2_plus: return {0, 1};
        case FaceStep::e2_minus: return {0, -1};
        case FaceStep::up_left: return {-1, 1};
        case FaceStep::down_right: return {1, -1};
    }
    throw consistency_error("unreachable step");
}

} // namespace

DimerCover::DimerCover(Sector sector, std::vector<EdgeKind> kinds)
    : sector_(sector), kind_(std::move(kinds)) {
    if (kind_.size() != static_cast<std::size_t>(sector_.L) * sector_.N)
        throw structural_error("DimerCover: kind array size mismatch");
    if (count(EdgeKind::vertical) != sector_.n1() || count(EdgeKind::northwest) != sector_.n2())
        throw consistency_error("DimerCover: dimer counts disagree with the sector");
}

long DimerCover::count(EdgeKind k) const {
    return std::count(kind_.begin(), kind_.end(), k);
}

DimerCover::Crossing DimerCover::crossing(Face f, FaceStep step) const {
    const int L = sector_.L, N = sector_.N;
    const int x = mod(f.x, L), y = mod(f.y, N);
    switch (step) {
        case FaceStep::e1_plus: return {mod(x + 1, L), y, EdgeKind::vertical, +1};
        case FaceStep::e1_minus: return {x, y, EdgeKind::vertical, -1};
        case FaceStep::e2_plus: return {mod(x + 1, L), y, EdgeKind::northwest, -1};
        case FaceStep::e2_minus: return {mod(x + 1, L), mod(y - 1, N), EdgeKind::northwest, +1};
        case FaceStep::up_left: return {x, y, EdgeKind::northeast, +1};
        case FaceStep::down_right: return {mod(x + 1, L), mod(y - 1, N), EdgeKind::northeast, -1};
    }
    throw consistency_error("unreachable step");
}

bool DimerCover::crossing_occupied(Face f, FaceStep step) const {
    Crossing c = crossing(f, step);
    return at(c.wx, c.wy) == c.kind;
}

Face DimerCover::neighbor_face(Face f, FaceStep step) const {
    StepDelta d = step_delta(step);
    return {mod(f.x + d.dx, sector_.L), mod(f.y + d.dy, sector_.N)};
}

bool DimerCover::rotatable(Face f) const {
    return crossing_occupied(f, FaceStep::e1_minus) && crossing_occupied(f, FaceStep::e2_plus) &&
           crossing_occupied(f, FaceStep::down_right);
}

DimerCover DimerCover::rotated(Face f) const {
    if (!rotatable(f)) throw consistency_error("rotated: face is not rotatable");
    const int L = sector_.L, N = sector_.N;
    const int x = mod(f.x, L), y = mod(f.y, N);
    std::vector<EdgeKind> k = kind_;
    auto set = [&](int wx, int wy, EdgeKind kind) { k[static_cast<std::size_t>(wy) * L + wx] = kind; };
    // {V(x,y), NW(x+1,y), NE(x+1,y-1)} -> {NE(x,y), V(x+1,y), NW(x+1,y-1)}
    set(x, y, EdgeKind::northeast);
    set(mod(x + 1, L), y, EdgeKind::vertical);
    set(mod(x + 1, L), mod(y - 1, N), EdgeKind::northwest);
    return DimerCover(sector_, std::move(k));
}

DimerCover to_dimers(const Configuration& config) {
    const int L = config.L(), N = config.N();
    Sector sector = sector_of(config);
    std::vector<EdgeKind> kind(static_cast<std::size_t>(L) * N, EdgeKind::northeast);
    auto set = [&](int wx, int wy, EdgeKind k) { kind[static_cast<std::size_t>(wy) * L + wx] = k; };
    for (int r = 0; r < N; ++r) {
        for (int k = 0; k < config.m1(); ++k) {
            NeighborFrame f = neighbor_frame(config, {r, k});
            const int x = config.position({r, k});
            set(x, r, EdgeKind::vertical);
            // whites in (x, x+F] match up-left, the rest of the window
            // (x+F, x+A] straight up (already northeast).
            for (int t = 1; t <= f.F; ++t) set(mod(x + t, L), r, EdgeKind::northwest);
        }
    }
    return DimerCover(sector, std::move(kind));
}

Configuration from_dimers(const DimerCover& cover) {
    const int L = cover.L(), N = cover.N();
    std::vector<std::vector<int>> rows(N);
    for (int y = 0; y < N; ++y)
        for (int x = 0; x < L; ++x)
            if (cover.at(x, y) == EdgeKind::vertical) rows[y].push_back(x);
    Configuration c = Configuration::checked(L, N, std::move(rows));
    if (!(sector_of(c) == cover.sector())) throw consistency_error("from_dimers: sector mismatch");
    return c;
}

FacePath FacePath::from_faces(int L, int N, const std::vector<Face>& faces) {
    if (faces.empty()) throw structural_error("FacePath: empty face list");
    std::vector<FaceStep> steps;
    steps.reserve(faces.size() - 1);
    for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
        const Face a = faces[i], b = faces[i + 1];
        bool found = false;
        for (FaceStep s : {FaceStep::e1_plus, FaceStep::e1_minus, FaceStep::e2_plus, FaceStep::e2_minus,
                           FaceStep::up_left, FaceStep::down_right}) {
            StepDelta d = step_delta(s);
            if (mod(a.x + d.dx, L) == mod(b.x, L) && mod(a.y + d.dy, N) == mod(b.y, N)) {
                steps.push_back(s);
                found = true;
                break;
            }
        }
        if (!found)
            throw structural_error("FacePath: faces (" + std::to_string(a.x) + "," + std::to_string(a.y) +
                                   ") and (" + std::to_string(b.x) + "," + std::to_string(b.y) +
                                   ") are not adjacent");
    }
    return FacePath(faces.front(), std::move(steps));
}

bool FacePath::closed(int L, int N) const {
    int dx = 0, dy = 0;
    for (FaceStep s : steps_) {
        StepDelta d = step_delta(s);
        dx += d.dx;
        dy += d.dy;
    }
    return mod(dx, L) == 0 && mod(dy, N) == 0;
}

std::pair<int, int> FacePath::winding(int L, int N) const {
    int dx = 0, dy = 0;
    for (FaceStep s : steps_) {
        StepDelta d = step_delta(s);
        dx += d.dx;
        dy += d.dy;
    }
    if (mod(dx, L) != 0 || mod(dy, N) != 0) throw structural_error("winding: path is not closed");
    return {dx / L, dy / N};
}

long height_along(const DimerCover& cover, const FacePath& path) {
    long h = 0;
    Face f = path.start();
    for (FaceStep s : path.steps()) {
        auto c = cover.crossing(f, s);
        if (cover.at(c.wx, c.wy) == c.kind) h += c.sign;
        f = cover.neighbor_face(f, s);
    }
    return h;
}

FacePath e1_loop(int L, int y) {
    return FacePath({0, y}, std::vector<FaceStep>(static_cast<std::size_t>(L), FaceStep::e1_plus));
}

FacePath e2_loop(int N, int x) {
    return FacePath({x, 0}, std::vector<FaceStep>(static_cast<std::size_t>(N), FaceStep::e2_plus));
}

FacePath gamma_loop(const DimerCover& cover, Face start) {
    const long cap = 4L * cover.L() * cover.N() * std::max(1, cover.sector().winding_h() + cover.sector().winding_v());
    const Face home{mod(start.x, cover.L()), mod(start.y, cover.N())};
    std::vector<FaceStep> steps;
    Face f = home;
    long n = 0;
    do {
        FaceStep s = cover.crossing_occupied(f, FaceStep::e2_plus) ? FaceStep::e1_plus : FaceStep::e2_plus;
        steps.push_back(s);
        f = cover.neighbor_face(f, s);
        if (++n > cap) throw consistency_error("gamma_loop failed to close");
    } while (!(f == home));
    return FacePath(home, std::move(steps));
}

long FaceGrid::total() const {
    long t = 0;
    for (long x : v_) t += x;
    return t;
}

long FaceGrid::min() const {
    return *std::min_element(v_.begin(), v_.end());
}

FaceGrid relative_height(const Configuration& eta, const Configuration& eta2) {
    if (eta.L() != eta2.L() || eta.N() != eta2.N() || eta.m1() != eta2.m1())
        throw structural_error("relative_height: torus dimensions differ");
    if (!(sector_of(eta) == sector_of(eta2)))
        throw structural_error("relative_height: configurations lie in different sectors");
    const int L = eta.L(), N = eta.N();
    DimerCover c1 = to_dimers(eta), c2 = to_dimers(eta2);

    auto delta = [&](Face f, FaceStep s) -> long {
        auto cr = c1.crossing(f, s);
        long d = 0;
        if (c1.at(cr.wx, cr.wy) == cr.kind) d += cr.sign;
        if (c2.at(cr.wx, cr.wy) == cr.kind) d -= cr.sign;
        return d;
    };

    FaceGrid h(L, N);
    for (int x = 1; x < L; ++x) h.at(x, 0) = h.at(x - 1, 0) + delta({x - 1, 0}, FaceStep::e1_plus);
    for (int x = 0; x < L; ++x)
        for (int y = 1; y < N; ++y) h.at(x, y) = h.at(x, y - 1) + delta({x, y - 1}, FaceStep::e2_plus);

    // Closure over every face edge; fails only on internal inconsistency
    // since equal sectors already guarantee a well-defined gradient.
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < N; ++y) {
            if (h.at(mod(x + 1, L), y) != h.at(x, y) + delta({x, y}, FaceStep::e1_plus))
                throw consistency_error("relative_height: e1 closure failed");
            if (h.at(x, mod(y + 1, N)) != h.at(x, y) + delta({x, y}, FaceStep::e2_plus))
                throw consistency_error("relative_height: e2 closure failed");
        }

    const long m = h.min();
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < N; ++y) h.at(x, y) -= m;
    return h;
}

} // namespace qwtorus
