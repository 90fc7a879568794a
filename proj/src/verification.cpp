#include "qwtorus/verification.hpp"

#include <algorithm>

#include "qwtorus/dimer.hpp"

namespace qwtorus {

void FrameSample::check() const {
    if (!(q >= 0 && q < 1)) throw structural_error("FrameSample: q must lie in [0, 1)");
    for (long v : {A, B, C, D, E, F, aux_B_p1, aux_D_p5})
        if (v < 0) throw structural_error("FrameSample: gaps must be nonnegative");
    if (B > A || F > A || C > D || E > D)
        throw structural_error("FrameSample: gap ordering violated (need B,F <= A and C,E <= D)");
    if (aux_D_p5 < D - E) throw structural_error("FrameSample: need aux_D_p5 >= D - E");
}

DerivativeTerms derivative_terms(const FrameSample& s) {
    s.check();
    const Rat& q = s.q;
    auto pw = [&q](long n) { return qpow(q, n); };
    auto one = Rat(1);

    const Rat dC1 = one - pw(s.C + 1);
    const Rat dF1 = one - pw(s.F + 1);
    const Rat dAB1 = one - pw(s.A - s.B + 1);
    const Rat dDE1 = one - pw(s.D - s.E + 1);

    DerivativeTerms t;
    t.s10 = pw(s.B) * (one - pw(s.D + 1)) / dC1
          - pw(s.D + 1) * (one - pw(s.B)) / dC1
          + pw(s.C + 1) * (one - pw(s.B)) * (one - pw(s.D + 1)) / (dC1 * dC1)
          + pw(s.A + 1) * (one - pw(s.aux_B_p1)) / dAB1;

    t.s11 = -pw(s.F + 1) * (one - pw(s.F + s.E + 1)) * (one - pw(s.A - s.F)) / (dF1 * dF1)
          - pw(s.E) * (one - pw(s.aux_D_p5 + 1)) / dDE1;

    t.s20 = pw(s.C + 1) * (one - pw(s.B + s.C + 1)) * (one - pw(s.D - s.C)) / (dC1 * dC1)
          + pw(s.B) * (one - pw(s.A + s.aux_B_p1 - s.B + 1)) / dAB1;

    t.s21 = pw(s.A + 1) * (one - pw(s.E)) / dF1
          - pw(s.E) * (one - pw(s.A + 1)) / dF1
          - pw(s.F + 1) * (one - pw(s.A + 1)) * (one - pw(s.E)) / (dF1 * dF1)
          - pw(s.D + 1) * (one - pw(s.E + s.aux_D_p5 - s.D)) / dDE1;
    return t;
}

FrameSample random_frame_sample(std::mt19937_64& rng, long max_gap, const Rat& q) {
    auto pick = [&rng](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    FrameSample s;
    s.q = q;
    s.A = pick(0, max_gap);
    s.B = pick(0, s.A);
    s.F = pick(0, s.A);
    s.D = pick(0, max_gap);
    s.C = pick(0, s.D);
    s.E = pick(0, s.D);
    s.aux_B_p1 = pick(0, max_gap);
    s.aux_D_p5 = pick(std::max(0L, s.D - s.E), max_gap);
    s.check();
    return s;
}

namespace detail {

// Iterative Tarjan; returns true iff the graph has a single SCC.
bool strongly_connected(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n <= 1) return true;
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    int counter = 0, sccs = 0;

    struct Frame {
        int v;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < adj[f.v].size()) {
                int w = adj[f.v][f.next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    ++sccs;
                    if (sccs > 1) return false;
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        if (w == f.v) break;
                    }
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return sccs == 1;
}

} // namespace detail

namespace {

ParticleRef particle_at(const Configuration& config, int x, int row) {
    auto r = config.row(row);
    for (int k = 0; k < config.m1(); ++k)
        if (r[k] == x) return {row, k};
    throw consistency_error("particle_at: no particle at the requested site");
}

} // namespace

std::vector<SingleMove> connect(const Configuration& eta, const Configuration& eta2) {
    Sector sector = sector_of(eta);
    if (!(sector == sector_of(eta2)))
        throw structural_error("connect: configurations lie in different sectors");
    if (!sector.proper()) throw sector_error("connect: needs a proper sector (m2 >= 1, strict bound)");

    const int L = sector.L, N = sector.N;
    Configuration cur = eta;
    DimerCover cover = to_dimers(cur);
    FaceGrid h = relative_height(cur, eta2);
    long remaining = h.total();

    std::vector<SingleMove> moves;
    moves.reserve(static_cast<std::size_t>(remaining));
    while (remaining > 0) {
        Face f{-1, -1};
        for (int y = 0; y < N && f.x < 0; ++y)
            for (int x = 0; x < L; ++x)
                if (h.at(x, y) > 0) { f = {x, y}; break; }
        if (f.x < 0) throw consistency_error("connect: positive total height but no positive face");

        // Walk across unoccupied white-on-left edges; the height is
        // non-decreasing along such steps and the walk cannot revisit a face.
        long guard = static_cast<long>(L) * N + 1;
        for (;;) {
            bool moved = false;
            for (FaceStep st : {FaceStep::e2_plus, FaceStep::e1_minus, FaceStep::down_right}) {
                if (!cover.crossing_occupied(f, st)) {
                    f = cover.neighbor_face(f, st);
                    moved = true;
                    break;
                }
            }
            if (!moved) break; // stuck: all three alternating edges are dimers
            if (--guard < 0) throw consistency_error("connect: walk revisited a face");
        }

        if (h.at(f.x, f.y) <= 0) throw consistency_error("connect: stuck face has nonpositive height");
        moves.push_back({f.y, f.x});
        cur = cur.shifted(std::vector<ParticleRef>{particle_at(cur, f.x, f.y)}, +1);
        cover = cover.rotated(f);
        h.at(f.x, f.y) -= 1;
        --remaining;
    }

    if (!(cur == eta2)) throw consistency_error("connect: heights vanished before reaching the target");
    return moves;
}

Configuration replay_moves(const Configuration& eta, const std::vector<SingleMove>& moves) {
    Configuration cur = eta;
    for (const SingleMove& mv : moves) {
        cur = cur.shifted(std::vector<ParticleRef>{particle_at(cur, mv.x, mv.row)}, +1);
        if (!validate(cur)) throw consistency_error("replay_moves: intermediate configuration is invalid");
    }
    return cur;
}

} // namespace qwtorus
