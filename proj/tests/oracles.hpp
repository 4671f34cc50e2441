#pragma once

// Test-side oracles, kept independent of the library code paths they
// check: breadth-first distances, a direct lattice-sum conditional
// Hamiltonian, and deterministic rational sampling.

#include "cayley/configuration.hpp"
#include "cayley/model.hpp"
#include "cayley/rational.hpp"
#include "cayley/tree.hpp"

#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace oracles {

using namespace cayley;

// Graph distance by breadth-first search over neighbor expansion.
inline int bfs_distance(const Vertex& a, const Vertex& b, int k) {
    if (a == b) return 0;
    std::set<Vertex> seen{a};
    std::queue<std::pair<Vertex, int>> frontier;
    frontier.emplace(a, 0);
    while (!frontier.empty()) {
        auto [v, d] = frontier.front();
        frontier.pop();
        for (const Vertex& w : neighbors_of(v, k)) {
            if (w == b) return d + 1;
            if (seen.insert(w).second) frontier.emplace(w, d + 1);
        }
    }
    return -1;  // unreachable on a tree
}

// Conditional Hamiltonian by direct lattice sums, equivalent to summing
// ball energies over centers in V_{n+1}:
//   J1 [ sum over edges inside V_{n+1} + 1/2 sum over edges to W_{n+2} ]
// + J2 sum over distance-2 pairs with midpoint in V_{n+1}
// + alpha sum over V_{n+1},
// evaluated entirely in rational arithmetic via vertex-level lookups.
inline Rational direct_conditional_hamiltonian(const Configuration& c,
                                               const CouplingConstants& cc) {
    int k = c.k();
    int n = c.n();
    auto inner = enumerate_volume(k, n + 1);
    Rational h = 0;
    for (const Vertex& v : inner) {
        for (const Vertex& w : children_of(v, k)) {
            Rational prod = c.spin(v) * c.spin(w);
            if (static_cast<int>(w.length()) <= n + 1)
                h += cc.j1 * prod;  // edge inside V_{n+1}
            else
                h += cc.j1 * prod / 2;  // edge into W_{n+2}
        }
        auto nbrs = neighbors_of(v, k);
        for (std::size_t x = 0; x < nbrs.size(); ++x)
            for (std::size_t y = x + 1; y < nbrs.size(); ++y)
                h += cc.j2 * c.spin(nbrs[x]) * c.spin(nbrs[y]);
        h += cc.alpha * c.spin(v);
    }
    return h;
}

// Improper balls straight from the definition: compare the ball's spins
// with the reference configuration's restriction, ball by ball.
inline std::vector<Vertex> improper_balls_by_definition(const Configuration& c,
                                                        const Configuration& reference) {
    std::vector<Vertex> out;
    for (const Vertex& center : enumerate_volume(c.k(), c.n() + 1)) {
        UnitBall ball = UnitBall::around(center, c.k());
        bool differs = c.spin(center) != reference.spin(center);
        for (const Vertex& w : ball.neighbor_list)
            if (c.spin(w) != reference.spin(w)) differs = true;
        if (differs) out.push_back(center);
    }
    return out;
}

struct RationalSampler {
    std::mt19937 rng;
    int max_num;
    int max_den;

    explicit RationalSampler(unsigned seed, int max_num = 8, int max_den = 4)
        : rng(seed), max_num(max_num), max_den(max_den) {}

    Rational next() {
        std::uniform_int_distribution<int> num(-max_num, max_num);
        std::uniform_int_distribution<int> den(1, max_den);
        return Rational(num(rng), den(rng));
    }

    Rational next_nonneg() {
        std::uniform_int_distribution<int> num(0, max_num);
        std::uniform_int_distribution<int> den(1, max_den);
        return Rational(num(rng), den(rng));
    }

    Rational next_nonzero() {
        Rational r = next();
        while (r == 0) r = next();
        return r;
    }

    int coin() { return std::uniform_int_distribution<int>(0, 1)(rng); }
};

// All 2^(k+2) spin patterns of one unit ball.
inline std::vector<std::pair<int, std::vector<int>>> all_ball_patterns(int k) {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int bits = 0; bits < (1 << (k + 2)); ++bits) {
        int center = (bits & 1) ? +1 : -1;
        std::vector<int> nbrs(k + 1);
        for (int i = 0; i <= k; ++i) nbrs[i] = (bits >> (i + 1) & 1) ? +1 : -1;
        out.emplace_back(center, std::move(nbrs));
    }
    return out;
}

// Interior assignment of V_n from a subset mask (canonical vertex order).
inline Configuration config_from_mask(int k, int n, unsigned long long mask,
                                      const BoundarySpec& boundary = BoundarySpec::plus()) {
    std::vector<std::int8_t> interior(volume_size(k, n));
    for (std::size_t i = 0; i < interior.size(); ++i)
        interior[i] = (mask >> i & 1) ? -1 : +1;
    return Configuration(k, n, std::move(interior), boundary);
}

}  // namespace oracles
