#pragma once

// Contour machinery under the +1 boundary condition: connected minus
// components, their edge boundaries (subcontours), contours as maximal
// adjacency-connected sets of subcontours, the boundary partition by
// ball class, the contour form of the conditional Hamiltonian, contour
// erasure, and reconstruction of a configuration from its contours.
// The minus-boundary picture is the global spin flip of all of this.

#include "cayley/configuration.hpp"
#include "cayley/errors.hpp"
#include "cayley/model.hpp"
#include "cayley/tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cayley {

// A maximal connected subgraph of minus vertices (inside the interior
// volume; the boundary is +1).
struct MinusComponent {
    std::vector<Vertex> vertices;  // sorted
    std::vector<Edge> edges;       // sorted; edges with both endpoints in the component
};

// The edge boundary of a minus component: every tree edge with exactly
// one endpoint in the component.  For a single-vertex component this is
// the set of its incident edges (the nearest-neighboring-edge form is
// equivalent whenever the component has an edge of its own).
struct Subcontour {
    std::vector<Edge> edges;      // sorted
    std::vector<Vertex> interior; // the component vertices
};

// A maximal set of subcontours pairwise connected through the relation
// dist(T1, T2) <= 2 on their support vertex sets.
struct Contour {
    std::vector<Subcontour> subcontours;  // ordered by smallest edge
    std::vector<Edge> support;            // union of subcontour edges, sorted
    std::vector<Vertex> interior;         // union of subcontour interiors, sorted
};

namespace detail {
inline void require_plus_boundary(const Configuration& c, const char* what) {
    if (c.boundary().kind() != BoundarySpec::Kind::constant_plus)
        throw std::invalid_argument(std::string(what) +
                                    " is implemented for the +1 boundary condition; use the "
                                    "global spin flip for the mirror case");
}

inline std::vector<Vertex> support_vertices(const std::vector<Edge>& edges) {
    std::vector<Vertex> verts;
    verts.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        verts.push_back(e.lo);
        verts.push_back(e.hi);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}
}  // namespace detail

inline std::vector<MinusComponent> minus_components(const Configuration& c) {
    detail::require_plus_boundary(c, "contour extraction");
    const Volume& vol = c.volume();
    std::vector<char> visited(vol.size(), 0);
    std::vector<MinusComponent> out;
    for (int start = 0; start < vol.size(); ++start) {
        if (visited[start] || c.spin_at_index(start) > 0) continue;
        MinusComponent comp;
        std::vector<int> stack{start};
        visited[start] = 1;
        std::vector<int> members;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            auto visit = [&](int w) {
                if (w >= 0 && !visited[w] && c.spin_at_index(w) < 0) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            };
            visit(vol.parent_index(v));
            for (int ch : vol.children_indices(v)) visit(ch);
        }
        std::sort(members.begin(), members.end());
        for (int v : members) {
            comp.vertices.push_back(vol.vertex(v));
            int p = vol.parent_index(v);
            if (p >= 0 && c.spin_at_index(p) < 0)
                comp.edges.push_back(Edge{vol.vertex(p), vol.vertex(v)});
        }
        std::sort(comp.edges.begin(), comp.edges.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline Subcontour subcontour_of(const MinusComponent& comp, int k) {
    if (comp.vertices.empty()) throw std::invalid_argument("empty minus component");
    std::set<Vertex> members(comp.vertices.begin(), comp.vertices.end());
    Subcontour sub;
    sub.interior = comp.vertices;
    for (const Vertex& v : comp.vertices) {
        for (const Vertex& w : neighbors_of(v, k))
            if (!members.count(w)) sub.edges.push_back(Edge::between(v, w));
    }
    std::sort(sub.edges.begin(), sub.edges.end());
    return sub;
}

// Groups subcontours into contours: connected components of the
// "support vertex sets within distance 2" relation.
inline std::vector<Contour> assemble_contours(std::vector<Subcontour> subs, int k) {
    int m = static_cast<int>(subs.size());
    std::vector<std::vector<Vertex>> verts(m);
    for (int i = 0; i < m; ++i) verts[i] = detail::support_vertices(subs[i].edges);

    auto adjacent = [&](int i, int j) {
        for (const Vertex& x : verts[i])
            for (const Vertex& y : verts[j])
                if (distance(x, y, k) <= 2) return true;
        return false;
    };

    std::vector<int> group(m, -1);
    int groups = 0;
    for (int i = 0; i < m; ++i) {
        if (group[i] >= 0) continue;
        int g = groups++;
        std::vector<int> stack{i};
        group[i] = g;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < m; ++b) {
                if (group[b] >= 0 || !adjacent(a, b)) continue;
                group[b] = g;
                stack.push_back(b);
            }
        }
    }

    std::vector<Contour> out(groups);
    for (int i = 0; i < m; ++i) out[group[i]].subcontours.push_back(std::move(subs[i]));
    for (Contour& gamma : out) {
        std::sort(gamma.subcontours.begin(), gamma.subcontours.end(),
                  [](const Subcontour& a, const Subcontour& b) {
                      return a.edges.front() < b.edges.front();
                  });
        for (const Subcontour& t : gamma.subcontours) {
            gamma.support.insert(gamma.support.end(), t.edges.begin(), t.edges.end());
            gamma.interior.insert(gamma.interior.end(), t.interior.begin(), t.interior.end());
        }
        std::sort(gamma.support.begin(), gamma.support.end());
        std::sort(gamma.interior.begin(), gamma.interior.end());
    }
    std::sort(out.begin(), out.end(), [](const Contour& a, const Contour& b) {
        return a.support.front() < b.support.front();
    });
    return out;
}

inline std::vector<Contour> extract_contours(const Configuration& c) {
    auto comps = minus_components(c);
    std::vector<Subcontour> subs;
    subs.reserve(comps.size());
    for (const auto& comp : comps) subs.push_back(subcontour_of(comp, c.k()));
    return assemble_contours(std::move(subs), c.k());
}

// The improper balls of a +1-boundary configuration, split into the
// 2k+3 parts indexed by (center spin, disagreeing neighbors).  Centers
// run over V_{n+1}.
struct BoundaryPartition {
    int k = 2;
    std::map<std::pair<int, int>, std::vector<Vertex>> parts;

    long long count(int eps, int i) const {
        auto it = parts.find({eps, i});
        return it == parts.end() ? 0 : static_cast<long long>(it->second.size());
    }
    long long total() const {
        long long t = 0;
        for (const auto& [key, balls] : parts) t += static_cast<long long>(balls.size());
        return t;
    }
};

inline BoundaryPartition boundary_partition(const Configuration& c) {
    detail::require_plus_boundary(c, "the boundary partition");
    Volume vol(c.k(), c.n() + 2);
    auto spins = detail::resolve_spins(c, vol);
    BoundaryPartition partition;
    partition.k = c.k();
    int centers = vol.count_within(c.n() + 1);
    for (int i = 0; i < centers; ++i) {
        SublatticeBallClass cls = detail::ball_class_at(vol, spins, i);
        if (cls.eps > 0 && cls.i == 0) continue;  // the all-plus ball is proper
        partition.parts[{cls.eps, cls.i}].push_back(vol.vertex(i));
    }
    return partition;
}

// Improper-ball counts of one contour: balls of each boundary part that
// meet the contour's vertex set (support endpoints together with the
// interior).  The interior must be included: a ball buried inside a
// thick minus region is improper without containing any support edge,
// yet erasing the contour destroys it, and the erasure counting
// identity holds exactly under this reading.
struct ContourStats {
    std::map<std::pair<int, int>, long long> counts;
    long long size = 0;  // total improper balls meeting the contour

    long long count(int eps, int i) const {
        auto it = counts.find({eps, i});
        return it == counts.end() ? 0 : it->second;
    }
};

inline ContourStats contour_stats(const Contour& gamma, const BoundaryPartition& partition) {
    std::vector<Vertex> territory = detail::support_vertices(gamma.support);
    territory.insert(territory.end(), gamma.interior.begin(), gamma.interior.end());
    std::sort(territory.begin(), territory.end());
    territory.erase(std::unique(territory.begin(), territory.end()), territory.end());
    auto touches = [&](const Vertex& center) {
        if (std::binary_search(territory.begin(), territory.end(), center)) return true;
        for (const Vertex& w : neighbors_of(center, partition.k))
            if (std::binary_search(territory.begin(), territory.end(), w)) return true;
        return false;
    };
    ContourStats stats;
    for (const auto& [key, balls] : partition.parts) {
        long long hit = 0;
        for (const Vertex& center : balls)
            if (touches(center)) ++hit;
        if (hit) {
            stats.counts[key] = hit;
            stats.size += hit;
        }
    }
    return stats;
}

// Contour representation of the conditional Hamiltonian:
//   sum_i (U_{+,i} - U_{+,0}) |part(+,i)| + sum_i (U_{-,i} - U_{+,0}) |part(-,i)|
//   + |M| U_{+,0},
// with M the balls centered in V_{n+1}.  Identically equal to the
// ball-sum form of the conditional Hamiltonian.
inline EnergyCoefficients contour_hamiltonian_form(const Configuration& c) {
    detail::require_plus_boundary(c, "the contour Hamiltonian");
    BoundaryPartition partition = boundary_partition(c);
    int k = c.k();
    EnergyCoefficients plus0 = class_energy(BallClass{+1, 0}, k);
    long long ball_count = volume_size(k, c.n() + 1);
    EnergyCoefficients total{plus0.a * ball_count, plus0.b * ball_count, plus0.c * ball_count};
    for (const auto& [key, balls] : partition.parts) {
        EnergyCoefficients gap = class_energy(BallClass{key.first, key.second}, k) - plus0;
        long long count = static_cast<long long>(balls.size());
        total += EnergyCoefficients{gap.a * count, gap.b * count, gap.c * count};
    }
    return total;
}

inline Rational contour_hamiltonian(const Configuration& c, const CouplingConstants& cc) {
    return eval(contour_hamiltonian_form(c), cc);
}

// Erases one contour: sets the spins on its interior to +1.  Every
// other contour of the configuration is untouched.
inline Configuration erase_contour(const Configuration& c, const Contour& gamma) {
    bool found = false;
    for (const Contour& g : extract_contours(c))
        if (g.support == gamma.support) found = true;
    if (!found)
        throw std::invalid_argument("the given contour is not a contour of this configuration");
    Configuration result = c;
    for (const Vertex& v : gamma.interior) result = result.with_spin(v, +1);
    return result;
}

// Rebuilds the spin configuration whose contour set is the given
// collection: -1 on every contour interior, +1 elsewhere.  Requires
// (i) every contour inside V_{n+1} and (ii) pairwise distance > 2.
inline Configuration config_from_contours(const std::vector<Contour>& contours, int k, int n) {
    for (const Contour& gamma : contours) {
        if (gamma.support.empty() || gamma.interior.empty())
            throw std::invalid_argument("contours must have nonempty support and interior");
        for (const Vertex& v : gamma.interior)
            if (static_cast<int>(v.length()) > n)
                throw std::invalid_argument("contour interior leaves V_" + std::to_string(n));
        for (const Edge& e : gamma.support)
            if (static_cast<int>(e.hi.length()) > n + 1)
                throw std::invalid_argument("contour support leaves V_" + std::to_string(n + 1));
    }
    for (std::size_t i = 0; i < contours.size(); ++i) {
        auto vi = detail::support_vertices(contours[i].support);
        for (std::size_t j = i + 1; j < contours.size(); ++j) {
            auto vj = detail::support_vertices(contours[j].support);
            for (const Vertex& x : vi)
                for (const Vertex& y : vj)
                    if (distance(x, y, k) <= 2)
                        throw std::invalid_argument(
                            "contour collection has two contours within distance 2");
        }
    }
    Configuration c = Configuration::constant(k, n, +1);
    std::vector<std::int8_t> interior = c.interior_spins();
    for (const Contour& gamma : contours)
        for (const Vertex& v : gamma.interior) interior[c.volume().index_of(v)] = -1;
    return c.with_interior(std::move(interior));
}

// Census of distinct contours through a given vertex, realizable by
// minus subsets of V_{volume_radius}: maps contour size |gamma| to the
// number of distinct contour supports of that size.
inline std::map<int, long long> count_contours_through(const Vertex& x, int k, int volume_radius,
                                                       long long cap = (1LL << 20)) {
    long long sites = volume_size(k, volume_radius);
    if (sites >= 62 || (1LL << sites) > cap)
        throw ResourceError("2^" + std::to_string(sites) +
                            " minus subsets exceed the enumeration cap " + std::to_string(cap));
    Configuration base = Configuration::constant(k, volume_radius, +1);
    std::set<std::vector<Edge>> seen;
    std::map<int, long long> by_size;
    for (long long mask = 1; mask < (1LL << sites); ++mask) {
        std::vector<std::int8_t> interior(sites, +1);
        for (int b = 0; b < sites; ++b)
            if (mask >> b & 1) interior[b] = -1;
        Configuration c = base.with_interior(std::move(interior));
        auto contours = extract_contours(c);
        BoundaryPartition partition = boundary_partition(c);
        for (const Contour& gamma : contours) {
            auto endpoints = detail::support_vertices(gamma.support);
            if (!std::binary_search(endpoints.begin(), endpoints.end(), x)) continue;
            if (!seen.insert(gamma.support).second) continue;
            by_size[static_cast<int>(contour_stats(gamma, partition).size)] += 1;
        }
    }
    return by_size;
}

}  // namespace cayley
