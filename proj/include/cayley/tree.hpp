#pragma once

// Geometry of the order-k Cayley tree through its group representation:
// vertices are reduced words over k+1 involutive generators, so every
// neighbor step appends or removes one letter and graph distance equals
// word arithmetic.  All operations here are pure functions on values.

#include "cayley/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

// A tree vertex as a reduced word of generator indices 1..k+1.  The word
// is stored as its digit string ("132"); the root is the empty word.
// Requires k+1 <= 9 so that one digit per letter is unambiguous.
class Vertex {
public:
    Vertex() = default;

    std::size_t length() const { return word_.size(); }
    bool is_root() const { return word_.empty(); }
    int letter(std::size_t i) const { return word_[i] - '0'; }
    int last_letter() const { return word_.back() - '0'; }

    Vertex parent() const {
        if (is_root()) throw std::invalid_argument("root has no parent");
        Vertex p;
        p.word_ = word_.substr(0, word_.size() - 1);
        return p;
    }

    // Appends generator j; j must differ from the last letter (a_j^2 = e).
    Vertex child(int j) const {
        if (!is_root() && j == last_letter())
            throw std::invalid_argument("child letter would cancel");
        Vertex c;
        c.word_ = word_ + static_cast<char>('0' + j);
        return c;
    }

    const std::string& str() const { return word_; }

    static Vertex parse(const std::string& s, int k) {
        check_order(k);
        Vertex v;
        for (char c : s) {
            int j = c - '0';
            if (j < 1 || j > k + 1)
                throw std::invalid_argument("invalid generator '" + std::string(1, c) +
                                            "' in vertex \"" + s + "\"");
            if (!v.word_.empty() && v.word_.back() == c)
                throw std::invalid_argument("vertex word \"" + s + "\" is not reduced");
            v.word_ += c;
        }
        return v;
    }

    // Canonical order: by length, then lexicographically.  This is the
    // enumeration order of volumes and the tiebreak everywhere a
    // deterministic listing is needed.
    friend bool operator<(const Vertex& a, const Vertex& b) {
        if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
        return a.word_ < b.word_;
    }
    friend bool operator==(const Vertex& a, const Vertex& b) = default;

    static void check_order(int k) {
        if (k < 1) throw std::invalid_argument("tree order k must be >= 1");
        if (k > 8) throw std::invalid_argument("vertex string format supports k <= 8");
    }

private:
    std::string word_;
};

struct TreeParams {
    int k = 2;  // branching order: every vertex has k+1 neighbors
    int n = 0;  // volume radius
};

// Cancels adjacent equal letters until the word is reduced.
inline Vertex reduce(std::span<const int> letters, int k) {
    Vertex::check_order(k);
    std::string stack;
    for (int j : letters) {
        if (j < 1 || j > k + 1)
            throw std::invalid_argument("generator index " + std::to_string(j) +
                                        " out of range 1.." + std::to_string(k + 1));
        char c = static_cast<char>('0' + j);
        if (!stack.empty() && stack.back() == c)
            stack.pop_back();
        else
            stack += c;
    }
    Vertex v;
    for (char c : stack) v = v.child(c - '0');
    return v;
}

inline Vertex reduce(std::initializer_list<int> letters, int k) {
    return reduce(std::span<const int>(letters.begin(), letters.size()), k);
}

inline std::optional<Vertex> parent_of(const Vertex& x) {
    if (x.is_root()) return std::nullopt;
    return x.parent();
}

// Children in ascending generator order (the letter equal to the last
// letter of x would cancel and is skipped).
inline std::vector<Vertex> children_of(const Vertex& x, int k) {
    std::vector<Vertex> out;
    out.reserve(x.is_root() ? k + 1 : k);
    for (int j = 1; j <= k + 1; ++j) {
        if (!x.is_root() && j == x.last_letter()) continue;
        out.push_back(x.child(j));
    }
    return out;
}

// All k+1 nearest neighbors: the parent (if any) plus the children.
inline std::vector<Vertex> neighbors_of(const Vertex& x, int k) {
    std::vector<Vertex> out;
    out.reserve(k + 1);
    if (!x.is_root()) out.push_back(x.parent());
    auto ch = children_of(x, k);
    out.insert(out.end(), ch.begin(), ch.end());
    return out;
}

// Graph distance d(x,y) = |x^{-1} y|; generators are involutions, so the
// inverse word is the reversed word.
inline int distance(const Vertex& x, const Vertex& y, int k) {
    std::vector<int> letters;
    letters.reserve(x.length() + y.length());
    for (std::size_t i = x.length(); i > 0; --i) letters.push_back(x.letter(i - 1));
    for (std::size_t i = 0; i < y.length(); ++i) letters.push_back(y.letter(i));
    return static_cast<int>(reduce(letters, k).length());
}

inline long long sphere_size(int k, int n) {
    if (n == 0) return 1;
    long long s = k + 1;
    for (int i = 1; i < n; ++i) s *= k;
    return s;
}

inline long long volume_size(int k, int n) {
    long long total = 1;
    for (int m = 1; m <= n; ++m) total += sphere_size(k, m);
    return total;
}

// All vertices of V_n in canonical order (by length, then lexicographic).
inline std::vector<Vertex> enumerate_volume(int k, int n) {
    Vertex::check_order(k);
    if (n < 0) throw std::invalid_argument("volume radius must be >= 0");
    std::vector<Vertex> verts;
    verts.reserve(static_cast<std::size_t>(volume_size(k, n)));
    verts.push_back(Vertex{});
    std::size_t gen_begin = 0;
    for (int depth = 1; depth <= n; ++depth) {
        std::size_t gen_end = verts.size();
        for (std::size_t i = gen_begin; i < gen_end; ++i)
            for (const Vertex& c : children_of(verts[i], k)) verts.push_back(c);
        gen_begin = gen_end;
    }
    return verts;
}

inline std::vector<Vertex> enumerate_sphere(int k, int n) {
    auto all = enumerate_volume(k, n);
    std::vector<Vertex> out;
    for (auto& v : all)
        if (static_cast<int>(v.length()) == n) out.push_back(std::move(v));
    return out;
}

// Coset index of x for the index-two subgroup given by generator subset A:
// 0 when the total count of letters from A in x is even, 1 otherwise.
inline int coset_index(const Vertex& x, std::span<const int> subset_a, int k) {
    if (subset_a.empty()) throw std::invalid_argument("generator subset A must be nonempty");
    std::uint32_t mask = 0;
    for (int j : subset_a) {
        if (j < 1 || j > k + 1)
            throw std::invalid_argument("subset index " + std::to_string(j) +
                                        " out of range 1.." + std::to_string(k + 1));
        mask |= 1u << j;
    }
    int parity = 0;
    for (std::size_t i = 0; i < x.length(); ++i)
        parity ^= (mask >> x.letter(i)) & 1u;
    return parity;
}

inline int coset_index(const Vertex& x, std::initializer_list<int> subset_a, int k) {
    return coset_index(x, std::span<const int>(subset_a.begin(), subset_a.size()), k);
}

// True iff |x| is even (the even sublattice of the bipartition).
inline bool even_sublattice(const Vertex& x) { return x.length() % 2 == 0; }

// An unordered nearest-neighbor pair, stored with the parent endpoint
// first; every tree edge is a parent-child pair.
struct Edge {
    Vertex lo, hi;

    static Edge between(const Vertex& x, const Vertex& y) {
        if (!y.is_root() && y.parent() == x) return Edge{x, y};
        if (!x.is_root() && x.parent() == y) return Edge{y, x};
        throw std::invalid_argument("vertices are not nearest neighbors");
    }

    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.lo == b.lo) return a.hi < b.hi;
        return a.lo < b.lo;
    }
    friend bool operator==(const Edge& a, const Edge& b) = default;
};

// A center with its k+1 neighbors in canonical order: parent first
// (when the center is not the root), then children by generator index.
struct UnitBall {
    Vertex center;
    std::vector<Vertex> neighbor_list;

    static UnitBall around(const Vertex& center, int k) {
        return UnitBall{center, neighbors_of(center, k)};
    }

    bool contains(const Vertex& x) const {
        if (x == center) return true;
        return std::find(neighbor_list.begin(), neighbor_list.end(), x) != neighbor_list.end();
    }

    bool contains(const Edge& e) const { return contains(e.lo) && contains(e.hi); }
};

// An indexed volume V_n: vertices in canonical order with parent and
// children links resolved to indices, for enumeration-heavy loops.
class Volume {
public:
    Volume(int k, int n) : k_(k), n_(n), verts_(enumerate_volume(k, n)) {
        parent_.assign(verts_.size(), -1);
        children_.assign(verts_.size(), {});
        depth_offsets_.assign(n + 2, 0);
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const Vertex& v = verts_[i];
            if (!v.is_root()) {
                int p = index_of(v.parent());
                parent_[i] = p;
                children_[p].push_back(static_cast<int>(i));
            }
        }
        for (std::size_t i = 0; i < verts_.size(); ++i)
            depth_offsets_[verts_[i].length() + 1] = static_cast<int>(i) + 1;
        for (int d = 1; d <= n + 1; ++d)
            depth_offsets_[d] = std::max(depth_offsets_[d], depth_offsets_[d - 1]);
    }

    int k() const { return k_; }
    int radius() const { return n_; }
    int size() const { return static_cast<int>(verts_.size()); }
    const Vertex& vertex(int i) const { return verts_[i]; }
    const std::vector<Vertex>& vertices() const { return verts_; }
    int depth(int i) const { return static_cast<int>(verts_[i].length()); }
    int parent_index(int i) const { return parent_[i]; }
    const std::vector<int>& children_indices(int i) const { return children_[i]; }

    // Number of vertices with depth <= d (prefix of the canonical order).
    int count_within(int d) const {
        if (d < 0) return 0;
        return depth_offsets_[std::min(d, n_) + 1];
    }

    int index_of(const Vertex& v) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
        if (it == verts_.end() || !(*it == v))
            throw std::invalid_argument("vertex \"" + v.str() + "\" not in V_" +
                                        std::to_string(n_));
        return static_cast<int>(it - verts_.begin());
    }

    bool contains(const Vertex& v) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
        return it != verts_.end() && *it == v;
    }

private:
    int k_, n_;
    std::vector<Vertex> verts_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_offsets_;
};

}  // namespace cayley
