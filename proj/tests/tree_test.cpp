#include "cayley/tree.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

using namespace cayley;

namespace {
Vertex v(const std::string& s, int k = 2) { return Vertex::parse(s, k); }
}

TEST_CASE("word reduction cancels adjacent involutions") {
    CHECK(reduce({1, 1}, 2).is_root());
    CHECK(reduce({1, 2, 2, 3}, 2) == v("13"));
    CHECK(reduce({2, 1, 1, 2, 3}, 2) == v("3"));
    CHECK(reduce({}, 2).is_root());
    CHECK_THROWS_AS(reduce({0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(reduce({4}, 2), std::invalid_argument);
}

TEST_CASE("vertex parsing enforces the reduced-word invariant") {
    CHECK(v("").is_root());
    CHECK(v("132").length() == 3);
    CHECK(v("132").str() == "132");
    CHECK_THROWS_AS(Vertex::parse("11", 2), std::invalid_argument);
    CHECK_THROWS_AS(Vertex::parse("14", 2), std::invalid_argument);
    CHECK_THROWS_AS(Vertex::parse("", 0), std::invalid_argument);
}

TEST_CASE("neighbors, parent and children") {
    auto nb = neighbors_of(Vertex{}, 2);
    CHECK(nb == std::vector<Vertex>{v("1"), v("2"), v("3")});
    CHECK(v("12").parent() == v("1"));
    CHECK(children_of(v("1"), 2) == std::vector<Vertex>{v("12"), v("13")});
    CHECK(!parent_of(Vertex{}).has_value());
    CHECK_THROWS_AS(Vertex{}.parent(), std::invalid_argument);
    CHECK_THROWS_AS(v("1").child(1), std::invalid_argument);

    SECTION("every non-root vertex is a child of its parent") {
        for (const Vertex& x : enumerate_volume(2, 4)) {
            if (x.is_root()) continue;
            auto ch = children_of(x.parent(), 2);
            CHECK(std::find(ch.begin(), ch.end(), x) != ch.end());
        }
    }
}

TEST_CASE("distance equals reduced-word length and BFS") {
    CHECK(distance(v("1"), v("12"), 2) == 1);
    CHECK(distance(v("2"), v("3"), 2) == 2);
    CHECK(distance(Vertex{}, v("121"), 2) == 3);

    auto verts = enumerate_volume(2, 3);
    for (std::size_t i = 0; i < verts.size(); i += 3)
        for (std::size_t j = i; j < verts.size(); j += 5) {
            int d = distance(verts[i], verts[j], 2);
            CHECK(d == oracles::bfs_distance(verts[i], verts[j], 2));
            CHECK(d == distance(verts[j], verts[i], 2));
            CHECK((d == 0) == (verts[i] == verts[j]));
        }

    SECTION("triangle inequality on V_3") {
        for (std::size_t a = 0; a < verts.size(); a += 4)
            for (std::size_t b = 0; b < verts.size(); b += 5)
                for (std::size_t c = 0; c < verts.size(); c += 6)
                    CHECK(distance(verts[a], verts[c], 2) <=
                          distance(verts[a], verts[b], 2) + distance(verts[b], verts[c], 2));
    }
}

TEST_CASE("volume enumeration is canonical and matches closed forms") {
    CHECK(enumerate_volume(2, 2).size() == 10);
    CHECK(enumerate_volume(2, 3).size() == 22);
    CHECK(enumerate_volume(1, 3).size() == 7);

    for (int k : {1, 2, 3})
        for (int n = 0; n <= 4; ++n) {
            auto verts = enumerate_volume(k, n);
            CHECK(static_cast<long long>(verts.size()) == volume_size(k, n));
            CHECK(std::is_sorted(verts.begin(), verts.end()));
            CHECK(std::adjacent_find(verts.begin(), verts.end()) == verts.end());
        }
    CHECK(enumerate_sphere(2, 2).size() == 6);
    CHECK(sphere_size(3, 2) == 12);
}

TEST_CASE("coset index and the even sublattice") {
    CHECK(coset_index(v("121"), {1}, 2) == 0);
    CHECK(coset_index(v("121"), {2}, 2) == 1);
    CHECK(even_sublattice(v("12")));
    CHECK(!even_sublattice(v("3")));
    CHECK_THROWS_AS(coset_index(v("1"), std::span<const int>{}, 2), std::invalid_argument);

    SECTION("the coset map is a homomorphism to Z/2") {
        std::mt19937 rng(7);
        auto verts = enumerate_volume(2, 3);
        std::vector<int> a_set{1, 3};
        for (int trial = 0; trial < 200; ++trial) {
            const Vertex& x = verts[rng() % verts.size()];
            const Vertex& y = verts[rng() % verts.size()];
            std::vector<int> letters;
            for (std::size_t i = 0; i < x.length(); ++i) letters.push_back(x.letter(i));
            for (std::size_t i = 0; i < y.length(); ++i) letters.push_back(y.letter(i));
            Vertex xy = reduce(letters, 2);
            CHECK(coset_index(xy, a_set, 2) ==
                  (coset_index(x, a_set, 2) ^ coset_index(y, a_set, 2)));
        }
    }
}

TEST_CASE("unit-ball incidence underlying the ball decomposition") {
    // every edge inside V_4 lies in exactly the 2 balls centered at its
    // endpoints; every distance-2 pair inside V_4 lies in exactly 1
    const int k = 2, n = 4;
    auto verts = enumerate_volume(k, n);
    std::vector<UnitBall> balls;
    for (const Vertex& c : verts) balls.push_back(UnitBall::around(c, k));

    for (const Vertex& x : verts) {
        if (static_cast<int>(x.length()) >= n) continue;
        for (const Vertex& y : children_of(x, k)) {
            Edge e = Edge::between(x, y);
            int count = 0;
            for (const UnitBall& b : balls)
                if (b.contains(e)) ++count;
            CHECK(count == 2);
        }
    }
    int pairs_checked = 0;
    for (const Vertex& mid : verts) {
        auto nbrs = neighbors_of(mid, k);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                if (static_cast<int>(nbrs[i].length()) > n ||
                    static_cast<int>(nbrs[j].length()) > n)
                    continue;
                int count = 0;
                for (const UnitBall& b : balls)
                    if (b.contains(nbrs[i]) && b.contains(nbrs[j])) ++count;
                CHECK(count == 1);
                ++pairs_checked;
            }
    }
    CHECK(pairs_checked > 0);
}

TEST_CASE("edges normalize to parent-child order") {
    Edge e = Edge::between(v("12"), v("1"));
    CHECK(e.lo == v("1"));
    CHECK(e.hi == v("12"));
    CHECK_THROWS_AS(Edge::between(v("2"), v("3")), std::invalid_argument);
    CHECK(Edge::between(Vertex{}, v("1")) < Edge::between(Vertex{}, v("2")));
}

TEST_CASE("indexed volume navigation") {
    Volume vol(2, 3);
    CHECK(vol.size() == 22);
    CHECK(vol.count_within(2) == 10);
    CHECK(vol.count_within(0) == 1);
    CHECK(vol.vertex(0).is_root());
    CHECK(vol.parent_index(0) == -1);
    CHECK(vol.index_of(v("12")) > 0);
    CHECK(vol.contains(v("123")));
    CHECK(!vol.contains(Vertex::parse("1231", 2)));
    CHECK_THROWS_AS(vol.index_of(Vertex::parse("1231", 2)), std::invalid_argument);
    for (int i = 1; i < vol.size(); ++i) {
        int p = vol.parent_index(i);
        CHECK(vol.vertex(i).parent() == vol.vertex(p));
        auto ch = vol.children_indices(p);
        CHECK(std::find(ch.begin(), ch.end(), i) != ch.end());
    }
}
