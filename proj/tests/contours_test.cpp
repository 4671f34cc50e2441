#include "cayley/contours.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

using namespace cayley;

namespace {
Vertex v(const std::string& s, int k = 2) { return Vertex::parse(s, k); }
Edge e(const std::string& a, const std::string& b) { return Edge::between(v(a), v(b)); }
const CouplingConstants kFerro{-1, 0, -1};

Configuration with_minus(int n, const std::vector<std::string>& minus) {
    Configuration c = Configuration::constant(2, n, +1);
    for (const auto& s : minus) c = c.with_spin(v(s), -1);
    return c;
}
}  // namespace

TEST_CASE("minus components") {
    CHECK(minus_components(Configuration::constant(2, 2, +1)).empty());

    auto comps = minus_components(with_minus(2, {"", "1"}));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].vertices == std::vector<Vertex>{Vertex{}, v("1")});
    CHECK(comps[0].edges == std::vector<Edge>{e("", "1")});

    auto two = minus_components(with_minus(2, {"2", "3"}));
    REQUIRE(two.size() == 2);
    CHECK(two[0].vertices == std::vector<Vertex>{v("2")});
    CHECK(two[0].edges.empty());
    CHECK(two[1].vertices == std::vector<Vertex>{v("3")});

    CHECK_THROWS_AS(minus_components(Configuration::constant(2, 2, -1)),
                    std::invalid_argument);
}

TEST_CASE("subcontours are the edge boundaries of minus components") {
    auto comps = minus_components(with_minus(2, {"", "1"}));
    Subcontour sub = subcontour_of(comps[0], 2);
    CHECK(sub.edges ==
          std::vector<Edge>{e("", "2"), e("", "3"), e("1", "12"), e("1", "13")});
    CHECK(sub.interior == std::vector<Vertex>{Vertex{}, v("1")});

    auto lone = minus_components(with_minus(2, {"2"}));
    CHECK(subcontour_of(lone[0], 2).edges ==
          std::vector<Edge>{e("", "2"), e("2", "21"), e("2", "23")});

    auto full_v1 = minus_components(with_minus(1, {"", "1", "2", "3"}));
    Subcontour rim = subcontour_of(full_v1[0], 2);
    CHECK(rim.edges.size() == 6);  // the six edges from W_1 into W_2
    for (const Edge& edge : rim.edges) {
        CHECK(edge.lo.length() == 1);
        CHECK(edge.hi.length() == 2);
    }
}

TEST_CASE("subcontours within distance two assemble into one contour") {
    auto contours = extract_contours(with_minus(2, {"2", "3"}));
    REQUIRE(contours.size() == 1);  // the vertex sets share the root
    CHECK(contours[0].subcontours.size() == 2);
    CHECK(contours[0].support.size() == 6);
    CHECK(contours[0].interior == std::vector<Vertex>{v("2"), v("3")});

    auto root_only = extract_contours(with_minus(2, {""}));
    REQUIRE(root_only.size() == 1);
    CHECK(root_only[0].support.size() == 3);

    // d([12],[32]) = 4, but their subcontour vertex sets meet at distance 2
    auto merged = extract_contours(with_minus(2, {"12", "32"}));
    CHECK(merged.size() == 1);

    // deeper minus vertices in different branches stay separate
    auto split = extract_contours(with_minus(3, {"121", "323"}));
    CHECK(split.size() == 2);
}

TEST_CASE("boundary partition by ball class") {
    BoundaryPartition empty = boundary_partition(Configuration::constant(2, 2, +1));
    CHECK(empty.total() == 0);

    BoundaryPartition root_only = boundary_partition(with_minus(2, {""}));
    CHECK(root_only.count(+1, 1) == 3);
    CHECK(root_only.count(-1, 3) == 1);
    CHECK(root_only.total() == 4);

    BoundaryPartition pair = boundary_partition(with_minus(2, {"2", "3"}));
    CHECK(pair.count(+1, 2) == 1);
    CHECK(pair.count(+1, 1) == 4);
    CHECK(pair.count(-1, 3) == 2);
    CHECK(pair.total() == 7);

    SECTION("parts are disjoint and union to the improper balls") {
        for (unsigned long long mask = 0; mask < 1024; ++mask) {
            Configuration c = oracles::config_from_mask(2, 2, mask);
            BoundaryPartition partition = boundary_partition(c);
            std::set<Vertex> centers;
            long long listed = 0;
            for (const auto& [key, balls] : partition.parts) {
                listed += static_cast<long long>(balls.size());
                centers.insert(balls.begin(), balls.end());
            }
            REQUIRE(listed == static_cast<long long>(centers.size()));
            auto improper = improper_balls(c, kFerro);
            REQUIRE(centers == std::set<Vertex>(improper.begin(), improper.end()));
        }
    }
}

TEST_CASE("contour statistics count improper balls meeting the support") {
    Configuration root_flip = with_minus(2, {""});
    auto contours = extract_contours(root_flip);
    ContourStats stats = contour_stats(contours[0], boundary_partition(root_flip));
    CHECK(stats.size == 4);
    CHECK(stats.count(+1, 1) == 3);
    CHECK(stats.count(-1, 3) == 1);

    Configuration pair = with_minus(2, {"2", "3"});
    auto merged = extract_contours(pair);
    ContourStats merged_stats = contour_stats(merged[0], boundary_partition(pair));
    CHECK(merged_stats.size == 7);
}

TEST_CASE("contour form of the conditional Hamiltonian") {
    Configuration root_flip = with_minus(2, {""});
    CHECK(contour_hamiltonian(root_flip, kFerro) == Rational(-47));
    CHECK(contour_hamiltonian(Configuration::constant(2, 2, +1), kFerro) == Rational(-55));
    CHECK(contour_hamiltonian(root_flip, CouplingConstants{0, 0, 0}) == 0);

    SECTION("identical to the ball sum for every V_2 configuration") {
        for (unsigned long long mask = 0; mask < 1024; ++mask) {
            Configuration c = oracles::config_from_mask(2, 2, mask);
            CHECK(contour_hamiltonian_form(c) == collapse(conditional_hamiltonian_form(c)));
        }
    }
}

TEST_CASE("erasing a contour") {
    Configuration root_flip = with_minus(2, {""});
    auto contours = extract_contours(root_flip);
    Configuration erased = erase_contour(root_flip, contours[0]);
    CHECK(extract_contours(erased).empty());
    for (int i = 0; i < erased.volume().size(); ++i) CHECK(erased.spin_at_index(i) == +1);

    SECTION("other contours are untouched") {
        Configuration two = with_minus(3, {"121", "323"});
        auto both = extract_contours(two);
        REQUIRE(both.size() == 2);
        Configuration one = erase_contour(two, both[0]);
        auto rest = extract_contours(one);
        REQUIRE(rest.size() == 1);
        CHECK(rest[0].support == both[1].support);
        ContourStats before = contour_stats(both[1], boundary_partition(two));
        ContourStats after = contour_stats(rest[0], boundary_partition(one));
        CHECK(before.counts == after.counts);
    }

    SECTION("a foreign contour is rejected") {
        auto foreign = extract_contours(with_minus(2, {"12"}));
        CHECK_THROWS_AS(erase_contour(root_flip, foreign[0]), std::invalid_argument);
    }
}

TEST_CASE("erasure counting identity and injectivity on V_2") {
    // for every configuration and every contour: the boundary counts of
    // the configuration split into the erased image plus the contour's
    std::map<std::vector<Edge>, std::set<std::vector<std::int8_t>>> images;
    for (unsigned long long mask = 0; mask < 1024; ++mask) {
        Configuration c = oracles::config_from_mask(2, 2, mask);
        BoundaryPartition before = boundary_partition(c);
        for (const Contour& gamma : extract_contours(c)) {
            Configuration erased = erase_contour(c, gamma);
            BoundaryPartition after = boundary_partition(erased);
            ContourStats stats = contour_stats(gamma, before);
            for (int eps : {+1, -1})
                for (int i = 0; i <= 3; ++i)
                    REQUIRE(before.count(eps, i) ==
                            after.count(eps, i) + stats.count(eps, i));
            images[gamma.support].insert(erased.interior_spins());

            auto endpoints = detail::support_vertices(gamma.support);
            for (const Contour& left : extract_contours(erased))
                for (const Edge& edge : left.support) {
                    CHECK(!std::binary_search(endpoints.begin(), endpoints.end(), edge.lo));
                    CHECK(!std::binary_search(endpoints.begin(), endpoints.end(), edge.hi));
                }
        }
    }
    // injectivity: distinct preimages gave distinct images per contour
    std::map<std::vector<Edge>, long long> domain_sizes;
    for (unsigned long long mask = 0; mask < 1024; ++mask) {
        Configuration c = oracles::config_from_mask(2, 2, mask);
        for (const Contour& gamma : extract_contours(c)) domain_sizes[gamma.support] += 1;
    }
    for (const auto& [support, domain] : domain_sizes)
        REQUIRE(static_cast<long long>(images[support].size()) == domain);
}

TEST_CASE("configurations rebuild from contour collections") {
    Configuration none = config_from_contours({}, 2, 2);
    CHECK(extract_contours(none).empty());

    Configuration root_flip = with_minus(2, {""});
    auto contours = extract_contours(root_flip);
    Configuration rebuilt = config_from_contours(contours, 2, 2);
    CHECK(rebuilt.interior_spins() == root_flip.interior_spins());

    SECTION("round trip over every V_2 configuration") {
        for (unsigned long long mask = 0; mask < 1024; ++mask) {
            Configuration c = oracles::config_from_mask(2, 2, mask);
            Configuration back = config_from_contours(extract_contours(c), 2, 2);
            REQUIRE(back.interior_spins() == c.interior_spins());
        }
    }

    SECTION("collections violating the separation property are rejected") {
        auto two = extract_contours(with_minus(3, {"121", "323"}));
        REQUIRE(two.size() == 2);
        CHECK_THROWS_AS(config_from_contours(two, 2, 2), std::invalid_argument);  // leaves V_2
        auto one = extract_contours(with_minus(2, {"2"}));
        auto other = extract_contours(with_minus(2, {"3"}));
        std::vector<Contour> close{one[0], other[0]};
        CHECK_THROWS_AS(config_from_contours(close, 2, 2), std::invalid_argument);
    }
}

TEST_CASE("contours of one configuration are pairwise separated") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 250; ++trial) {
        unsigned long long mask =
            (static_cast<unsigned long long>(rng()) << 32 | rng()) & ((1ull << 22) - 1);
        Configuration c = oracles::config_from_mask(2, 3, mask);
        auto contours = extract_contours(c);
        for (std::size_t i = 0; i < contours.size(); ++i) {
            auto vi = detail::support_vertices(contours[i].support);
            for (std::size_t j = i + 1; j < contours.size(); ++j) {
                auto vj = detail::support_vertices(contours[j].support);
                int best = 1 << 30;
                for (const Vertex& x : vi)
                    for (const Vertex& y : vj) best = std::min(best, distance(x, y, 2));
                REQUIRE(best > 2);
            }
        }
    }
}

TEST_CASE("census of contours through a vertex") {
    auto census = count_contours_through(Vertex{}, 2, 1);
    REQUIRE(census.count(4));
    CHECK(census[4] >= 1);  // the root-only contour has four improper balls
    for (const auto& [r, count] : census)
        CHECK(std::log(static_cast<double>(count)) <= 2.0 * r * (std::log(4.0) + 1.0));

    auto far = count_contours_through(v("121"), 2, 1);
    CHECK(far.empty());  // V_1 minus sets never reach that vertex

    CHECK_THROWS_AS(count_contours_through(Vertex{}, 2, 3, 1024), ResourceError);
}
