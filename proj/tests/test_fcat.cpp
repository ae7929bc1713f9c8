#include <random>

#include "doctest.h"
#include "genring/fcat.hpp"

using namespace genring;

namespace {

PartialMap random_pmap(int m, int n, std::mt19937_64& rng) {
    PartialMap f(m, n);
    for (int x = 1; x <= m; ++x) f.set(x, (int)(rng() % (n + 1)));
    return f;
}

}  // namespace

TEST_SUITE("fcat") {

TEST_CASE("compose follows the definition") {
    PartialMap f(2, 3, {2, 0});
    PartialMap g(3, 2, {0, 1, 0});
    CHECK(compose(g, f) == PartialMap(2, 2, {1, 0}));
    CHECK(compose(g, PartialMap(2, 3)).domain_size() == 0);
    CHECK_THROWS_AS(compose(f, f), ShapeError);
}

TEST_CASE("transpose of a partial bijection") {
    CHECK(transpose(PartialMap(2, 3, {2, 0})) == PartialMap(3, 2, {0, 1, 0}));
    CHECK(transpose(identity(4)) == identity(4));
    CHECK_THROWS_AS(transpose(constant_map(2)), ShapeError);
}

TEST_CASE("pullback apex sizes") {
    CHECK(pullback(identity(2), identity(2)).apex.size() == 2);
    PartialMap f(3, 2, {1, 1, 2});
    PartialMap g(3, 2, {1, 0, 1});
    auto p = pullback(g, f);
    size_t brute = 0;
    for (int z = 1; z <= 3; ++z)
        for (int x = 1; x <= 3; ++x)
            if (g(z) && g(z) == f(x)) ++brute;
    CHECK(p.apex.size() == brute);
    CHECK(p.apex.size() == (size_t)g.domain_size() * 2);
    CHECK(pullback(g, PartialMap(3, 2)).apex.empty());
    for (size_t i = 0; i < p.apex.size(); ++i) {
        CHECK(p.ft((int)i + 1) == p.apex[i].first);
        CHECK(p.gt((int)i + 1) == p.apex[i].second);
    }
}

TEST_CASE("fiber shapes") {
    auto fs = fiber_shapes(PartialMap(3, 2, {1, 1, 2}));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].y == 1);
    CHECK(fs[0].xs == std::vector<int>{1, 2});
    CHECK(fs[1].y == 2);
    CHECK(fs[1].xs == std::vector<int>{3});
    CHECK(fiber_shapes(PartialMap(2, 2)).empty());
}

TEST_CASE("quotient by a map") {
    PartialMap f(3, 2, {1, 1, 2});
    PartialMap q = quotient(f, f);
    CHECK(compose(q, f) == f);
    CHECK(q == PartialMap(2, 2, {1, 2}));

    PartialMap inj(2, 3, {3, 1});
    PartialMap h(2, 2, {2, 0});
    CHECK(quotient(h, inj) == compose(h, transpose(inj)));

    PartialMap bad(3, 2, {1, 2, 2});
    CHECK_FALSE(has_quotient(bad, PartialMap(3, 1, {1, 1, 1})));
    CHECK_THROWS_WITH_AS(quotient(bad, PartialMap(3, 1, {1, 1, 1})), "no quotient", ShapeError);
}

TEST_CASE("composition is associative with neutral identities") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        int a = 1 + rng() % 5, b = 1 + rng() % 5, c = 1 + rng() % 5, d = 1 + rng() % 5;
        auto f = random_pmap(a, b, rng), g = random_pmap(b, c, rng), h = random_pmap(c, d, rng);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        CHECK(compose(identity(b), f) == f);
        CHECK(compose(f, identity(a)) == f);
    }
}

TEST_CASE("text round trip") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        auto f = random_pmap(rng() % 5, 1 + rng() % 5, rng);
        CHECK(parse_pmap(to_string(f)) == f);
    }
}

}
