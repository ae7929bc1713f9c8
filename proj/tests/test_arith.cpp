#include "doctest.h"
#include "genring/arith.hpp"
#include "oracles.hpp"

using namespace genring;

namespace {

std::vector<mpq_class> to_mpq(const std::vector<oracle::Frac>& v) {
    std::vector<mpq_class> out;
    for (auto& f : v) out.emplace_back(mpz_class(std::to_string(f.p)), mpz_class(std::to_string(f.q)));
    return out;
}

}  // namespace

TEST_SUITE("arith") {

TEST_CASE("A_N membership examples") {
    CHECK(an_membership(5, {mpq_class(3, 5), mpq_class(4, 5)}));
    CHECK_FALSE(an_membership(3, {mpq_class(1, 2)}));
    CHECK_FALSE(an_membership(2, {mpq_class(1), mpq_class(1)}));
    CHECK_THROWS_AS(an_membership(12, {mpq_class(1, 2)}), std::invalid_argument);
}

TEST_CASE("A_N membership against the integer oracle") {
    auto cases = oracle::an_fixture(1000, 20261015);
    int members = 0;
    for (auto& c : cases) {
        bool want = oracle::in_AN(c.N, c.v);
        members += want;
        CHECK(an_membership(c.N, to_mpq(c.v)) == want);
    }
    CHECK(members > 100);
    CHECK(members < 900);
}

TEST_CASE("A_N is a generalized ring") {
    ANRing A(30);
    HarnessOptions opt;
    opt.trials = 200;
    for (auto& r : check_axioms(A, opt).results) CHECK_MESSAGE(r.passed(), r.axiom);
    CHECK(A.is_invertible(A.parse("g[-1]", 1)));
    CHECK_FALSE(A.is_invertible(A.parse("g[1/2]", 1)));
    CHECK(A.in_maximal_ideal(A.parse("g[1/2]", 1)));
    CHECK_THROWS_AS(A.parse("g[1/7]", 1), ParseError);
}

TEST_CASE("principal divisors") {
    Divisor D = div(mpq_class(12, 5));
    CHECK(D.at(2) == 2);
    CHECK(D.at(3) == 1);
    CHECK(D.at(5) == -1);
    CHECK(D.r == mpq_class(12, 5));
    CHECK(norm_map(D).exact);
    CHECK(norm_map(D).q == 1);
    CHECK(div(mpq_class(-1)).is_zero());
    CHECK(div(mpq_class(1)).is_zero());
    CHECK_FALSE(div(mpq_class(2)).effective());
    CHECK(norm_map(prime_divisor(2)).q == 2);
    CHECK_THROWS_AS(div(mpq_class(0)), std::invalid_argument);
    CHECK(format_divisor(D) == "2[2] + 1[3] + -1[5] + -log(12/5)[eta]");
}

TEST_CASE("div is a homomorphism with kernel {±1}") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 300; ++t) {
        auto rnd = [&] {
            long p = 1 + rng() % 5000, q = 1 + rng() % 5000;
            return mpq_class(rng() % 2 ? p : -p, q);
        };
        mpq_class f = rnd(), g = rnd();
        f.canonicalize();
        g.canonicalize();
        CHECK(div(f * g) == div(f) + div(g));
        CHECK(norm_map(div(f)).q == 1);
        CHECK(div(f).is_zero() == (abs(f) == 1));
    }
}

TEST_CASE("approximate archimedean parts stay separate") {
    Divisor e = eta_divisor(0.5);
    CHECK_FALSE(e.exact());
    Divisor s = e + div(mpq_class(2));
    CHECK_FALSE(s.exact());
    CHECK_FALSE(norm_map(s).exact);
    CHECK_THROWS(level_restrict(s, 2));
}

TEST_CASE("level pushforward") {
    LevelDivisor D2 = level_restrict(div(mpq_class(12, 5)), 2);
    LevelDivisor D30 = pro_push(D2, 30);
    CHECK(D30.nu.at(3) == 1);
    CHECK(D30.nu.at(5) == -1);
    CHECK(D30 == level_restrict(div(mpq_class(12, 5)), 30));
    CHECK(pro_push(D2, 2) == D2);
    CHECK_THROWS(pro_push(D2, 15));
    // pushforward composes along the tower
    const std::vector<long> tower{2, 6, 30, 210};
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        mpq_class f(long(1 + rng() % 100000), long(1 + rng() % 100000));
        f.canonicalize();
        LevelDivisor D = level_restrict(div(f), 2);
        for (size_t i = 0; i + 1 < tower.size(); ++i) {
            for (size_t j = i + 1; j < tower.size(); ++j)
                CHECK(pro_push(pro_push(D, tower[i]), tower[j]) == pro_push(D, tower[j]));
        }
        CHECK(pro_push(D, 210) == level_restrict(div(f), 210));
    }
}

TEST_CASE("pro-divisor checks") {
    mpq_class f(12, 5);
    std::vector<LevelDivisor> seq;
    for (long N : {2L, 6L, 30L, 210L}) seq.push_back(level_restrict(div(f), N));
    auto r = pro_divisor_checks(seq);
    CHECK(r.monotone);
    CHECK(r.bounded);
    CHECK(r.stabilized);
    CHECK(r.limit == div(f));

    auto rising = seq;
    for (size_t i = 0; i < rising.size(); ++i) rising[i].nu[2] = 2 + (long)i;
    auto rr = pro_divisor_checks(rising);
    CHECK_FALSE(rr.monotone);
    CHECK_FALSE(rr.stabilized);
    CHECK(rr.witness);

    std::vector<LevelDivisor> broken{seq[0], seq[0]};
    broken[1].N = 3;
    CHECK_THROWS_AS(pro_divisor_checks(broken), std::invalid_argument);
}

TEST_CASE("tower JSON") {
    auto seq = parse_tower_json(
        R"({"levels":[2,6],"components":{"2":[2,2],"3":[null,1],"eta":["12/5","12/5"]}})");
    REQUIRE(seq.size() == 2);
    CHECK(seq[1].nu.at(3) == 1);
    CHECK(seq[0].r == mpq_class(12, 5));
    CHECK_THROWS_AS(parse_tower_json(R"({"levels":[2],"components":{"2":[1,2]}})"), ParseError);
    CHECK_THROWS_AS(parse_tower_json("{"), ParseError);
}

TEST_CASE("global sections over the tower") {
    std::vector<long> tower = squarefree_upto(30);
    auto g = tower_global_sections(tower, 200);
    std::vector<mpq_class> want{-1, 0, 1};
    CHECK(g == want);
}

TEST_CASE("maps to the projective line") {
    auto d = p1_map(mpq_class(12, 5));
    CHECK(d.N0 == 6);
    CHECK(d.Ninf == 5);
    CHECK_FALSE(d.constant);
    CHECK(chart_consistent(d));
    CHECK(invert(d) == p1_map(mpq_class(5, 12)));
    CHECK(invert(invert(d)) == d);
    auto c = p1_map(mpq_class(-1));
    CHECK(c.constant);
    CHECK(c.charts.size() == 1);
}

}
