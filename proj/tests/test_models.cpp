#include "doctest.h"
#include "genring/models.hpp"

using namespace genring;

namespace {

bool all_pass(const AxiomReport& r) {
    for (auto& a : r.results)
        if (!a.passed()) return false;
    return true;
}

mpq_class dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i].q * b[i].q;
    return s;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("F contraction picks the chosen point") {
    auto F = make_F();
    PartialMap f(3, 2, {1, 1, 2});
    Fibered b{f, {F->point(1, 2), F->point(1, 1)}};
    CHECK(F->equal(*F->contract(F->point(3, 3), b), F->point(2, 2)));
    CHECK(F->is_zero(*F->contract(F->point(2, 3), b)));
    CHECK(F->equal(*F->mul(F->point(2, 2), b), F->point(3, 3)));
}

TEST_CASE("F maps to G(Z) by basis vectors") {
    auto F = make_F();
    auto G = make_G(Semiring::integers());
    auto h = hom_F_to_G(*F, *G);
    CHECK(G->equal(h.map(F->point(2, 3)), G->vec_int({0, 1, 0})));
    CHECK(check_homomorphism(h, 300, 4, 1).passed());
}

TEST_CASE("semiring laws") {
    for (auto S : {Semiring::naturals(), Semiring::integers(), Semiring::rationals(), Semiring::nonneg_rationals(),
                   Semiring::zmod(6), Semiring::tropical()})
        CHECK_MESSAGE(!check_semiring_laws(S, 500, 3), S.name());
}

TEST_CASE("G(N) and tropical contractions over the constant map") {
    auto GN = make_G(Semiring::naturals());
    CHECK(GN->equal(*GN->contract(GN->vec_int({2, 3}), as_fibered(GN->vec_int({1, 4}))), GN->vec_int({14})));
    auto T = make_G(Semiring::tropical());
    auto Tt = Semiring::tropical();
    CHECK(Tt.add(2, 5) == Scalar(5));
    CHECK(Tt.mul(2, 5) == Scalar(7));
    CHECK(T->equal(*T->contract(T->vec_int({2, 3}), as_fibered(T->vec_int({1, 4}))), T->vec_int({7})));
}

TEST_CASE("ball membership") {
    CHECK(ball_membership({Scalar(mpq_class(3, 5)), Scalar(mpq_class(4, 5))}) == BallMembership::UnitSphere);
    CHECK(ball_membership({Scalar(mpq_class(1, 2))}) == BallMembership::Interior);
    CHECK(ball_membership({Scalar(1), Scalar(1)}) == BallMembership::Outside);
    auto O = make_Oeta();
    CHECK_THROWS_AS(O->parse("g[1, 1]", 2), ParseError);
}

TEST_CASE("contraction stays in the unit ball") {
    auto O = make_Oeta();
    Rng rng(17);
    for (int t = 0; t < 2000; ++t) {
        int n = 1 + rng() % 4;
        auto a = O->sample(n, rng), b = O->sample(n, rng);
        mpq_class d = dot(O->coords(a), O->coords(b));
        CHECK(d * d <= 1);
        auto c = O->contract(a, as_fibered(b));
        REQUIRE(c);
        CHECK(O->coords(*c)[0].q == d);
    }
}

TEST_CASE("residue field of the real prime") {
    auto k = make_residue_field();
    auto one = k->one();
    CHECK(k->equal(*k->mul(one, as_fibered(one)), one));
    auto O = make_Oeta();
    auto h = hom_projection(*O, *k);
    CHECK(check_homomorphism(h, 300, 3, 2).passed());
}

TEST_CASE("sign monoid ring maps to G(Z)") {
    auto ends = sign_monoid_endomorphisms();
    CHECK(ends.size() == 2);
    auto signs = FiniteMonoid::signs();
    auto R = make_monoid_ring(signs);
    auto G = make_G(Semiring::integers());
    for (int img : ends) {
        auto h = hom_monoid_to_G(*R, *G, [&](const MElem& m) {
            int i = signs->index(m);
            if (i == 0) return Scalar(0);
            if (i == 1) return Scalar(1);
            return img == 1 ? Scalar(1) : Scalar(-1);
        });
        CHECK(check_homomorphism(h, 200, 3, 4).passed());
    }
}

TEST_CASE("axioms on the finite models") {
    HarnessOptions opt;
    for (RingPtr R : std::vector<RingPtr>{make_F(), make_G(Semiring::naturals()), make_G(Semiring::zmod(6)),
                                          make_G(Semiring::tropical()), make_monoid_ring(FiniteMonoid::signs())})
        CHECK_MESSAGE(all_pass(check_axioms(*R, opt)), R->name());
}

TEST_CASE("finite quotients of monoid rings") {
    auto P = make_monoid_ring(FreeMonoid::polynomial());
    auto z = FreeMonoid::polynomial()->gen(0);
    auto z2 = FreeMonoid::polynomial()->gen(0, 2);
    auto Q = finite_quotient(*P, {{P->scalar(z2), P->zero(1)}});
    CHECK(Q->enumerate(1)->size() == 3);
    CHECK(all_pass(check_axioms(*Q, HarnessOptions{200, 3, 1, true, true})));

    auto S = make_monoid_ring(FiniteMonoid::signs());
    CHECK(finite_quotient(*S, {})->enumerate(1)->size() == 3);
    auto collapsed = finite_quotient(*P, {{P->one(), P->zero(1)}});
    CHECK(collapsed->enumerate(1)->size() == 1);
    (void)z;
}

TEST_CASE("G(Z) endomorphisms are additive") {
    auto G = make_G(Semiring::integers());
    auto id = hom_G_to_G(*G, *G, [](const Scalar& s) { return s; });
    CHECK(check_homomorphism(id, 200, 3, 1).passed());
    auto neg = hom_G_to_G(*G, *G, [](const Scalar& s) { return Scalar(mpq_class(-s.q)); });
    CHECK_FALSE(check_homomorphism(neg, 200, 3, 1).passed());
}

TEST_CASE("monoid tables from JSON") {
    auto M = FiniteMonoid::from_json(
        R"({"name":"Z2","elements":["0","1","g"],"table":[[0,0,0],[0,1,2],[0,2,1]]})");
    CHECK(M->size() == 3);
    CHECK_FALSE(M->validate());
    CHECK_THROWS(FiniteMonoid::from_json(
        R"({"name":"bad","elements":["0","1","g"],"table":[[0,0,0],[0,1,2],[0,1,1]]})"));
}

TEST_CASE("element text round trips") {
    Rng rng(9);
    for (RingPtr R : std::vector<RingPtr>{make_F(), make_G(Semiring::integers()), make_Oeta(),
                                          make_monoid_ring(FreeMonoid::two_sided())})
        for (int t = 0; t < 50; ++t) {
            int n = rng() % 4;
            auto a = R->sample(n, rng);
            CHECK(R->equal(R->parse(R->format(a), n), a));
        }
}

}
