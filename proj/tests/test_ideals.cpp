#include "doctest.h"
#include "genring/ideals.hpp"

using namespace genring;

namespace {

// {0, 1, z, z2} with z^3 = z^2.
std::shared_ptr<FiniteMonoid> truncated_powers() {
    return std::make_shared<FiniteMonoid>("Tz", std::vector<std::string>{"0", "1", "z", "z2"},
                                          std::vector<std::vector<int>>{{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 3}, {0, 3, 3, 3}},
                                          std::vector<int>{0, 1, 2, 3});
}

// {0, 1, z, w, zw} with z^2 = w^2 = 0 and the involution z <-> w.
std::shared_ptr<FiniteMonoid> swapped_pair() {
    return std::make_shared<FiniteMonoid>(
        "Zw", std::vector<std::string>{"0", "1", "z", "w", "zw"},
        std::vector<std::vector<int>>{
            {0, 0, 0, 0, 0}, {0, 1, 2, 3, 4}, {0, 2, 0, 4, 0}, {0, 3, 4, 0, 0}, {0, 4, 0, 0, 0}},
        std::vector<int>{0, 1, 3, 2, 4});
}

std::vector<std::string> formats(const FiniteIdeals& T, const std::vector<Ideal>& xs) {
    std::vector<std::string> out;
    for (auto& a : xs) out.push_back(T.format(a));
    return out;
}

}  // namespace

TEST_SUITE("ideals") {

TEST_CASE("symbolic G(Z) ideals") {
    SymbolicGIdeals Z(SymbolicGIdeals::Kind::Z, 0);
    CHECK(Z.format(Z.sum(Z.of(4), Z.of(6))) == "(2)");
    CHECK(Z.format(Z.product(Z.of(4), Z.of(6))) == "(24)");
    CHECK(Z.format(Z.quotient(Z.of(4), Z.of(2))) == "(2)");
    CHECK(Z.format(Z.radical(Z.of(12))) == "(6)");
    CHECK(Z.is_prime(Z.zero()));
    CHECK(Z.is_prime(Z.of(7)));
    CHECK_FALSE(Z.is_prime(Z.of(6)));
    CHECK(Z.contains(Z.of(3), Z.ring().parse("g[9]", 1)));
}

TEST_CASE("finite carriers agree with the symbolic model") {
    for (long n : {4L, 6L}) {
        SymbolicGIdeals S(SymbolicGIdeals::Kind::Zmod, n);
        FiniteIdeals F(make_G(Semiring::zmod(n)), 2);
        bool complete = false;
        auto sym = S.primes(50, complete);
        CHECK(complete);
        std::vector<Ideal> fin;
        for (auto& a : F.h_ideals())
            if (F.is_prime(a)) fin.push_back(a);
        CHECK(fin.size() == sym.size());
        for (auto& p : sym) {
            auto gen = F.generated({F.ring().parse("g[" + p.prime.gen.get_str() + "]", 1)});
            CHECK(F.is_prime(gen));
        }
    }
}

TEST_CASE("spectra") {
    PolyMonoidIdeals P(false);
    auto S = spectrum(P);
    REQUIRE(S.points.size() == 2);
    CHECK(S.complete);
    CHECK(S.points[0].label == "(0)");
    CHECK(S.points[1].label == "(z)");
    CHECK(is_closed_point(P, S, 1));
    CHECK_FALSE(is_closed_point(P, S, 0));
    CHECK(generic_points(P, S, {0, 1}) == std::vector<int>{0});

    PolyMonoidIdeals L(true);
    CHECK(spectrum(L).points.size() == 1);

    SymbolicGIdeals Z6(SymbolicGIdeals::Kind::Zmod, 6);
    CHECK(spectrum(Z6).points.size() == 2);

    SymbolicGIdeals Z(SymbolicGIdeals::Kind::Z, 0);
    auto SZ = spectrum(Z, 30);
    CHECK_FALSE(SZ.complete);
    std::vector<std::string> labels;
    for (auto& p : SZ.points) labels.push_back(p.label);
    CHECK(labels == std::vector<std::string>{"(0)", "(2)", "(3)", "(5)", "(7)", "(11)", "(13)", "(17)", "(19)",
                                             "(23)", "(29)"});
    std::string dot = spec_dot(P, S);
    CHECK(dot.find("p0 -> p1;") != std::string::npos);
    CHECK(dot.find("shape=box") != std::string::npos);
}

TEST_CASE("polynomial monoid ideals") {
    PolyMonoidIdeals P(false);
    CHECK(P.product(P.power(1), P.power(1)) == P.power(2));
    CHECK(P.sum(P.power(2), P.power(3)) == P.power(2));
    CHECK(P.radical(P.power(3)) == P.power(1));
    CHECK(P.is_prime(P.power(1)));
    CHECK_FALSE(P.is_prime(P.power(2)));
}

TEST_CASE("V/I and D-set identities on finite fixtures") {
    for (RingPtr A : std::vector<RingPtr>{make_G(Semiring::zmod(4)), make_G(Semiring::zmod(6)),
                                          make_monoid_ring(truncated_powers()), make_monoid_ring(swapped_pair())}) {
        FiniteIdeals T(A, 2);
        auto r = check_spectral_identities(T);
        CHECK(r.checked > 0);
        CHECK_MESSAGE(!r.witness, A->name(), r.witness.value_or(""));
    }
}

TEST_CASE("h-ideals of a truncated polynomial monoid") {
    FiniteIdeals T(make_monoid_ring(truncated_powers()), 2);
    auto hs = T.h_ideals();
    CHECK(formats(T, hs) == std::vector<std::string>{"{0}", "{0, z2}", "{0, z, z2}", "{0, 1, z, z2}"});
    CHECK(T.format(T.radical(T.principal(T.elem(T.index(T.ring().parse("[x:1, m:z2]", 1)))))) == "{0, z, z2}");
    for (auto& a : hs) CHECK(estable_check(T, a).verdict == Stability::Stable);
}

TEST_CASE("a non-homogeneous ideal is not stable") {
    FiniteIdeals T(make_monoid_ring(swapped_pair()), 2);
    int unstable = 0;
    for (auto& a : T.h_ideals()) {
        auto s = estable_check(T, a);
        if (!T.is_homogeneous(a)) {
            CHECK(s.verdict == Stability::Unstable);
            CHECK(s.witness);
            ++unstable;
        } else {
            CHECK(s.verdict == Stability::Stable);
        }
    }
    CHECK(unstable == 2);
}

TEST_CASE("monoid localization") {
    auto M = truncated_powers();
    auto Mz = localize_monoid(*M, powers_of(*M, 2));
    CHECK(Mz.M->size() == 2);
    auto same = localize_monoid(*M, {1});
    CHECK(same.M->size() == M->size());
    auto R = make_monoid_ring(M);
    FiniteIdeals T(R, 2);
    for (auto& p : T.h_ideals()) {
        if (!T.is_prime(p)) continue;
        auto Mp = localize_monoid(*M, prime_complement(T, p));
        CHECK(residue_monoid(*Mp.M)->size() == 2);
    }
}

TEST_CASE("localization of the polynomial monoid ring at z") {
    auto r = check_poly_localization(4, 2);
    CHECK(r.checked > 0);
    CHECK_FALSE(r.witness);
}

TEST_CASE("trivial localization") {
    auto G = make_G(Semiring::integers());
    LocalizedRing L(G, {G->one()}, "G(Z)");
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + rng() % 3;
        auto a = G->sample(n, rng), b = G->sample(n, rng);
        CHECK(L.equal(L.frac(a, G->one()), L.frac(b, G->one())) == G->equal(a, b));
    }
}

TEST_CASE("local ring of G(Z) at a prime") {
    CHECK(in_local_ring_at(3, mpq_class(5, 2)));
    CHECK_FALSE(in_local_ring_at(3, mpq_class(1, 3)));
    CHECK(in_local_ring_at(2, mpq_class(7, 9)));
}

TEST_CASE("gluing local fractions") {
    auto GZ = make_G(Semiring::integers());
    auto v = [&](long x) { return GZ->vec_int({x}); };
    auto cert = [&](long s) {
        return [&, s](const std::vector<Element>& g) { return gz_certificate(*GZ, v(s), g); };
    };

    auto r = glue_sections(*GZ, v(6), {v(12), v(18)}, {GZ->vec_int({2, 4}), GZ->vec_int({3, 6})}, cert(6));
    CHECK(r.ok);
    CHECK(GZ->equal(r.a, GZ->vec_int({1, 2})));

    auto r2 = glue_sections(*GZ, v(1), {v(2), v(3)}, {v(2), v(3)}, cert(1));
    CHECK(r2.ok);
    CHECK(GZ->equal(r2.a, v(1)));

    auto single = glue_sections(*GZ, v(5), {v(5)}, {v(7)}, cert(5));
    CHECK(single.ok);
    // a / s^M = 7 / 5
    CHECK(single.a.shape == 1);
    mpz_class sM;
    mpz_pow_ui(sM.get_mpz_t(), mpz_class(5).get_mpz_t(), single.M);
    CHECK(GZ->coords(single.a)[0].q * 5 == 7 * sM);

    auto bad = glue_sections(*GZ, v(1), {v(2), v(3)}, {v(1), v(1)}, cert(1));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.incompatible);
    CHECK(bad.message.find("disagree") != std::string::npos);

    auto R = make_monoid_ring(truncated_powers());
    FiniteIdeals T(R, 2);
    auto z = R->parse("[x:1, m:z]", 1), z2 = R->parse("[x:1, m:z2]", 1);
    auto fc = [&](const std::vector<Element>& g) { return finite_certificate(T, z, g); };
    auto m = glue_sections(*R, z, {z2}, {z}, fc);
    CHECK(m.ok);
}

}
