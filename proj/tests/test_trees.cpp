#include <set>

#include "doctest.h"
#include "genring/trees.hpp"

using namespace genring;

namespace {

int leaves(const Tree& t) { return (int)t.boundary().size(); }

std::vector<const Tree*> at_leaves(const Tree& f, std::vector<const Tree*> gs) {
    std::vector<const Tree*> at(f.size(), nullptr);
    auto bd = f.boundary();
    for (size_t i = 0; i < bd.size(); ++i) at[bd[i]] = gs[i];
    return at;
}

int keep_first(int a, int) { return a; }

}  // namespace

TEST_SUITE("trees") {

TEST_CASE("grafting") {
    Tree T = parse_tree("((()())())");
    Tree pt = Tree::point();
    CHECK(normalize(graft(pt, at_leaves(pt, {&T}), keep_first)) == normalize(T));

    Tree s2 = Tree::star(2);
    CHECK(graft(s2, at_leaves(s2, {nullptr, nullptr}), keep_first).empty());

    Tree s3 = Tree::star(3);
    Tree g = graft(s2, at_leaves(s2, {&s2, &s3}), keep_first);
    CHECK(g.size() == 8);
    CHECK(leaves(g) == 5);

    Tree empty;
    Tree h = graft(s2, at_leaves(s2, {&s3, &empty}), keep_first);
    CHECK(normalize(h) == normalize(parse_tree("((()()()))")));
}

TEST_CASE("restriction to part of the boundary") {
    Tree t = parse_tree("((())())");
    std::vector<bool> all(t.size(), false), none(t.size(), false), side(t.size(), false);
    for (int v : t.boundary()) all[v] = true;
    CHECK(normalize(restrict_tree(t, all)) == normalize(t));
    CHECK(restrict_tree(t, none).empty());
    // keep only the deep leaf: the side leaf disappears and the ladder remains
    int deep = -1;
    for (int v : t.boundary())
        if (t.par[v] != 0) deep = v;
    side[deep] = true;
    CHECK(normalize(restrict_tree(t, side)) == normalize(parse_tree("((()))")));
}

TEST_CASE("transposition") {
    Tree t = parse_tree("((()())(()())(()()))");
    REQUIRE(t.size() == 10);
    Tree r = transpose_tree(t, 0, {{0, 1}, {0, 1}, {0, 1}});
    CHECK(r.size() == 9);
    CHECK(normalize(r) == normalize(parse_tree("((()()())(()()()))")));
    Tree back = transpose_tree(r, 0, {{0, 1, 2}, {0, 1, 2}});
    CHECK(normalize(back) == normalize(t));

    // k = n keeps the size: k(n+1) + 1 nodes before and n(k+1) + 1 after
    Tree sq = parse_tree("((()())(()()))");
    CHECK(transpose_tree(sq, 0, {{0, 1}, {0, 1}}).size() == sq.size());

    CHECK_THROWS_AS(transpose_tree(Tree::star(3), 0, {{}, {}, {}}), TreeError);
}

TEST_CASE("canonical forms") {
    Tree t = parse_tree("((()())(()())(()()))");
    Tree c = canonicalize(t, TreeKind::Plain);
    CHECK(c.size() == 9);
    auto orbit = orbit_oracle(t, TreeKind::Plain, 12);
    int min_size = 1 << 20;
    bool found = false;
    for (auto& m : orbit) {
        min_size = std::min(min_size, m.size());
        found = found || normalize(m) == c;
    }
    CHECK(found);
    CHECK(min_size == 9);

    Tree reduced = parse_tree("(()(()()))");
    CHECK(canonicalize(reduced, TreeKind::Plain) == normalize(reduced));
}

TEST_CASE("canonicalization agrees with the closure oracle up to 6 nodes") {
    for (TreeKind kind : {TreeKind::Plain, TreeKind::Oriented}) {
        auto part = closure_partition(kind, 6);
        std::map<std::string, std::string> rep_of_class;
        for (int n = 1; n <= 6; ++n)
            for (auto& t : kind == TreeKind::Plain ? all_trees(n) : all_oriented_trees(n)) {
                std::string canon = to_text(canonicalize(t, kind));
                const std::string& cls = part.at(to_text(t));
                auto [it, fresh] = rep_of_class.emplace(cls, canon);
                CHECK_MESSAGE(it->second == canon, to_text(t));
            }
        std::set<std::string> canons;
        for (auto& [cls, canon] : rep_of_class) canons.insert(canon);
        CHECK(canons.size() == rep_of_class.size());
    }
}

TEST_CASE("oriented reductions") {
    Tree unary = parse_tree("(e0 (e1 ()()))");
    CHECK_FALSE(is_one_reduced(unary));
    CHECK(reduce_oriented(unary) == normalize(parse_tree("(e1 ()())")));
    Tree chain = parse_tree("(e0 ()(e0 ()()))");
    CHECK_FALSE(is_o_reduced(chain));
    CHECK(reduce_oriented(chain) == normalize(parse_tree("(e0 ()()())")));
}

TEST_CASE("tree text round trip") {
    for (int n = 1; n <= 6; ++n)
        for (auto& t : all_trees(n)) CHECK(parse_tree(to_text(t)) == t);
    for (auto& t : all_oriented_trees(5)) CHECK(parse_tree(to_text(t)) == t);
    CHECK(to_text(Tree::star(3)) == "(()()())");
}

TEST_CASE("Delta unit and projection to G(N)") {
    auto D = make_Delta();
    auto GN = make_G(Semiring::naturals());
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        int n = 1 + rng() % 3;
        auto a = D->sample(n, rng);
        CHECK(D->equal(*D->mul(a, unit_fibered(*D, identity(n))), a));
    }
    CHECK(GN->equal(pi_to_GN(*D, *GN, D->delta(3)), GN->ones(3)));
    auto e = D->parse("{top=(()()()) | x1=(()()), x2=0, x3=() | sigma=[1->(1,1), 2->(1,2), 3->(3,1)]}", 3);
    CHECK(GN->equal(pi_to_GN(*D, *GN, e), GN->vec_int({2, 0, 1})));

    Homomorphism pi{D.get(), GN.get(), [&](const Element& x) { return pi_to_GN(*D, *GN, x); }};
    CHECK(check_homomorphism(pi, 200, 3, 5).passed());

    auto d2 = D->delta(2);
    PartialMap f(4, 2, {1, 1, 2, 2});
    auto prod = *D->mul(d2, Fibered{f, {d2, d2}});
    CHECK(GN->equal(pi_to_GN(*D, *GN, prod), GN->ones(4)));
}

TEST_CASE("datum text round trip") {
    auto D = make_Delta();
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        int n = rng() % 4;
        auto a = D->sample(n, rng);
        CHECK(D->equal(D->parse(D->format(a), n), a));
    }
}

TEST_CASE("evaluation homomorphisms") {
    auto D = make_Delta();
    auto GN = make_G(Semiring::naturals());
    EvalFamily ones{GN.get(), [&](int n) { return GN->ones(n); }, std::nullopt};
    CHECK_FALSE(check_family(ones, 3));
    CHECK(GN->equal(eval_hom(*D, ones, D->delta(3)), GN->ones(3)));

    auto DW = make_DeltaW(2);
    auto GZ = make_G(Semiring::integers());
    EvalFamily w{GZ.get(), nullptr, GZ->vec_int({2, -3})};
    CHECK(GZ->equal(eval_hom(*DW, w, DW->delta(2)), GZ->vec_int({2, -3})));
    Homomorphism h{DW.get(), GZ.get(), [&](const Element& e) { return eval_hom(*DW, w, e); }};
    CHECK(check_homomorphism(h, 200, 3, 8).passed());
}

TEST_CASE("Delta over one point matches the two-sided monoid ring") {
    auto iso = delta1_iso();
    auto r = check_delta1_iso(iso, 3, 2);
    CHECK(r.checked > 0);
    CHECK(r.mismatches == 0);
    CHECK_FALSE(r.witness);
}

TEST_CASE("Delta fails self-adjointness with a witness") {
    HarnessOptions opt;
    opt.trials = 200;
    opt.derived = false;
    auto r = check_axioms(*make_Delta(), opt);
    auto* sa = r.find("self_adjoint");
    REQUIRE(sa);
    CHECK_FALSE(sa->passed());
    CHECK(sa->counterexample);
    CHECK(r.find("associativity")->passed());
}

}
