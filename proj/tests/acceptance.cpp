// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "genring/arith.hpp"
#include "genring/plane.hpp"
#include "oracles.hpp"

using namespace genring;

namespace {

// Pinned limits.
constexpr double kAxiomSeconds = 60;
constexpr double kTreeSeconds = 300;
constexpr double kArithSeconds = 30;
constexpr int kAxiomTrials = 500;
constexpr int kAxiomShape = 4;
constexpr int kCauchySchwarzTrials = 10000;
constexpr int kTreeNodes = 8;
constexpr int kTreeOracleCap = 10;
constexpr int kWordLength = 4;
constexpr int kIsoShape = 2;
constexpr int kEquivBudget = 12;
constexpr int kDivisorTrials = 200;
constexpr long kDivisorMax = 1000000;
constexpr int kMembershipCases = 1000;
constexpr long kGridMax = 1000;
constexpr int kSurjectiveBound = 3;
constexpr int kSurjectiveShape = 3;
constexpr std::uint64_t kSeed = 20261015;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

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

// {0, 1, g} with g^2 = 1.
std::shared_ptr<FiniteMonoid> cyclic_two() {
    return std::make_shared<FiniteMonoid>("C2", std::vector<std::string>{"0", "1", "g"},
                                          std::vector<std::vector<int>>{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}},
                                          std::vector<int>{0, 1, 2});
}

Outcome axiom_suite() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    struct Case {
        RingPtr ring;
        bool tree;
        int self_adjoint;  // 1 must pass, 0 must fail, -1 not asserted
    };
    std::vector<Case> cases{
        {make_F(), false, -1},
        {make_G(Semiring::naturals()), false, 1},
        {make_G(Semiring::integers()), false, 1},
        {make_G(Semiring::zmod(6)), false, 1},
        {make_G(Semiring::tropical()), false, 1},
        {make_Oeta(), false, 1},
        {make_monoid_ring(FiniteMonoid::signs()), false, -1},
        {make_Delta(), true, 0},
        {make_Upsilon(), true, 0},
    };
    const std::vector<std::string> required{"associativity",   "left_adjunction", "right_adjunction", "left_linearity",
                                            "right_linearity", "unit",            "commutativity"};
    int rings = 0;
    for (auto& c : cases) {
        HarnessOptions opt{kAxiomTrials, kAxiomShape, kSeed, true, !c.tree};
        AxiomReport r = check_axioms(*c.ring, opt);
        for (auto& name : required) {
            auto* a = r.find(name);
            o.require(a && a->trials >= kAxiomTrials && a->passed(), c.ring->name() + " " + name);
        }
        auto* sa = r.find("self_adjoint");
        if (c.self_adjoint == 1) o.require(sa && sa->passed(), c.ring->name() + " self_adjoint should pass");
        if (c.self_adjoint == 0)
            o.require(sa && !sa->passed() && sa->counterexample, c.ring->name() + " self_adjoint should fail");
        ++rings;
    }
    double s = seconds_since(t0);
    o.require(s <= kAxiomSeconds, "runtime");
    if (o.pass) o.detail = std::to_string(rings) + " rings, " + std::to_string(kAxiomTrials) + " trials, " +
                           std::to_string(s).substr(0, 5) + "s";
    return o;
}

Outcome cauchy_schwarz() {
    Outcome o;
    auto O = make_Oeta();
    Rng rng(kSeed);
    int violations = 0;
    for (int t = 0; t < kCauchySchwarzTrials; ++t) {
        int n = 1 + t % kAxiomShape;
        auto a = O->sample(n, rng), b = O->sample(n, rng);
        if (norm2(O->coords(a)) > 1 || norm2(O->coords(b)) > 1) {
            ++violations;
            continue;
        }
        auto c = O->contract(a, as_fibered(b));
        if (!c || norm2(O->coords(*c)) > 1) ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    if (o.pass) o.detail = std::to_string(kCauchySchwarzTrials) + " exact trials, 0 violations";
    return o;
}

Outcome tree_partitions() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    long trees = 0;
    for (TreeKind kind : {TreeKind::Plain, TreeKind::Oriented}) {
        auto part = closure_partition(kind, kTreeOracleCap);
        std::map<std::string, std::string> canon_to_class, class_to_canon;
        for (int n = 1; n <= kTreeNodes; ++n)
            for (auto& t : kind == TreeKind::Plain ? all_trees(n) : all_oriented_trees(n)) {
                ++trees;
                std::string c = to_text(canonicalize(t, kind));
                std::string p = part.at(to_text(t));
                auto a = canon_to_class.emplace(c, p).first;
                auto b = class_to_canon.emplace(p, c).first;
                o.require(a->second == p && b->second == c, "disagreement at " + to_text(t));
            }
    }
    double s = seconds_since(t0);
    o.require(s <= kTreeSeconds, "runtime");
    if (o.pass) o.detail = std::to_string(trees) + " trees, 0 disagreements, " + std::to_string(s).substr(0, 5) + "s";
    return o;
}

Outcome delta_one_iso() {
    Outcome o;
    auto r = check_delta1_iso(delta1_iso(), kWordLength, kIsoShape);
    o.require(r.mismatches == 0 && r.checked > 0, r.witness.value_or("no checks"));
    if (o.pass) o.detail = std::to_string(r.checked) + " comparisons";
    return o;
}

Outcome enumeration_tables() {
    Outcome o;
    auto U = make_Upsilon();
    long trees = 0;
    for (int N = 0; N <= 6; ++N) {
        OrientedTable t = enumerate_oriented(N);
        o.require(t.complete, "oriented " + std::to_string(N) + " incomplete");
        std::string file = std::string(GENRING_GOLDEN_DIR_SRC) + "/oriented_" + std::to_string(N) + ".tsv";
        o.require(slurp(file) == oriented_tsv(t), "oriented_" + std::to_string(N) + ".tsv differs");
        for (auto& c : t.classes)
            for (auto& m : c.members) {
                ++trees;
                int sum = 0;
                for (int k : tree_partition(m)) sum += k;
                o.require(sum == N - 1, "partition identity fails at " + to_text(m));
            }
    }
    for (int N = 1; N <= 3; ++N) {
        FiberTable t = nabla_fiber(*U, N, 12, kEquivBudget);
        o.require(t.complete && t.unknown_pairs == 0, "fiber " + std::to_string(N) + " incomplete");
        std::string file = std::string(GENRING_GOLDEN_DIR_SRC) + "/fiber_" + std::to_string(N) + ".tsv";
        o.require(slurp(file) == fiber_tsv(*U, t), "fiber_" + std::to_string(N) + ".tsv differs");
        if (N == 1) o.require(t.classes.size() == 1, "fiber 1 has " + std::to_string(t.classes.size()) + " classes");
    }
    int identified = 0;
    for (auto& [a, b] : selfadjoint_fixtures()) {
        auto r = selfadjoint_equiv(*U, U->parse(a, 1), U->parse(b, 1), kEquivBudget);
        o.require(r.verdict == Verdict::Equivalent, "not confirmed: " + a + " ~ " + b);
        ++identified;
    }
    if (o.pass)
        o.detail = "10 golden tables stable, " + std::to_string(identified) + " identifications, " + std::to_string(trees) +
                   " trees satisfy the partition identity";
    return o;
}

std::vector<long> sieve(long bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<long> out;
    for (long p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= bound; q += p) composite[q] = true;
    }
    return out;
}

Outcome spectra() {
    Outcome o;
    PolyMonoidIdeals P(false);
    auto S = spectrum(P);
    o.require(S.points.size() == 2 && S.points[0].label == "(0)" && S.points[1].label == "(z)", "spec F[z^N]");
    o.require(S.points.size() == 2 && is_closed_point(P, S, 1) && !is_closed_point(P, S, 0), "closed point");
    o.require(generic_points(P, S, {0, 1}) == std::vector<int>{0}, "generic point");
    PolyMonoidIdeals L(true);
    auto SL = spectrum(L);
    o.require(SL.points.size() == 1 && SL.points[0].label == "(0)", "spec F[z^Z]");
    SymbolicGIdeals Z6(SymbolicGIdeals::Kind::Zmod, 6);
    o.require(spectrum(Z6).points.size() == 2, "spec G(Z/6)");
    FiniteIdeals F6(make_G(Semiring::zmod(6)), 2);
    int finite_primes = 0;
    for (auto& a : F6.h_ideals()) finite_primes += F6.is_prime(a);
    o.require(finite_primes == 2, "spec G(Z/6) on the finite carrier");

    const long bound = 100;
    SymbolicGIdeals Z(SymbolicGIdeals::Kind::Z, 0);
    auto SZ = spectrum(Z, bound);
    std::vector<std::string> want{"(0)"};
    for (long p : sieve(bound)) want.push_back("(" + std::to_string(p) + ")");
    std::vector<std::string> got;
    for (auto& p : SZ.points) got.push_back(p.label);
    o.require(got == want, "spec G(Z) differs from spec Z");

    long checked = 0;
    for (RingPtr A : std::vector<RingPtr>{make_F(), make_monoid_ring(FiniteMonoid::signs()), make_G(Semiring::zmod(4)),
                                          make_G(Semiring::zmod(6)), make_monoid_ring(truncated_powers()),
                                          make_monoid_ring(swapped_pair())}) {
        FiniteIdeals T(A, 2);
        auto r = check_spectral_identities(T);
        checked += r.checked;
        o.require(!r.witness, A->name() + ": " + r.witness.value_or(""));
    }
    if (o.pass) o.detail = "fixtures match, " + std::to_string(checked) + " lattice identities on 6 finite rings";
    return o;
}

Outcome localization_and_gluing() {
    Outcome o;
    auto iso = check_poly_localization(kWordLength, kIsoShape);
    o.require(!iso.witness && iso.checked > 0, "localization: " + iso.witness.value_or("no checks"));

    auto GZ = make_G(Semiring::integers());
    auto v = [&](long x) { return GZ->vec_int({x}); };
    auto cert = [&](long s) {
        return [&, s](const std::vector<Element>& g) { return gz_certificate(*GZ, v(s), g); };
    };
    int glued = 0;
    auto glue_ok = [&](const GlueResult& r, const Ring& A, const Element& want, const std::string& name) {
        o.require(r.ok && A.equal(r.a, want), "gluing " + name + ": " + r.message);
        glued += r.ok;
    };
    glue_ok(glue_sections(*GZ, v(6), {v(12), v(18)}, {GZ->vec_int({2, 4}), GZ->vec_int({3, 6})}, cert(6)), *GZ,
            GZ->vec_int({1, 2}), "G(Z) over D_6");
    glue_ok(glue_sections(*GZ, v(1), {v(2), v(3)}, {v(2), v(3)}, cert(1)), *GZ, v(1), "G(Z) over D_1");
    glue_ok(glue_sections(*GZ, v(1), {v(2), v(3), v(5)}, {v(6), v(9), v(15)}, cert(1)), *GZ, v(3),
            "G(Z) three charts");
    auto R = make_monoid_ring(truncated_powers());
    FiniteIdeals T(R, 2);
    auto z = R->parse("[x:1, m:z]", 1), z2 = R->parse("[x:1, m:z2]", 1);
    auto fc = [&](const std::vector<Element>& g) { return finite_certificate(T, z, g); };
    auto m = glue_sections(*R, z, {z2}, {z}, fc);
    o.require(m.ok, "gluing F[Tz]: " + m.message);
    glued += m.ok;

    auto bad = glue_sections(*GZ, v(1), {v(2), v(3)}, {v(1), v(1)}, cert(1));
    o.require(!bad.ok && bad.incompatible && !bad.message.empty(), "incompatible sections accepted");
    if (o.pass)
        o.detail = std::to_string(iso.checked) + " localization checks, " + std::to_string(glued) +
                   " gluings, incompatible fixture rejected: " + bad.message;
    return o;
}

Outcome arithmetic() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(kSeed);
    for (int t = 0; t < kDivisorTrials; ++t) {
        long p = 1 + (long)(rng() % kDivisorMax), q = 1 + (long)(rng() % kDivisorMax);
        if (t % 50 == 0) p = q;  // exercise the kernel
        mpq_class f(rng() % 2 ? p : -p, q);
        f.canonicalize();
        Divisor D = div(f);
        NormValue n = norm_map(D);
        o.require(n.exact && n.q == 1, "norm of div(" + f.get_str() + ")");
        o.require(D.is_zero() == (abs(f) == 1), "kernel at " + f.get_str());
    }

    const std::vector<long> tower{2, 6, 30, 210};
    for (int t = 0; t < kDivisorTrials; ++t) {
        mpq_class f(long(1 + rng() % kDivisorMax), long(1 + rng() % kDivisorMax));
        f.canonicalize();
        std::vector<LevelDivisor> seq;
        for (long N : tower) seq.push_back(level_restrict(div(f), N));
        for (size_t i = 0; i < tower.size(); ++i)
            for (size_t j = i; j < tower.size(); ++j)
                o.require(pro_push(seq[i], tower[j]) == seq[j], "pushforward at " + f.get_str());
        auto r = pro_divisor_checks(seq);
        o.require(r.monotone && r.bounded && r.stabilized && r.limit == div(f), "tower of " + f.get_str());
    }

    int members = 0;
    for (auto& c : oracle::an_fixture(kMembershipCases, kSeed)) {
        std::vector<mpq_class> v;
        for (auto& x : c.v) v.emplace_back(mpz_class(std::to_string(x.p)), mpz_class(std::to_string(x.q)));
        bool want = oracle::in_AN(c.N, c.v);
        members += want;
        o.require(an_membership(c.N, v) == want, "membership disagrees at N=" + std::to_string(c.N));
    }

    auto g = tower_global_sections(squarefree_upto(30), kGridMax);
    o.require(g == std::vector<mpq_class>{-1, 0, 1}, "global sections differ from {0, ±1}");
    double s = seconds_since(t0);
    o.require(s <= kArithSeconds, "runtime");
    if (o.pass)
        o.detail = std::to_string(kDivisorTrials) + " divisors, tower coherent, " + std::to_string(kMembershipCases) +
                   " memberships (" + std::to_string(members) + " members), sections {-1, 0, 1}, " +
                   std::to_string(s).substr(0, 5) + "s";
    return o;
}

Outcome tensor_and_plane() {
    Outcome o;
    NBRing R(FiniteMonoid::signs());
    auto GZ = make_G(Semiring::integers());
    auto s = check_sign_surjectivity(R, *GZ, kSurjectiveBound, kSurjectiveShape);
    o.require(!s.witness && s.checked > 0, "surjectivity: " + s.witness.value_or("no checks"));

    auto signs = FiniteMonoid::signs();
    auto tz = truncated_powers();
    auto c2 = cyclic_two();
    auto base = trivial_monoid();
    long pairs = 0;
    auto law = [&](const FiniteMonoid& M0, const FiniteMonoid& M1, const FiniteMonoid& N, const std::vector<int>& p0,
                   const std::vector<int>& p1, const std::string& name) {
        auto po = monoid_pushout(M0, M1, N, p0, p1);
        auto r = check_pushout_law(po, M0, M1, N, p0, p1, {signs.get(), tz.get(), c2.get(), po.P.get()});
        pairs += r.pairs;
        o.require(!r.witness && r.pairs > 0, "pushout " + name + ": " + r.witness.value_or("no pairs"));
    };
    law(*signs, *tz, *base, {0, 1}, {0, 1}, "signs and Tz");
    law(*c2, *signs, *c2, {0, 1, 2}, {0, 1, 2}, "C2 and signs over C2");
    if (o.pass)
        o.detail = std::to_string(s.checked) + " vectors with explicit preimages, " + std::to_string(pairs) +
                   " compatible pairs";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"axiom suite", axiom_suite},
        {"Cauchy-Schwarz closure", cauchy_schwarz},
        {"canonical-form soundness", tree_partitions},
        {"Delta over one point", delta_one_iso},
        {"enumeration tables", enumeration_tables},
        {"spectra fixtures", spectra},
        {"localization and gluing", localization_and_gluing},
        {"arithmetic", arithmetic},
        {"tensor and plane", tensor_and_plane},
    };
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
                  << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
