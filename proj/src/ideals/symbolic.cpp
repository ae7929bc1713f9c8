#include <algorithm>
#include <set>

#include "genring/ideals.hpp"

namespace genring {

namespace {

bool is_prime_number(const mpz_class& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Product of the distinct primes dividing g (g > 0).
mpz_class radical_of(mpz_class g) {
    mpz_class r = 1;
    for (mpz_class p = 2; p * p <= g; ++p) {
        if (g % p != 0) continue;
        r *= p;
        while (g % p == 0) g /= p;
    }
    if (g > 1) r *= g;
    return r;
}

// Removes the prime factors of N from g.
mpz_class strip(mpz_class g, long N) {
    if (g == 0) return g;
    for (;;) {
        mpz_class d = gcd(g, N);
        if (d == 1) return g;
        g /= d;
    }
}

}  // namespace

// ---------------------------------------------------------------- G(Z[1/N])

GZInvRing::GZInvRing(long N) : GRing(Semiring::rationals()), N_(N) {
    if (N < 2) throw std::invalid_argument("G(Z[1/N]) needs N >= 2");
}

bool GZInvRing::admissible(const std::vector<Scalar>& v) const {
    for (auto& s : v)
        if (strip(s.q.get_den(), N_) != 1) return false;
    return true;
}

Element GZInvRing::sample(int n, Rng& rng) const {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<int> pw(0, 2);
    std::vector<Scalar> v;
    for (int i = 0; i < n; ++i) {
        mpz_class den = 1;
        for (int k = pw(rng); k > 0; --k) den *= N_;
        v.emplace_back(mpq_class(num(rng), den));
    }
    return vec(std::move(v));
}

Element GZInvRing::parse(std::string_view s, int n) const {
    auto v = parse_gvector(semiring(), s);
    if (n >= 0 && (int)v.size() != n) throw ParseError(name() + ": wrong number of coordinates");
    if (!admissible(v)) throw ParseError(name() + ": denominator not a power of " + std::to_string(N_));
    return vec(std::move(v));
}

// ---------------------------------------------------------------- G(Z), G(Z/n), G(Z[1/N])

SymbolicGIdeals::SymbolicGIdeals(Kind kind, long n) : kind_(kind), n_(n) {
    switch (kind) {
        case Kind::Z: G_ = make_G(Semiring::integers()); break;
        case Kind::Zmod:
            if (n < 2) throw std::invalid_argument("G(Z/n) needs n >= 2");
            G_ = make_G(Semiring::zmod(n));
            break;
        case Kind::ZInv: G_ = std::make_shared<GZInvRing>(n); break;
    }
}

std::string SymbolicGIdeals::name() const { return G_->name(); }

Ideal SymbolicGIdeals::of(const mpz_class& g) const {
    mpz_class a = abs(g);
    if (kind_ == Kind::Zmod) a = gcd(a, n_);
    if (kind_ == Kind::ZInv) a = strip(a, n_);
    return Ideal{0, a};
}

mpz_class SymbolicGIdeals::value(const Element& a) const {
    if (a.shape != 1) throw ShapeError(name() + ": ideal members live in A_[1]");
    const auto& q = G_->coords(a)[0].q;
    return q.get_num();
}

Ideal SymbolicGIdeals::principal(const Element& a) const { return of(value(a)); }

Ideal SymbolicGIdeals::sum(const Ideal& a, const Ideal& b) const { return of(gcd(a.gen, b.gen)); }

Ideal SymbolicGIdeals::product(const Ideal& a, const Ideal& b) const { return of(a.gen * b.gen); }

Ideal SymbolicGIdeals::quotient(const Ideal& a0, const Ideal& a1) const {
    if (a1.gen == 0) return of(1);
    if (a0.gen == 0) return of(0);
    return of(a0.gen / gcd(a0.gen, a1.gen));
}

Ideal SymbolicGIdeals::radical(const Ideal& a) const {
    if (a.gen == 0) return a;
    return of(radical_of(a.gen));
}

Ideal SymbolicGIdeals::ann(const Element& m1, const Element& m2) const {
    if (m1.shape != m2.shape) throw ShapeError(name() + ": ann of elements of different shapes");
    const auto& u = G_->coords(m1);
    const auto& v = G_->coords(m2);
    if (kind_ == Kind::Zmod) {
        mpz_class g = n_;
        for (size_t i = 0; i < u.size(); ++i) g = gcd(g, mpz_class(u[i].q.get_num() - v[i].q.get_num()));
        return of(n_ / g);
    }
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i].q != v[i].q) return of(0);
    return of(1);
}

bool SymbolicGIdeals::contains(const Ideal& a, const Element& x) const {
    mpz_class v = value(x);
    if (kind_ == Kind::ZInv) v = strip(v, n_);
    if (a.gen == 0) return v == 0;
    return v % a.gen == 0;
}

bool SymbolicGIdeals::leq(const Ideal& a, const Ideal& b) const {
    if (b.gen == 0) return a.gen == 0;
    return a.gen % b.gen == 0;
}

bool SymbolicGIdeals::is_prime(const Ideal& a) const {
    if (a.gen == 0) return kind_ != Kind::Zmod;
    return is_prime_number(a.gen);
}

std::string SymbolicGIdeals::format(const Ideal& a) const {
    if (kind_ == Kind::Zmod && a.gen == n_) return "(0)";
    return "(" + a.gen.get_str() + ")";
}

std::vector<SpecPoint> SymbolicGIdeals::primes(long bound, bool& complete) const {
    std::vector<SpecPoint> out;
    auto add = [&](const Ideal& a) { out.push_back(SpecPoint{a, format(a)}); };
    if (kind_ == Kind::Zmod) {
        complete = true;
        for (long p = 2; p <= n_; ++p)
            if (n_ % p == 0 && is_prime_number(p)) add(of(p));
        return out;
    }
    complete = false;
    add(of(0));
    for (long p = 2; p <= bound; ++p)
        if (is_prime_number(p) && (kind_ != Kind::ZInv || n_ % p != 0)) add(of(p));
    return out;
}

// ---------------------------------------------------------------- F[z^N], F[z^Z]

PolyMonoidIdeals::PolyMonoidIdeals(bool laurent)
    : laurent_(laurent),
      R_(make_monoid_ring(laurent ? FreeMonoid::laurent() : FreeMonoid::polynomial())) {}

Ideal PolyMonoidIdeals::power(long k) const {
    if (k >= 0 && laurent_) k = 0;
    return Ideal{0, k < 0 ? mpz_class(-1) : mpz_class(k)};
}

Ideal PolyMonoidIdeals::principal(const Element& a) const {
    if (a.shape != 1) throw ShapeError(name() + ": ideal members live in A_[1]");
    if (R_->point(a) == 0) return power(-1);
    return power(R_->word(a).e[0]);
}

Ideal PolyMonoidIdeals::sum(const Ideal& a, const Ideal& b) const {
    if (a.gen < 0) return b;
    if (b.gen < 0) return a;
    return power(std::min(a.gen, b.gen).get_si());
}

Ideal PolyMonoidIdeals::product(const Ideal& a, const Ideal& b) const {
    if (a.gen < 0 || b.gen < 0) return power(-1);
    return power(mpz_class(a.gen + b.gen).get_si());
}

Ideal PolyMonoidIdeals::quotient(const Ideal& a0, const Ideal& a1) const {
    if (a1.gen < 0) return power(0);
    if (a0.gen < 0) return power(-1);
    return power(std::max(0L, mpz_class(a0.gen - a1.gen).get_si()));
}

Ideal PolyMonoidIdeals::radical(const Ideal& a) const {
    if (a.gen <= 0) return a;
    return power(1);
}

Ideal PolyMonoidIdeals::ann(const Element& m1, const Element& m2) const {
    return R_->equal(m1, m2) ? power(0) : power(-1);
}

bool PolyMonoidIdeals::contains(const Ideal& a, const Element& x) const {
    if (R_->point(x) == 0) return true;
    if (a.gen < 0) return false;
    return laurent_ || R_->word(x).e[0] >= a.gen;
}

bool PolyMonoidIdeals::leq(const Ideal& a, const Ideal& b) const {
    if (a.gen < 0) return true;
    if (b.gen < 0) return false;
    return a.gen >= b.gen;
}

bool PolyMonoidIdeals::is_prime(const Ideal& a) const { return a.gen == -1 || a.gen == 1; }

std::string PolyMonoidIdeals::format(const Ideal& a) const {
    if (a.gen < 0) return "(0)";
    if (a.gen == 0) return "(1)";
    if (a.gen == 1) return "(z)";
    return "(z^" + a.gen.get_str() + ")";
}

std::vector<SpecPoint> PolyMonoidIdeals::primes(long, bool& complete) const {
    complete = true;
    std::vector<SpecPoint> out{SpecPoint{power(-1), "(0)"}};
    if (!laurent_) out.push_back(SpecPoint{power(1), "(z)"});
    return out;
}

// ---------------------------------------------------------------- spectrum

Spectrum spectrum(const IdealTheory& T, long bound) {
    Spectrum S;
    S.points = T.primes(bound, S.complete);
    return S;
}

std::vector<int> V_of(const IdealTheory& T, const Spectrum& S, const Ideal& a) {
    std::vector<int> out;
    for (size_t i = 0; i < S.points.size(); ++i)
        if (T.leq(a, S.points[i].prime)) out.push_back((int)i);
    return out;
}

std::vector<int> D_of(const IdealTheory& T, const Spectrum& S, const Element& x) {
    std::vector<int> out;
    for (size_t i = 0; i < S.points.size(); ++i)
        if (!T.contains(S.points[i].prime, x)) out.push_back((int)i);
    return out;
}

std::vector<int> closure_of(const IdealTheory& T, const Spectrum& S, const std::vector<int>& pts) {
    std::vector<int> out;
    for (size_t q = 0; q < S.points.size(); ++q)
        for (int p : pts)
            if (T.leq(S.points[p].prime, S.points[q].prime)) {
                out.push_back((int)q);
                break;
            }
    return out;
}

std::vector<int> generic_points(const IdealTheory& T, const Spectrum& S, const std::vector<int>& C) {
    std::vector<int> sorted = C, out;
    std::sort(sorted.begin(), sorted.end());
    for (int p : C)
        if (closure_of(T, S, {p}) == sorted) out.push_back(p);
    return out;
}

bool is_closed_point(const IdealTheory& T, const Spectrum& S, int i) {
    return closure_of(T, S, {i}) == std::vector<int>{i};
}

std::string spec_dot(const IdealTheory& T, const Spectrum& S) {
    std::string s = "digraph spec {\n";
    s += "  label=\"" + T.name() + "\";\n";
    if (!S.complete) s += "  // primes listed up to the bound only\n";
    int n = (int)S.points.size();
    for (int i = 0; i < n; ++i)
        s += "  p" + std::to_string(i) + " [label=\"" + S.points[i].label + "\"" +
             (is_closed_point(T, S, i) ? ", shape=box" : "") + "];\n";
    auto lt = [&](int a, int b) {
        return a != b && T.leq(S.points[a].prime, S.points[b].prime) && !T.leq(S.points[b].prime, S.points[a].prime);
    };
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!lt(p, q)) continue;
            bool cover = true;
            for (int r = 0; r < n && cover; ++r) cover = !(lt(p, r) && lt(r, q));
            if (cover) s += "  p" + std::to_string(p) + " -> p" + std::to_string(q) + ";\n";
        }
    return s + "}\n";
}

LatticeReport check_spectral_identities(const FiniteIdeals& T) {
    LatticeReport rep;
    auto fail = [&](const std::string& w) {
        if (!rep.witness) rep.witness = w;
    };
    Spectrum S = spectrum(T);
    const Ring& A = T.ring();
    int k = (int)T.carrier().size();
    int n = (int)S.points.size();
    auto as_set = [](std::vector<int> v) { return std::set<int>(v.begin(), v.end()); };

    // I(P): the intersection of the primes in P.
    auto I_of = [&](const std::set<int>& P) {
        std::uint64_t s = k == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << k) - 1;
        for (int p : P) s &= S.points[p].prime.members;
        return s;
    };
    auto V_set = [&](std::uint64_t s) {
        std::set<int> out;
        for (int i = 0; i < n; ++i)
            if ((s & ~S.points[i].prime.members) == 0) out.insert(i);
        return out;
    };

    if (k <= 16) {
        for (std::uint64_t s = 0; s < (std::uint64_t(1) << k); ++s) {
            ++rep.checked;
            auto V = V_set(s);
            if (V_set(I_of(V)) != V) fail("V(I(V(S))) != V(S) for " + T.format(Ideal{s, 0}));
            // V(S) = V of the generated ideal.
            if (V != as_set(V_of(T, S, T.generated([&] {
                    std::vector<Element> g;
                    for (int i = 0; i < k; ++i)
                        if (s >> i & 1) g.push_back(T.elem(i));
                    return g;
                }()))))
                fail("V(S) differs from V of the generated ideal for " + T.format(Ideal{s, 0}));
        }
    }
    if (n <= 16) {
        for (int m = 0; m < (1 << n); ++m) {
            std::set<int> P;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) P.insert(i);
            ++rep.checked;
            std::uint64_t I = I_of(P);
            if (I_of(V_set(I)) != I) fail("I(V(I(P))) != I(P)");
            // V(I(P)) is the closure of P.
            std::vector<int> pv(P.begin(), P.end());
            if (V_set(I) != as_set(closure_of(T, S, pv)) && !P.empty()) fail("V(I(P)) differs from the closure of P");
        }
    }
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
            ++rep.checked;
            auto Dx = as_set(D_of(T, S, T.elem(x)));
            auto Dy = as_set(D_of(T, S, T.elem(y)));
            auto Dxy = as_set(D_of(T, S, T.elem(T.mul_idx(x, y))));
            std::set<int> both;
            std::set_intersection(Dx.begin(), Dx.end(), Dy.begin(), Dy.end(), std::inserter(both, both.begin()));
            if (Dxy != both) fail("D(xy) != D(x) ∩ D(y) at " + A.format(T.elem(x)) + ", " + A.format(T.elem(y)));
        }
    for (int x = 0; x < k; ++x) {
        ++rep.checked;
        auto D = D_of(T, S, T.elem(x));
        bool unit = T.is_unit(T.principal(T.elem(x)));
        if (unit != ((int)D.size() == n)) fail("D(x) = spec exactly for units fails at " + A.format(T.elem(x)));
        bool nilpotent = T.radical(T.zero()).members >> x & 1;
        if (nilpotent != D.empty()) fail("D(x) empty exactly for nilpotents fails at " + A.format(T.elem(x)));
    }
    for (auto& m : T.maximal()) {
        ++rep.checked;
        if (!T.is_prime(m)) fail("maximal ideal " + T.format(m) + " is not prime");
    }
    return rep;
}

}  // namespace genring
