#include "genring/models.hpp"

namespace genring {

mpq_class norm2(const std::vector<Scalar>& v) {
    mpq_class s = 0;
    for (auto& x : v) s += x.q * x.q;
    return s;
}

BallMembership ball_membership(const std::vector<Scalar>& v) {
    mpq_class s = norm2(v);
    if (s == 1) return BallMembership::UnitSphere;
    if (s < 1) return BallMembership::Interior;
    return BallMembership::Outside;
}

std::string to_string(BallMembership m) {
    switch (m) {
        case BallMembership::UnitSphere: return "unit-sphere";
        case BallMembership::Interior: return "interior";
        case BallMembership::Outside: return "outside";
    }
    return "?";
}

std::vector<Scalar> sample_ball_vector(int n, Rng& rng, long max_den) {
    std::vector<Scalar> v(n, Scalar(0));
    if (n == 0) return v;
    std::uniform_int_distribution<int> kind(0, 3), pos(0, n - 1), sign(0, 1);
    std::uniform_int_distribution<long> den(1, max_den), small(1, 6);
    auto sgn = [&] { return sign(rng) ? 1 : -1; };
    if (kind(rng) == 0) {
        int i = pos(rng);
        if (n >= 2 && sign(rng)) {
            int j = pos(rng);
            while (j == i) j = pos(rng);
            long a = small(rng), b = small(rng);
            mpq_class d = a * a + b * b;
            v[i] = Scalar(mpq_class(sgn() * (a * a - b * b)) / d);
            v[j] = Scalar(mpq_class(sgn() * 2 * a * b) / d);
        } else {
            v[i] = Scalar(sgn());
        }
        for (auto& x : v) x.q.canonicalize();
        return v;
    }
    for (auto& x : v) {
        long q = den(rng);
        std::uniform_int_distribution<long> num(-q, q);
        x = Scalar(mpq_class(num(rng), q));
        x.q.canonicalize();
    }
    mpq_class s = norm2(v);
    if (s > 1) {
        mpz_class c = s.get_num() / s.get_den();
        if (c * s.get_den() != s.get_num()) c += 1;
        for (auto& x : v) {
            x.q /= c;
            x.q.canonicalize();
        }
    }
    return v;
}

OEtaRing::OEtaRing() : GRing(Semiring::rationals()) { name_ = "Oeta"; }

bool OEtaRing::admissible(const std::vector<Scalar>& v) const { return norm2(v) <= 1; }

Element OEtaRing::sample(int n, Rng& rng) const { return vec(sample_ball_vector(n, rng, 6)); }

Element OEtaRing::parse(std::string_view s, int n) const {
    auto v = parse_gvector(S_, s);
    if (n >= 0 && (int)v.size() != n) throw ParseError("Oeta: wrong number of coordinates");
    if (ball_membership(v) == BallMembership::Outside) throw ParseError("Oeta: vector outside the unit ball");
    return vec(std::move(v));
}

ResidueRing::ResidueRing() : GRing(Semiring::rationals()) { name_ = "k_eta"; }

bool ResidueRing::admissible(const std::vector<Scalar>& v) const {
    mpq_class s = norm2(v);
    return s == 1 || s == 0;
}

Element ResidueRing::project(const Element& a) const {
    const auto& v = a.as<GValue>().c;
    if (norm2(v) == 1) return make(a.shape, a.v);
    return zero(a.shape);
}

std::optional<Element> ResidueRing::mul(const Element& a, const Fibered& b) const {
    auto r = GRing::mul(a, b);
    return project(*r);
}

std::optional<Element> ResidueRing::contract(const Element& a, const Fibered& b) const {
    auto r = GRing::contract(a, b);
    return project(*r);
}

Element ResidueRing::sample(int n, Rng& rng) const {
    std::uniform_int_distribution<int> d(0, 4);
    if (n == 0 || d(rng) == 0) return zero(n);
    for (;;) {
        auto v = sample_ball_vector(n, rng, 6);
        if (norm2(v) == 1) return vec(std::move(v));
    }
}

std::shared_ptr<OEtaRing> make_Oeta() { return std::make_shared<OEtaRing>(); }
std::shared_ptr<ResidueRing> make_residue_field() { return std::make_shared<ResidueRing>(); }

}  // namespace genring
