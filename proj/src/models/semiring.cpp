#include <algorithm>

#include "genring/models.hpp"

namespace genring {

std::string format_rational(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(std::string_view s) {
    std::string t(s);
    t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
    if (t.empty()) throw ParseError("empty rational");
    size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    size_t slash = t.find('/');
    auto digits = [&](size_t a, size_t b) {
        if (a >= b) return false;
        for (size_t i = a; i < b; ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits(start, t.size())) throw ParseError("bad rational '" + t + "'");
    } else if (!digits(start, slash) || !digits(slash + 1, t.size())) {
        throw ParseError("bad rational '" + t + "'");
    }
    if (t[0] == '+') t.erase(0, 1);
    mpq_class q(t);
    if (q.get_den() == 0) throw ParseError("zero denominator");
    q.canonicalize();
    return q;
}

Semiring Semiring::zmod(long n) {
    if (n < 1) throw std::invalid_argument("Z/n needs n >= 1");
    return {Kind::Zmod, n};
}

std::string Semiring::name() const {
    switch (kind) {
        case Kind::N: return "N";
        case Kind::Z: return "Z";
        case Kind::Q: return "Q";
        case Kind::Qnn: return "Q>=0";
        case Kind::Zmod: return "Z/" + std::to_string(modulus);
        case Kind::Trop: return "Nt";
    }
    return "?";
}

Scalar Semiring::zero() const { return kind == Kind::Trop ? Scalar::neg_inf() : Scalar(0); }

Scalar Semiring::one() const {
    if (kind == Kind::Trop) return Scalar(0);
    if (kind == Kind::Zmod && modulus == 1) return Scalar(0);
    return Scalar(1);
}

Scalar Semiring::normalize(Scalar a) const {
    if (kind == Kind::Zmod) {
        mpz_class r = a.q.get_num() % modulus;
        if (r < 0) r += modulus;
        return Scalar(mpq_class(r));
    }
    return a;
}

Scalar Semiring::add(const Scalar& a, const Scalar& b) const {
    if (kind == Kind::Trop) {
        if (a.ninf) return b;
        if (b.ninf) return a;
        return a.q < b.q ? b : a;
    }
    return normalize(Scalar(mpq_class(a.q + b.q)));
}

Scalar Semiring::mul(const Scalar& a, const Scalar& b) const {
    if (kind == Kind::Trop) {
        if (a.ninf || b.ninf) return Scalar::neg_inf();
        return Scalar(mpq_class(a.q + b.q));
    }
    return normalize(Scalar(mpq_class(a.q * b.q)));
}

bool Semiring::valid(const Scalar& a) const {
    if (a.ninf) return kind == Kind::Trop;
    bool integral = a.q.get_den() == 1;
    switch (kind) {
        case Kind::N: return integral && a.q >= 0;
        case Kind::Z: return integral;
        case Kind::Q: return true;
        case Kind::Qnn: return a.q >= 0;
        case Kind::Zmod: return integral && a.q >= 0 && a.q < modulus;
        case Kind::Trop: return integral && a.q >= 0;
    }
    return false;
}

Scalar Semiring::sample(Rng& rng) const {
    std::uniform_int_distribution<int> small(0, 4), sgn(-4, 4), den(1, 3);
    switch (kind) {
        case Kind::N: return Scalar(small(rng));
        case Kind::Z: return Scalar(sgn(rng));
        case Kind::Q: {
            mpq_class q(sgn(rng), den(rng));
            q.canonicalize();
            return Scalar(q);
        }
        case Kind::Qnn: {
            mpq_class q(small(rng), den(rng));
            q.canonicalize();
            return Scalar(q);
        }
        case Kind::Zmod: {
            std::uniform_int_distribution<long> d(0, modulus - 1);
            return Scalar(d(rng));
        }
        case Kind::Trop: {
            int v = small(rng);
            return v == 4 ? Scalar::neg_inf() : Scalar(v);
        }
    }
    return Scalar(0);
}

std::string Semiring::format(const Scalar& a) const {
    if (a.ninf) return "-inf";
    mpq_class q = a.q;
    q.canonicalize();
    return format_rational(q);
}

Scalar Semiring::parse(std::string_view s) const {
    Scalar v;
    if (s == "-inf") v = Scalar::neg_inf();
    else v = Scalar(parse_rational(s));
    if (!valid(v)) throw ParseError("value '" + std::string(s) + "' not in " + name());
    return v;
}

std::vector<Scalar> Semiring::elements() const {
    std::vector<Scalar> out;
    if (kind == Kind::Zmod)
        for (long i = 0; i < modulus; ++i) out.push_back(Scalar(i));
    return out;
}

std::optional<std::string> check_semiring_laws(const Semiring& S, int trials, std::uint64_t seed) {
    Rng rng(seed);
    auto eq = [&](const Scalar& a, const Scalar& b) { return a == b; };
    auto f = [&](const Scalar& a) { return S.format(a); };
    if (!eq(S.mul(S.one(), S.one()), S.one())) return std::string("1*1 != 1");
    for (int i = 0; i < trials; ++i) {
        Scalar a = S.sample(rng), b = S.sample(rng), c = S.sample(rng);
        std::string at = " at " + f(a) + "," + f(b) + "," + f(c);
        if (!eq(S.add(a, S.add(b, c)), S.add(S.add(a, b), c))) return "add not associative" + at;
        if (!eq(S.mul(a, S.mul(b, c)), S.mul(S.mul(a, b), c))) return "mul not associative" + at;
        if (!eq(S.add(a, b), S.add(b, a))) return "add not commutative" + at;
        if (!eq(S.mul(a, b), S.mul(b, a))) return "mul not commutative" + at;
        if (!eq(S.add(a, S.zero()), a)) return "0 not additive unit" + at;
        if (!eq(S.mul(a, S.one()), a)) return "1 not multiplicative unit" + at;
        if (!eq(S.mul(a, S.zero()), S.zero())) return "0 not absorbing" + at;
        if (!eq(S.mul(a, S.add(b, c)), S.add(S.mul(a, b), S.mul(a, c)))) return "not distributive" + at;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- G(A)

GRing::GRing(Semiring s) : S_(s), name_("G(" + s.name() + ")") {
    if (auto bad = check_semiring_laws(S_, 300, 7)) throw std::invalid_argument(name_ + ": " + *bad);
}

std::string GRing::name() const { return name_; }

Element GRing::zero(int n) const { return make(n, std::make_shared<GValue>(std::vector<Scalar>(n, S_.zero()))); }

Element GRing::one() const { return make(1, std::make_shared<GValue>(std::vector<Scalar>{S_.one()})); }

Element GRing::vec(std::vector<Scalar> v) const {
    for (auto& s : v) {
        s = S_.normalize(s);
        if (!S_.valid(s)) throw std::invalid_argument(name() + ": coordinate outside carrier");
        if (!s.ninf) s.q.canonicalize();
    }
    if (!admissible(v)) throw std::invalid_argument(name() + ": vector outside carrier");
    int n = (int)v.size();
    return make(n, std::make_shared<GValue>(std::move(v)));
}

Element GRing::vec_int(const std::vector<long>& v) const {
    std::vector<Scalar> s;
    for (long x : v) s.emplace_back(x);
    return vec(std::move(s));
}

Element GRing::ones(int n) const { return make(n, std::make_shared<GValue>(std::vector<Scalar>(n, S_.one()))); }

std::optional<Element> GRing::mul(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.tgt) throw ShapeError(name() + " mul: shape mismatch");
    const auto& av = coords(a);
    std::vector<Scalar> out(f.src, S_.zero());
    std::vector<int> pos(f.tgt + 1, 0);
    for (int x = 1; x <= f.src; ++x) {
        if (!f.defined(x)) continue;
        int y = f(x);
        const Element* c = component(b, y);
        out[x - 1] = S_.mul(av[y - 1], coords(*c)[pos[y]++]);
    }
    return make(f.src, std::make_shared<GValue>(std::move(out)));
}

std::optional<Element> GRing::contract(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.src) throw ShapeError(name() + " contract: shape mismatch");
    const auto& av = coords(a);
    std::vector<Scalar> out(f.tgt, S_.zero());
    std::vector<int> pos(f.tgt + 1, 0);
    for (int x = 1; x <= f.src; ++x) {
        if (!f.defined(x)) continue;
        int y = f(x);
        const Element* c = component(b, y);
        out[y - 1] = S_.add(out[y - 1], S_.mul(av[x - 1], coords(*c)[pos[y]++]));
    }
    return make(f.tgt, std::make_shared<GValue>(std::move(out)));
}

Element GRing::sample(int n, Rng& rng) const {
    std::vector<Scalar> v;
    for (int i = 0; i < n; ++i) v.push_back(S_.sample(rng));
    return vec(std::move(v));
}

std::string GRing::format(const Element& a) const {
    const auto& v = coords(a);
    std::string s = "g[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : " ") + S_.format(v[i]);
    return s + (v.empty() ? "]" : " ]");
}

std::vector<Scalar> parse_gvector(const Semiring& S, std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.size() < 3 || s.substr(0, 2) != "g[" || s.back() != ']') throw ParseError("expected g[ ... ]");
    std::string_view body = s.substr(2, s.size() - 3);
    std::vector<Scalar> out;
    bool blank = body.find_first_not_of(' ') == std::string_view::npos;
    if (blank) return out;
    size_t start = 0;
    while (true) {
        size_t comma = body.find(',', start);
        std::string_view tok = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        out.push_back(S.parse(tok));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Element GRing::parse(std::string_view s, int n) const {
    auto v = parse_gvector(S_, s);
    if (n >= 0 && (int)v.size() != n) throw ParseError(name() + ": wrong number of coordinates");
    if (!admissible(v)) throw ParseError(name() + ": vector outside carrier");
    return vec(std::move(v));
}

std::optional<std::vector<Element>> GRing::enumerate(int n) const {
    auto base = S_.elements();
    if (base.empty()) return std::nullopt;
    double total = 1;
    for (int i = 0; i < n; ++i) total *= (double)base.size();
    if (total > 1e5) return std::nullopt;
    std::vector<Element> out;
    std::vector<size_t> idx(n, 0);
    while (true) {
        std::vector<Scalar> v;
        for (int i = 0; i < n; ++i) v.push_back(base[idx[i]]);
        out.push_back(vec(std::move(v)));
        int k = n - 1;
        while (k >= 0 && ++idx[k] == base.size()) idx[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

std::shared_ptr<GRing> make_G(const Semiring& S) { return std::make_shared<GRing>(S); }

}  // namespace genring
