#include <algorithm>
#include <numeric>

#include "genring/plane.hpp"

namespace genring {

// ---------------------------------------------------------------- n^B

NBRing::NBRing(std::shared_ptr<const FiniteMonoid> B) : B_(std::move(B)) {}

Element NBRing::zero(int n) const { return from_points(std::vector<std::vector<int>>(n)); }

Element NBRing::one() const { return from_points({{1}}); }

Element NBRing::from_points(std::vector<std::vector<int>> pts) const {
    for (auto& p : pts) {
        for (int i : p)
            if (i < 0 || i >= B_->size()) throw std::invalid_argument(name() + ": weight outside B");
        p.erase(std::remove(p.begin(), p.end(), 0), p.end());
        std::sort(p.begin(), p.end());
    }
    int n = (int)pts.size();
    return make(n, std::make_shared<NBValue>(std::move(pts)));
}

namespace {

int mul_idx(const FiniteMonoid& B, int a, int b) { return B.index(B.mul(B.at(a), B.at(b))); }
int inv_idx(const FiniteMonoid& B, int a) { return B.index(B.inv(B.at(a))); }

}  // namespace

std::optional<Element> NBRing::mul(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.tgt) throw ShapeError(name() + " mul: shape mismatch");
    const auto& av = points(a);
    std::vector<std::vector<int>> out(f.src);
    for (int x = 1; x <= f.src; ++x) {
        if (!f.defined(x)) continue;
        int y = f(x);
        const auto& lam = points(*component(b, y))[fiber_index(f, x) - 1];
        for (int mu : av[y - 1])
            for (int l : lam) out[x - 1].push_back(mul_idx(*B_, mu, l));
    }
    return from_points(std::move(out));
}

std::optional<Element> NBRing::contract(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.src) throw ShapeError(name() + " contract: shape mismatch");
    const auto& av = points(a);
    std::vector<std::vector<int>> out(f.tgt);
    for (int x = 1; x <= f.src; ++x) {
        if (!f.defined(x)) continue;
        int y = f(x);
        const auto& lam = points(*component(b, y))[fiber_index(f, x) - 1];
        for (int mu : av[x - 1])
            for (int l : lam) out[y - 1].push_back(mul_idx(*B_, mu, inv_idx(*B_, l)));
    }
    return from_points(std::move(out));
}

Element NBRing::sample(int n, Rng& rng) const {
    std::uniform_int_distribution<int> count(0, 2), w(1, B_->size() - 1);
    std::vector<std::vector<int>> pts(n);
    for (auto& p : pts) {
        int k = B_->size() > 1 ? count(rng) : 0;
        for (int i = 0; i < k; ++i) p.push_back(w(rng));
    }
    return from_points(std::move(pts));
}

std::string NBRing::format(const Element& a) const {
    std::string s = "nb[";
    const auto& pts = points(a);
    for (size_t x = 0; x < pts.size(); ++x) {
        s += x ? ", {" : " {";
        for (size_t i = 0; i < pts[x].size(); ++i) s += (i ? "," : "") + B_->names()[pts[x][i]];
        s += "}";
    }
    return s + (pts.empty() ? "]" : " ]");
}

Element NBRing::parse(std::string_view s, int n) const {
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (t.size() < 3 || t.substr(0, 3) != "nb[" || t.back() != ']') throw ParseError(name() + ": expected nb[ {..}, .. ]");
    std::string body = t.substr(3, t.size() - 4);
    std::vector<std::vector<int>> pts;
    size_t p = 0;
    while (p < body.size()) {
        if (body[p] != '{') throw ParseError(name() + ": expected '{'");
        size_t q = body.find('}', p);
        if (q == std::string::npos) throw ParseError(name() + ": unbalanced braces");
        std::string inner = body.substr(p + 1, q - p - 1);
        std::vector<int> fiber;
        size_t a = 0;
        while (a < inner.size()) {
            size_t c = inner.find(',', a);
            if (c == std::string::npos) c = inner.size();
            fiber.push_back(B_->index(B_->parse(inner.substr(a, c - a))));
            a = c + 1;
        }
        pts.push_back(std::move(fiber));
        p = q + 1;
        if (p < body.size() && body[p] == ',') ++p;
    }
    if (n >= 0 && (int)pts.size() != n) throw ParseError(name() + ": wrong number of fibers");
    return from_points(std::move(pts));
}

Homomorphism psi_B(const NBRing& R, const GRing& G, std::function<Scalar(int)> weight) {
    return {&R, &G, [&R, &G, weight](const Element& a) {
                std::vector<Scalar> v;
                for (auto& p : R.points(a)) {
                    Scalar s = G.semiring().zero();
                    for (int i : p) s = G.semiring().add(s, weight(i));
                    v.push_back(s);
                }
                return G.vec(std::move(v));
            }};
}

Element sign_preimage(const NBRing& R, const std::vector<long>& v) {
    int plus = R.B().index(R.B().parse("1")), minus = R.B().index(R.B().parse("-1"));
    std::vector<std::vector<int>> pts;
    for (long c : v) pts.emplace_back((size_t)std::labs(c), c < 0 ? minus : plus);
    return R.from_points(std::move(pts));
}

SurjectivityReport check_sign_surjectivity(const NBRing& R, const GRing& GZ, int bound, int max_shape) {
    SurjectivityReport rep;
    int minus = R.B().index(R.B().parse("-1"));
    auto psi = psi_B(R, GZ, [minus](int i) { return Scalar(i == minus ? -1 : 1); });
    for (int n = 0; n <= max_shape; ++n) {
        std::vector<long> v(n, -bound);
        for (;;) {
            ++rep.checked;
            Element pre = sign_preimage(R, v);
            if (!GZ.equal(psi.map(pre), GZ.vec_int(v)) && !rep.witness)
                rep.witness = "no preimage for " + GZ.format(GZ.vec_int(v)) + " via " + R.format(pre);
            int i = n - 1;
            while (i >= 0 && ++v[i] > bound) v[i--] = -bound;
            if (i < 0) break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- pushouts

std::shared_ptr<FiniteMonoid> trivial_monoid() {
    return std::make_shared<FiniteMonoid>("B0", std::vector<std::string>{"0", "1"},
                                          std::vector<std::vector<int>>{{0, 0}, {0, 1}}, std::vector<int>{0, 1});
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

MonoidPushout monoid_pushout(const FiniteMonoid& M0, const FiniteMonoid& M1, const FiniteMonoid& N,
                             const std::vector<int>& phi0, const std::vector<int>& phi1) {
    int a = M0.size(), b = M1.size();
    if (a < 2 || b < 2) throw std::invalid_argument("pushout: monoids need a unit");
    // Node 0 is the zero class; pair (i, j) of nonzero elements is node 1 + (i-1)(b-1) + (j-1).
    auto node = [&](int i, int j) { return (i == 0 || j == 0) ? 0 : 1 + (i - 1) * (b - 1) + (j - 1); };
    int total = 1 + (a - 1) * (b - 1);
    UnionFind uf(total);
    for (int n = 1; n < N.size(); ++n)
        for (int i = 1; i < a; ++i)
            for (int j = 1; j < b; ++j)
                uf.unite(node(mul_idx(M0, phi0[n], i), j), node(i, mul_idx(M1, phi1[n], j)));
    // Classes in order of their smallest node; (1,1) is node 1.
    std::vector<int> cls(total, -1);
    std::vector<std::pair<int, int>> rep;
    int count = 0;
    auto pair_of = [&](int v) { return v == 0 ? std::pair{0, 0} : std::pair{1 + (v - 1) / (b - 1), 1 + (v - 1) % (b - 1)}; };
    for (int v = 0; v < total; ++v) {
        int r = uf.find(v);
        if (cls[r] < 0) {
            cls[r] = count++;
            rep.push_back(pair_of(v));
        }
        cls[v] = cls[r];
    }
    if (count < 2 || cls[node(1, 1)] != 1) throw std::invalid_argument("pushout: the unit collapses to zero");
    auto cls_of = [&](int i, int j) { return cls[uf.find(node(i, j))]; };
    std::vector<std::string> names(count);
    names[0] = "0";
    for (int c = 1; c < count; ++c)
        names[c] = "(" + M0.names()[rep[c].first] + "," + M1.names()[rep[c].second] + ")";
    std::vector<std::vector<int>> table(count, std::vector<int>(count, -1));
    std::vector<int> inv(count, -1);
    for (int v = 0; v < total; ++v) {
        auto [i, j] = pair_of(v);
        int c = cls[v];
        int ic = cls_of(inv_idx(M0, i), inv_idx(M1, j));
        if (inv[c] >= 0 && inv[c] != ic) throw std::logic_error("pushout: involution not well defined");
        inv[c] = ic;
        for (int w = 0; w < total; ++w) {
            auto [k, l] = pair_of(w);
            int p = cls_of(mul_idx(M0, i, k), mul_idx(M1, j, l));
            int& slot = table[c][cls[w]];
            if (slot >= 0 && slot != p) throw std::logic_error("pushout: product not well defined");
            slot = p;
        }
    }
    MonoidPushout po;
    po.P = std::make_shared<FiniteMonoid>(M0.name() + "(x)" + M1.name(), names, table, inv);
    for (int i = 0; i < a; ++i) po.in0.push_back(cls_of(i, 1));
    for (int j = 0; j < b; ++j) po.in1.push_back(cls_of(1, j));
    return po;
}

std::vector<std::vector<int>> monoid_homs(const FiniteMonoid& A, const FiniteMonoid& T) {
    std::vector<std::vector<int>> out;
    int n = A.size();
    std::vector<int> g(n, 0);
    if (n > 1) g[1] = 1;
    auto ok = [&] {
        for (int a = 0; a < n; ++a) {
            if (g[inv_idx(A, a)] != inv_idx(T, g[a])) return false;
            for (int b = 0; b < n; ++b)
                if (g[mul_idx(A, a, b)] != mul_idx(T, g[a], g[b])) return false;
        }
        return true;
    };
    for (;;) {
        if (ok()) out.push_back(g);
        int i = n - 1;
        while (i >= 2 && ++g[i] == T.size()) g[i--] = 0;
        if (i < 2) break;
    }
    return out;
}

PushoutReport check_pushout_law(const MonoidPushout& po, const FiniteMonoid& M0, const FiniteMonoid& M1,
                                const FiniteMonoid& N, const std::vector<int>& phi0, const std::vector<int>& phi1,
                                const std::vector<const FiniteMonoid*>& targets) {
    PushoutReport rep;
    const FiniteMonoid& P = *po.P;
    auto fail = [&](const std::string& w) {
        if (!rep.witness) rep.witness = w;
    };
    for (int n = 0; n < N.size(); ++n)
        if (po.in0[phi0[n]] != po.in1[phi1[n]]) fail("square does not commute at " + N.names()[n]);
    auto is_hom = [&](const FiniteMonoid& A, const std::vector<int>& g) {
        for (auto& h : monoid_homs(A, P))
            if (h == g) return true;
        return false;
    };
    if (!is_hom(M0, po.in0)) fail("M0 -> P is not a monoid map");
    if (!is_hom(M1, po.in1)) fail("M1 -> P is not a monoid map");
    for (const FiniteMonoid* T : targets) {
        auto h0s = monoid_homs(M0, *T), h1s = monoid_homs(M1, *T);
        for (auto& g0 : h0s)
            for (auto& g1 : h1s) {
                bool compatible = true;
                for (int n = 0; n < N.size(); ++n) compatible = compatible && g0[phi0[n]] == g1[phi1[n]];
                if (!compatible) continue;
                ++rep.pairs;
                // The induced map sends (i, j) to g0(i) g1(j); it must be constant on classes.
                std::vector<int> h(P.size(), -1);
                bool defined = true;
                for (int i = 0; i < M0.size(); ++i)
                    for (int j = 0; j < M1.size(); ++j) {
                        int c = P.index(P.mul(P.at(po.in0[i]), P.at(po.in1[j])));
                        int v = mul_idx(*T, g0[i], g1[j]);
                        if (h[c] >= 0 && h[c] != v) defined = false;
                        h[c] = v;
                    }
                std::string at = " into " + T->name();
                if (!defined || std::count(h.begin(), h.end(), -1)) {
                    fail("induced map not defined" + at);
                    continue;
                }
                for (int x = 0; x < P.size(); ++x) {
                    if (h[inv_idx(P, x)] != inv_idx(*T, h[x])) fail("induced map breaks the involution" + at);
                    for (int y = 0; y < P.size(); ++y)
                        if (h[mul_idx(P, x, y)] != mul_idx(*T, h[x], h[y])) fail("induced map not multiplicative" + at);
                }
            }
    }
    return rep;
}

Homomorphism monoid_ring_map(const MonoidRing& src, const MonoidRing& dst, std::vector<int> images) {
    const auto& S = static_cast<const FiniteMonoid&>(src.monoid());
    const auto& D = static_cast<const FiniteMonoid&>(dst.monoid());
    return {&src, &dst, [&src, &dst, &S, &D, images](const Element& a) {
                int x = src.point(a);
                if (!x) return dst.zero(a.shape);
                return dst.elem(x, D.at(images[S.index(src.word(a))]), a.shape);
            }};
}

}  // namespace genring
