#include "genring/core.hpp"

#include <algorithm>

namespace genring {

bool Ring::equal(const Element& a, const Element& b) const {
    if (a.ring != this || b.ring != this) throw RingMismatch("equal: element of another ring");
    if (a.shape != b.shape) return false;
    return key(a) == key(b);
}

Element Ring::parse(std::string_view, int) const {
    throw ParseError(name() + ": element parsing not supported");
}

std::optional<std::vector<Element>> Ring::enumerate(int) const { return std::nullopt; }

void check_same_ring(const Ring* r, const Element& a) {
    if (a.ring != r) throw RingMismatch("element belongs to " + (a.ring ? a.ring->name() : std::string("no ring")) +
                                        ", expected " + r->name());
}

void check_same_ring(const Ring* r, const Fibered& b) {
    for (auto& c : b.comps) check_same_ring(r, c);
}

Fibered as_fibered(const Element& a) {
    Fibered b{constant_map(a.shape), {}};
    if (a.shape > 0) b.comps.push_back(a);
    return b;
}

Element from_fibered(const Ring& R, const Fibered& b, int n) {
    if (b.comps.empty()) return R.zero(n);
    return b.comps.front();
}

Fibered unit_fibered(const Ring& R, const PartialMap& f) {
    Fibered b{f, {}};
    for (auto& fb : fiber_shapes(f)) {
        if (fb.xs.size() != 1) throw ShapeError("unit_fibered: map is not injective");
        b.comps.push_back(R.one());
    }
    return b;
}

Fibered zero_fibered(const Ring& R, const PartialMap& f) {
    Fibered b{f, {}};
    for (auto& fb : fiber_shapes(f)) b.comps.push_back(R.zero((int)fb.xs.size()));
    return b;
}

Fibered sample_fibered(const Ring& R, const PartialMap& f, Rng& rng) {
    Fibered b{f, {}};
    for (auto& fb : fiber_shapes(f)) b.comps.push_back(R.sample((int)fb.xs.size(), rng));
    return b;
}

Fibered diagonal_family(const std::vector<Element>& a) {
    Fibered b{identity((int)a.size()), a};
    return b;
}

int component_index(const PartialMap& f, int y) {
    std::vector<char> hit(f.tgt + 1, 0);
    for (int v : f.table)
        if (v) hit[v] = 1;
    if (!hit[y]) return -1;
    int k = 0;
    for (int u = 1; u < y; ++u) k += hit[u];
    return k;
}

const Element* component(const Fibered& b, int y) {
    int k = component_index(b.map, y);
    return k < 0 ? nullptr : &b.comps[k];
}

Fibered restrict_to(const Fibered& b, const PartialMap& g, int z) {
    const PartialMap& f = b.map;
    std::vector<int> ys;  // g^{-1}(z)
    for (int y = 1; y <= g.src; ++y)
        if (g(y) == z) ys.push_back(y);
    std::vector<int> xs;  // (g f)^{-1}(z)
    for (int x = 1; x <= f.src; ++x)
        if (f.defined(x) && g(f(x)) == z) xs.push_back(x);
    PartialMap r((int)xs.size(), (int)ys.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        int y = f(xs[i]);
        int pos = int(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
        r.set((int)i + 1, pos + 1);
    }
    Fibered out{r, {}};
    for (int y : ys) {
        int k = component_index(f, y);
        if (k >= 0) out.comps.push_back(b.comps[k]);
    }
    return out;
}

std::optional<Fibered> mul_ext(const Ring& R, const Fibered& a, const Fibered& b) {
    const PartialMap& g = a.map;
    const PartialMap& f = b.map;
    PartialMap gf = compose(g, f);
    Fibered out{gf, {}};
    for (auto& fz : fiber_shapes(gf)) {
        int z = fz.y;
        int k = component_index(g, z);
        Fibered bz = restrict_to(b, g, z);
        auto r = R.mul(a.comps[k], bz);
        if (!r) return std::nullopt;
        out.comps.push_back(*r);
    }
    return out;
}

std::optional<Fibered> contract_ext(const Ring& R, const Fibered& c, const Fibered& b, const PartialMap& g) {
    const PartialMap& f = b.map;
    PartialMap gf = compose(g, f);
    if (!(gf == c.map)) throw ShapeError("contract_ext: first argument is not over g o f");
    Fibered out{g, {}};
    for (auto& fz : fiber_shapes(g)) {
        int z = fz.y;
        int k = component_index(gf, z);
        if (k < 0) {
            out.comps.push_back(R.zero((int)fz.xs.size()));
            continue;
        }
        Fibered bz = restrict_to(b, g, z);
        auto r = R.contract(c.comps[k], bz);
        if (!r) return std::nullopt;
        out.comps.push_back(*r);
    }
    return out;
}

bool equal_fibered(const Ring& R, const Fibered& a, const Fibered& b) {
    if (!(a.map == b.map) || a.comps.size() != b.comps.size()) return false;
    for (size_t i = 0; i < a.comps.size(); ++i)
        if (!R.equal(a.comps[i], b.comps[i])) return false;
    return true;
}

std::string format_fibered(const Ring& R, const Fibered& a) {
    std::string s = to_string(a.map) + " <";
    for (size_t i = 0; i < a.comps.size(); ++i) {
        if (i) s += "; ";
        s += R.format(a.comps[i]);
    }
    return s + ">";
}

Fibered lift_along(const PullbackSquare& p, const Fibered& c, const PartialMap& other, bool over_ft) {
    Fibered out{over_ft ? p.ft : p.gt, {}};
    for (auto& fb : fiber_shapes(out.map)) {
        int y = other(fb.y);
        out.comps.push_back(c.comps[component_index(c.map, y)]);
    }
    return out;
}

std::optional<Element> transpose_elt(const Ring& R, const Element& a) {
    if (a.shape != 1) throw ShapeError("transpose_elt: shape must be [1]");
    return R.contract(R.one(), as_fibered(a));
}

std::optional<Element> functor_map(const Ring& R, const Element& a, const PartialMap& f) {
    if (f.src != a.shape) throw ShapeError("functor_map: shape mismatch");
    auto r = R.contract(a, unit_fibered(R, f));
    return r;
}

namespace {

// Elements a in A_X and c over c_Y lifted to the product X x Y.
struct ProductLifts {
    PullbackSquare p;
    PartialMap cx, cy;
};

ProductLifts product_square(int nx, int ny) {
    ProductLifts L;
    L.cx = constant_map(nx);
    L.cy = constant_map(ny);
    L.p = pullback(L.cx, L.cy);
    return L;
}

}  // namespace

std::optional<Element> derived_mul(const Ring& R, const Element& a, const Element& b, const Element& c,
                                   const Element& d) {
    int nx = a.shape, ny = c.shape;
    if (nx == 0 || ny == 0) return R.zero(1);
    auto L = product_square(nx, ny);
    // c~ over f~ : P -> X, b~ over g~ : P -> Y
    Fibered ct = lift_along(L.p, as_fibered(c), L.cx, true);
    Fibered bt = lift_along(L.p, as_fibered(b), L.cy, false);
    auto left = R.mul(a, ct);
    auto right = R.mul(d, bt);
    if (!left || !right) return std::nullopt;
    return R.contract(*left, as_fibered(*right));
}

std::optional<Element> derived_contract(const Ring& R, const Element& a, const Element& b, const Element& c,
                                        const Element& d) {
    int nx = a.shape, ny = c.shape;
    if (nx == 0 || ny == 0) return R.zero(1);
    auto L = product_square(nx, ny);
    Fibered dt = lift_along(L.p, as_fibered(d), L.cx, true);
    Fibered bt = lift_along(L.p, as_fibered(b), L.cy, false);
    auto left = R.mul(a, dt);
    auto right = R.mul(c, bt);
    if (!left || !right) return std::nullopt;
    return R.contract(*left, as_fibered(*right));
}

PartialMap random_map(int m, int n, Rng& rng, double p_undef) {
    PartialMap f(m, n);
    if (n == 0) return f;
    std::uniform_int_distribution<int> pick(1, n);
    std::bernoulli_distribution undef(p_undef);
    for (int x = 1; x <= m; ++x)
        if (!undef(rng)) f.set(x, pick(rng));
    return f;
}

PartialMap random_partial_bijection(int m, int n, Rng& rng) {
    std::vector<int> ys(n);
    for (int i = 0; i < n; ++i) ys[i] = i + 1;
    std::shuffle(ys.begin(), ys.end(), rng);
    PartialMap f(m, n);
    std::bernoulli_distribution undef(0.25);
    for (int x = 1; x <= std::min(m, n); ++x)
        if (!undef(rng)) f.set(x, ys[x - 1]);
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    PartialMap g(m, n);
    for (int x = 1; x <= m; ++x) g.set(perm[x - 1] + 1, f(x));
    return g;
}

Fibered Homomorphism::apply(const Fibered& b) const {
    Fibered out{b.map, {}};
    for (auto& c : b.comps) out.comps.push_back(map(c));
    return out;
}

}  // namespace genring
