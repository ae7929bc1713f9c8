#include <charconv>

#include "genring/models.hpp"

namespace genring {

Element FRing::zero(int n) const { return make(n, std::make_shared<FValue>(0)); }

Element FRing::one() const { return make(1, std::make_shared<FValue>(1)); }

Element FRing::point(int x, int n) const {
    if (x < 0 || x > n) throw ShapeError("F: point outside shape");
    return make(n, std::make_shared<FValue>(x));
}

std::optional<Element> FRing::mul(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    if (a.shape != b.map.tgt) throw ShapeError("F mul: shape mismatch");
    int n = b.map.src;
    int y0 = a.as<FValue>().point;
    if (!y0) return zero(n);
    const Element* c = component(b, y0);
    if (!c) return zero(n);
    int i = c->as<FValue>().point;
    if (!i) return zero(n);
    int k = 0;
    for (int x = 1; x <= n; ++x)
        if (b.map(x) == y0 && ++k == i) return point(x, n);
    throw ShapeError("F mul: component outside fiber");
}

std::optional<Element> FRing::contract(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    if (a.shape != b.map.src) throw ShapeError("F contract: shape mismatch");
    int m = b.map.tgt;
    int x0 = a.as<FValue>().point;
    if (!x0 || !b.map.defined(x0)) return zero(m);
    int y = b.map(x0);
    const Element* c = component(b, y);
    if (c->as<FValue>().point == fiber_index(b.map, x0)) return point(y, m);
    return zero(m);
}

Element FRing::sample(int n, Rng& rng) const {
    std::uniform_int_distribution<int> d(0, n);
    return point(d(rng), n);
}

std::string FRing::format(const Element& a) const {
    int x = a.as<FValue>().point;
    return x ? "[x:" + std::to_string(x) + "]" : "0";
}

Element FRing::parse(std::string_view s, int n) const {
    if (s == "0") return zero(n);
    if (s.size() < 5 || s.substr(0, 3) != "[x:" || s.back() != ']') throw ParseError("F: expected [x:i] or 0");
    int x = 0;
    auto body = s.substr(3, s.size() - 4);
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), x);
    if (ec != std::errc() || p != body.data() + body.size() || x < 1 || x > n) throw ParseError("F: bad point");
    return point(x, n);
}

std::optional<std::vector<Element>> FRing::enumerate(int n) const {
    std::vector<Element> v;
    for (int x = 0; x <= n; ++x) v.push_back(point(x, n));
    return v;
}

std::shared_ptr<FRing> make_F() { return std::make_shared<FRing>(); }

}  // namespace genring
