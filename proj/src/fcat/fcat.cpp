#include "genring/fcat.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace genring {

PartialMap::PartialMap(int m, int n) : src(m), tgt(n), table(m, 0) {
    if (m < 0 || n < 0) throw ShapeError("negative set size");
}

PartialMap::PartialMap(int m, int n, std::vector<int> t) : src(m), tgt(n), table(std::move(t)) {
    if (m < 0 || n < 0) throw ShapeError("negative set size");
    if ((int)table.size() != m) throw ShapeError("table size does not match source");
    for (int v : table)
        if (v < 0 || v > n) throw ShapeError("value outside target");
}

int PartialMap::domain_size() const {
    return (int)std::count_if(table.begin(), table.end(), [](int v) { return v != 0; });
}

std::vector<int> PartialMap::domain() const {
    std::vector<int> d;
    for (int x = 1; x <= src; ++x)
        if (table[x - 1]) d.push_back(x);
    return d;
}

std::vector<int> PartialMap::image() const {
    std::set<int> s;
    for (int v : table)
        if (v) s.insert(v);
    return {s.begin(), s.end()};
}

bool PartialMap::injective() const {
    std::vector<char> seen(tgt + 1, 0);
    for (int v : table) {
        if (!v) continue;
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool PartialMap::total() const {
    return std::all_of(table.begin(), table.end(), [](int v) { return v != 0; });
}

PartialMap identity(int n) {
    PartialMap f(n, n);
    for (int x = 1; x <= n; ++x) f.set(x, x);
    return f;
}

PartialMap constant_map(int n) {
    return PartialMap(n, 1, std::vector<int>(n, 1));
}

PartialMap point_inclusion(int x, int n) {
    PartialMap f(1, n);
    f.set(1, x);
    return f;
}

PartialMap compose(const PartialMap& g, const PartialMap& f) {
    if (f.tgt != g.src) throw ShapeError("compose: shape mismatch");
    PartialMap h(f.src, g.tgt);
    for (int x = 1; x <= f.src; ++x)
        if (f.defined(x)) h.set(x, g(f(x)));
    return h;
}

PartialMap transpose(const PartialMap& f) {
    if (!f.injective()) throw ShapeError("transpose: not a partial bijection");
    PartialMap t(f.tgt, f.src);
    for (int x = 1; x <= f.src; ++x)
        if (f.defined(x)) t.set(f(x), x);
    return t;
}

std::vector<Fiber> fiber_shapes(const PartialMap& f) {
    std::vector<std::vector<int>> by(f.tgt + 1);
    for (int x = 1; x <= f.src; ++x)
        if (f.defined(x)) by[f(x)].push_back(x);
    std::vector<Fiber> out;
    for (int y = 1; y <= f.tgt; ++y)
        if (!by[y].empty()) out.push_back({y, std::move(by[y])});
    return out;
}

int fiber_index(const PartialMap& f, int x) {
    if (!f.defined(x)) throw ShapeError("fiber_index: point outside domain");
    int k = 0;
    for (int u = 1; u <= x; ++u)
        if (f(u) == f(x)) ++k;
    return k;
}

PullbackSquare pullback(const PartialMap& g, const PartialMap& f) {
    if (g.tgt != f.tgt) throw ShapeError("pullback: targets differ");
    PullbackSquare p;
    for (int z = 1; z <= g.src; ++z) {
        if (!g.defined(z)) continue;
        for (int x = 1; x <= f.src; ++x)
            if (f.defined(x) && f(x) == g(z)) p.apex.emplace_back(z, x);
    }
    int n = (int)p.apex.size();
    p.ft = PartialMap(n, g.src);
    p.gt = PartialMap(n, f.src);
    for (int i = 0; i < n; ++i) {
        p.ft.set(i + 1, p.apex[i].first);
        p.gt.set(i + 1, p.apex[i].second);
    }
    return p;
}

bool leq(const PartialMap& f, const PartialMap& g) {
    if (f.src != g.src || f.tgt != g.tgt) throw ShapeError("leq: shape mismatch");
    for (int x = 1; x <= f.src; ++x)
        if (f.defined(x) && g(x) != f(x)) return false;
    return true;
}

bool has_quotient(const PartialMap& h, const PartialMap& f) {
    if (h.src != f.src) throw ShapeError("quotient: sources differ");
    for (int x = 1; x <= h.src; ++x)
        if (h.defined(x) && !f.defined(x)) return false;
    for (int a = 1; a <= h.src; ++a)
        for (int b = a + 1; b <= h.src; ++b)
            if (h.defined(a) && h.defined(b) && h(a) != h(b) && f(a) == f(b)) return false;
    return true;
}

PartialMap quotient(const PartialMap& h, const PartialMap& f) {
    if (!has_quotient(h, f)) throw ShapeError("no quotient");
    PartialMap q(f.tgt, h.tgt);
    for (int x = 1; x <= h.src; ++x)
        if (h.defined(x)) q.set(f(x), h(x));
    return q;
}

PartialMap restrict_source(const PartialMap& f, const std::vector<int>& sub) {
    PartialMap r((int)sub.size(), f.tgt);
    for (size_t i = 0; i < sub.size(); ++i) r.set((int)i + 1, f(sub[i]));
    return r;
}

std::string to_string(const PartialMap& f) {
    std::string s = "pmap [" + std::to_string(f.src) + "]->[" + std::to_string(f.tgt) + "] {";
    bool first = true;
    for (int x = 1; x <= f.src; ++x) {
        if (!f.defined(x)) continue;
        if (!first) s += ", ";
        first = false;
        s += std::to_string(x) + ">" + std::to_string(f(x));
    }
    return s + "}";
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    void expect(std::string_view t) {
        ws();
        if (s.substr(i, t.size()) != t) throw ShapeError("pmap parse: expected '" + std::string(t) + "'");
        i += t.size();
    }
    bool peek(char c) {
        ws();
        return i < s.size() && s[i] == c;
    }
    int number() {
        ws();
        int v = 0;
        auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
        if (ec != std::errc()) throw ShapeError("pmap parse: expected number");
        i = p - s.data();
        return v;
    }
};

}  // namespace

PartialMap parse_pmap(std::string_view s) {
    Cursor c{s};
    c.expect("pmap");
    c.expect("[");
    int m = c.number();
    c.expect("]->[");
    int n = c.number();
    c.expect("]");
    c.expect("{");
    PartialMap f(m, n);
    int last = 0;
    while (!c.peek('}')) {
        if (last) c.expect(",");
        int k = c.number();
        c.expect(">");
        int v = c.number();
        if (k <= last || k > m) throw ShapeError("pmap parse: keys must ascend within source");
        if (v < 1 || v > n) throw ShapeError("pmap parse: value outside target");
        f.set(k, v);
        last = k;
    }
    c.expect("}");
    c.ws();
    if (c.i != s.size()) throw ShapeError("pmap parse: trailing input");
    return f;
}

}  // namespace genring
