#include <algorithm>
#include <numeric>

#include "genring/trees.hpp"

namespace genring {

Element pi_to_GN(const TreeDatumRing& D, const GRing& GN, const Element& e) {
    std::vector<long> v;
    for (auto& b : D.datum(e).bot) v.push_back((long)b.boundary().size());
    return GN.vec_int(v);
}

namespace {

Element must(const std::optional<Element>& e, const char* what) {
    if (!e) throw std::runtime_error(std::string("evaluation: undefined ") + what);
    return *e;
}

// Value attached to a node with ch.size() children (before padding).
Element node_value(const EvalFamily& a, const Tree& t, int v, const std::vector<std::vector<int>>& ch) {
    const Ring& A = *a.target;
    if (a.aW) {
        PartialMap mu((int)ch[v].size(), a.aW->shape);
        for (size_t i = 0; i < ch[v].size(); ++i) mu.set(int(i) + 1, t.lab[ch[v][i]]);
        return must(A.mul(*a.aW, unit_fibered(A, mu)), "a o 1_mu");
    }
    return a.family((int)ch[v].size());
}

}  // namespace

Element eval_tree(const EvalFamily& a, const Tree& t) {
    const Ring& A = *a.target;
    if (t.empty()) return A.zero(0);
    auto ch = t.children();
    int h = t.height();
    // Levels of the padded tree; -1 marks a padding node standing for the leaf it extends.
    std::vector<int> level{0};
    std::vector<int> owner{0};
    Element cur = A.one();
    for (int d = 1; d <= h; ++d) {
        std::vector<int> next, next_owner;
        PartialMap S(0, (int)level.size());
        std::vector<int> tbl;
        std::vector<Element> comps;
        for (size_t i = 0; i < level.size(); ++i) {
            int v = owner[i];
            bool padded = level[i] < 0 || ch[v].empty();
            if (padded) {
                next.push_back(-1);
                next_owner.push_back(v);
                tbl.push_back(int(i) + 1);
                comps.push_back(A.one());
                continue;
            }
            for (int c : ch[v]) {
                next.push_back(c);
                next_owner.push_back(c);
                tbl.push_back(int(i) + 1);
            }
            comps.push_back(node_value(a, t, v, ch));
        }
        S = PartialMap((int)tbl.size(), (int)level.size(), tbl);
        cur = must(A.mul(cur, Fibered{S, comps}), "level product");
        level = std::move(next);
        owner = std::move(next_owner);
    }
    return cur;
}

Element eval_hom(const TreeDatumRing& D, const EvalFamily& a, const Element& e) {
    const Ring& A = *a.target;
    const Datum& d = D.datum(e);
    int n = e.shape;
    if (d.top.empty()) return A.zero(n);
    Element top = eval_tree(a, d.top);
    // Reorder the top boundary as the disjoint union of the bottom boundaries.
    std::map<int, int> top_pos;
    auto tb = d.top.boundary();
    for (size_t i = 0; i < tb.size(); ++i) top_pos[d.top.leaf[tb[i]]] = int(i) + 1;
    int k = (int)tb.size();
    PartialMap p(k, k), g(k, n);
    std::vector<Element> comps;
    int j = 1;
    for (int x = 0; x < n; ++x) {
        const Tree& b = d.bot[x];
        if (b.empty()) continue;
        for (int v : b.boundary()) {
            p.set(j, top_pos.at(b.leaf[v]));
            g.set(j, x + 1);
            ++j;
        }
        comps.push_back(eval_tree(a, b));
    }
    Element u = must(A.mul(top, unit_fibered(A, p)), "transport along sigma");
    return must(A.contract(u, Fibered{g, comps}), "contraction with the bottoms");
}

std::optional<std::string> check_family(const EvalFamily& a, int max_shape) {
    const Ring& A = *a.target;
    for (int n = 0; n <= max_shape; ++n) {
        Element an = a.aW ? *a.aW : a.family(n);
        if (a.aW && n != an.shape) continue;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            PartialMap pi(n, n, perm);
            auto r = A.mul(an, unit_fibered(A, pi));
            if (!r || !A.equal(*r, an))
                return "family not invariant under " + to_string(pi) + " at shape " + std::to_string(n);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- Δ^[1]

Element Delta1Iso::to_monoid(const Element& e) const {
    const Datum& d = delta->datum(e);
    if (d.top.empty()) return fm->zero(e.shape);
    int x = 0;
    while (d.bot[x].empty()) ++x;
    const auto& M = static_cast<const FreeMonoid&>(fm->monoid());
    MElem w = M.one();
    w.e[0] = d.top.height();
    w.e[1] = d.bot[x].height();
    return fm->elem(x + 1, w, e.shape);
}

Element Delta1Iso::from_monoid(const Element& e) const {
    const auto& v = e.as<MValue>();
    if (v.m.zero || v.x == 0) return delta->zero(e.shape);
    auto ladder = [](long n) {
        Tree t = Tree::ladder((int)n);
        for (int i = 1; i < t.size(); ++i) t.lab[i] = 1;
        t.leaf[t.size() - 1] = 0;
        return t;
    };
    Datum d;
    d.top = ladder(v.m.e[0]);
    d.bot.assign(e.shape, Tree{});
    d.bot[v.x - 1] = ladder(v.m.e[1]);
    return delta->from_datum(d, e.shape);
}

Delta1Iso delta1_iso() {
    Delta1Iso iso;
    iso.delta = make_DeltaW(1);
    iso.fm = std::make_shared<MonoidRing>(FreeMonoid::two_sided());
    return iso;
}

namespace {

// Every element of Δ^[1]_n carried by a word of degree <= L, and zero.
std::vector<Element> words_at(const Delta1Iso& iso, int n, int L) {
    const auto& M = static_cast<const FreeMonoid&>(iso.fm->monoid());
    std::vector<Element> out{iso.delta->zero(n)};
    for (int x = 1; x <= n; ++x)
        for (auto& w : M.words_up_to(L)) out.push_back(iso.from_monoid(iso.fm->elem(x, w, n)));
    return out;
}

std::vector<PartialMap> all_maps(int m, int n) {
    std::vector<PartialMap> out;
    std::vector<int> t(m, 0);
    for (;;) {
        out.emplace_back(m, n, t);
        int i = m - 1;
        while (i >= 0 && ++t[i] > n) t[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace

IsoCheck check_delta1_iso(const Delta1Iso& iso, int L, int max_shape) {
    IsoCheck res;
    const Ring& D = *iso.delta;
    const Ring& FM = *iso.fm;
    auto record = [&](bool ok, const std::string& what) {
        ++res.checked;
        if (!ok) {
            ++res.mismatches;
            if (!res.witness) res.witness = what;
        }
    };
    std::map<int, std::vector<Element>> elems;
    for (int n = 0; n <= max_shape; ++n) elems[n] = words_at(iso, n, L);
    // Round trip.
    for (int n = 1; n <= max_shape; ++n)
        for (auto& e : elems[n]) record(D.equal(iso.from_monoid(iso.to_monoid(e)), e), "round trip " + D.format(e));
    auto transported = [&](const Fibered& b) {
        Fibered out{b.map, {}};
        for (auto& c : b.comps) out.comps.push_back(iso.to_monoid(c));
        return out;
    };
    for (int m = 1; m <= max_shape; ++m)
        for (int n = 1; n <= max_shape; ++n)
            for (auto& f : all_maps(m, n)) {
                auto fibers = fiber_shapes(f);
                // All families of components, one per fiber.
                std::vector<size_t> idx(fibers.size(), 0);
                for (;;) {
                    Fibered b{f, {}};
                    for (size_t i = 0; i < fibers.size(); ++i) b.comps.push_back(elems[(int)fibers[i].xs.size()][idx[i]]);
                    Fibered bt = transported(b);
                    for (auto& a : elems[n]) {
                        auto r = D.mul(a, b);
                        auto s = FM.mul(iso.to_monoid(a), bt);
                        record(r && s && FM.equal(iso.to_monoid(*r), *s), "mul " + D.format(a) + " over " + to_string(f));
                    }
                    for (auto& a : elems[m]) {
                        auto r = D.contract(a, b);
                        auto s = FM.contract(iso.to_monoid(a), bt);
                        record(r && s && FM.equal(iso.to_monoid(*r), *s), "contract " + D.format(a) + " over " + to_string(f));
                    }
                    size_t i = 0;
                    while (i < idx.size() && ++idx[i] == elems[(int)fibers[i].xs.size()].size()) idx[i++] = 0;
                    if (i == idx.size()) break;
                }
            }
    return res;
}

}  // namespace genring
