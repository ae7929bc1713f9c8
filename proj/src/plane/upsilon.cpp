#include <algorithm>

#include "genring/plane.hpp"

namespace genring {

std::shared_ptr<TreeDatumRing> make_Upsilon() {
    return std::make_shared<TreeDatumRing>(TreeKind::Oriented, 0, "Upsilon");
}

Element nabla(const TreeDatumRing& U, const GRing& GN, const Element& e) { return pi_to_GN(U, GN, e); }

Homomorphism nabla_hom(const TreeDatumRing& U, const GRing& GN) {
    return Homomorphism{&U, &GN, [&U, &GN](const Element& e) { return nabla(U, GN, e); }};
}

Element delta_on(const TreeDatumRing& U, const std::vector<bool>& keep, int eps) {
    int n = (int)keep.size();
    int k = (int)std::count(keep.begin(), keep.end(), true);
    if (k == 0) return U.zero(n);
    Datum d;
    d.top = Tree::star(k);
    d.top.eps[0] = eps;
    d.bot.assign(n, Tree{});
    int id = 0;
    for (int x = 0; x < n; ++x) {
        if (!keep[x]) continue;
        d.top.leaf[id + 1] = id;
        Tree p = Tree::point();
        p.leaf[0] = id;
        d.bot[x] = p;
        ++id;
    }
    return U.from_datum(d, n);
}

namespace {

int total_nodes(const Datum& d) {
    int s = d.top.size();
    for (auto& b : d.bot) s += b.size();
    return s;
}

std::vector<PartialMap> maps_between(int m, int n) {
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

DeltaRelationReport check_delta_relations(const TreeDatumRing& U, int max_shape) {
    DeltaRelationReport rep;
    auto fail = [&](const std::string& w) {
        if (!rep.witness) rep.witness = w;
    };
    for (int eps = 0; eps < 2; ++eps) {
        ++rep.checked;
        if (!U.equal(U.delta(1, eps), U.one())) fail("delta_[1]^" + std::to_string(eps) + " is not 1");
    }
    for (int m = 0; m <= max_shape; ++m)
        for (int n = 0; n <= max_shape; ++n)
            for (auto& f : maps_between(m, n)) {
                std::vector<bool> keep(m);
                for (int x = 1; x <= m; ++x) keep[x - 1] = f.defined(x);
                auto fibers = fiber_shapes(f);
                size_t widest = 0;
                for (auto& fb : fibers) widest = std::max(widest, fb.xs.size());
                for (int e0 = 0; e0 < 2; ++e0)
                    for (int e1 = 0; e1 < 2; ++e1) {
                        Fibered b{f, {}};
                        for (auto& fb : fibers) b.comps.push_back(U.delta((int)fb.xs.size(), e1));
                        auto r = U.mul(U.delta(n, e0), b);
                        ++rep.checked;
                        std::string at = " over " + to_string(f) + " orientations " + std::to_string(e0) +
                                         std::to_string(e1);
                        if (!r) {
                            fail("undefined product" + at);
                            continue;
                        }
                        Element target = delta_on(U, keep, e0);
                        if (e0 == e1) {
                            if (!U.equal(*r, target)) fail("delta_Y o delta_f != delta_D(f)" + at);
                        } else if (fibers.size() >= 2 && widest >= 2) {
                            if (total_nodes(U.canonical(*r).rep) <= total_nodes(U.canonical(target).rep))
                                fail("mixed product collapsed" + at);
                        }
                    }
            }
    return rep;
}

// ---------------------------------------------------------------- reduced oriented trees

std::vector<int> tree_partition(const Tree& t) {
    std::vector<int> p;
    for (int v : t.nu())
        if (v > 0) p.push_back(v - 1);
    std::sort(p.rbegin(), p.rend());
    return p;
}

std::string format_partition(const std::vector<int>& p) {
    if (p.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "+" : "") + std::to_string(p[i]);
    return s;
}

bool orientation_parity(const Tree& t) {
    if (t.empty()) return true;
    auto nu = t.nu();
    std::vector<int> depth(t.size(), 0);
    for (int v = 1; v < t.size(); ++v) depth[v] = depth[t.par[v]] + 1;
    for (int v = 0; v < t.size(); ++v)
        if (nu[v] > 0 && t.eps[v] != (t.eps[0] + depth[v]) % 2) return false;
    return true;
}

std::vector<Tree> reduced_shapes(int leaves) {
    std::vector<Tree> out;
    if (leaves <= 0) return out;
    for (int n = 1; n <= 2 * leaves - 1; ++n)
        for (auto& t : all_trees(n))
            if (is_one_reduced(t) && (int)t.boundary().size() == leaves) out.push_back(t);
    return out;
}

std::vector<Tree> reduced_oriented_trees(int leaves) {
    std::vector<Tree> out;
    for (auto& s : reduced_shapes(leaves)) {
        if (s.size() == 1) {
            out.push_back(s);
            continue;
        }
        auto nu = s.nu();
        std::vector<int> depth(s.size(), 0);
        for (int v = 1; v < s.size(); ++v) depth[v] = depth[s.par[v]] + 1;
        for (int root = 0; root < 2; ++root) {
            Tree t = s;
            for (int v = 0; v < t.size(); ++v) t.eps[v] = nu[v] > 0 ? (root + depth[v]) % 2 : -1;
            out.push_back(normalize(t));
        }
    }
    return out;
}

OrientedTable enumerate_oriented(int N, int node_cap, std::size_t orbit_cap) {
    OrientedTable tab;
    tab.N = N;
    if (N <= 0) return tab;
    if (2 * N - 1 > node_cap) {
        tab.complete = false;
        return tab;
    }
    std::map<std::string, OrientedClass> by_canon;
    for (auto& t : reduced_oriented_trees(N)) {
        Tree c;
        try {
            c = canonicalize(t, TreeKind::Oriented, CanonOptions{1, orbit_cap});
        } catch (const OrbitOverflow&) {
            tab.complete = false;
            continue;
        }
        auto& cls = by_canon[to_text(c)];
        cls.canonical = c;
        cls.members.push_back(t);
    }
    for (auto& [k, cls] : by_canon) {
        cls.partition = tree_partition(cls.canonical);
        cls.orientation = cls.canonical.size() > 1 ? cls.canonical.eps[0] : -1;
        std::sort(cls.members.begin(), cls.members.end(), tree_less);
        tab.classes.push_back(std::move(cls));
    }
    std::sort(tab.classes.begin(), tab.classes.end(), [](const OrientedClass& a, const OrientedClass& b) {
        if (a.partition != b.partition) return a.partition > b.partition;
        if (a.orientation != b.orientation) return a.orientation < b.orientation;
        return tree_less(a.canonical, b.canonical);
    });
    return tab;
}

std::string oriented_tsv(const OrientedTable& t) {
    std::string s = "N\tpartition\torientation\ttree\tclass_size\n";
    for (auto& c : t.classes) {
        s += std::to_string(t.N) + "\t" + format_partition(c.partition) + "\t" +
             (c.orientation < 0 ? std::string("*") : std::to_string(c.orientation)) + "\t" + to_text(c.canonical) +
             "\t" + std::to_string(c.members.size()) + "\n";
    }
    if (!t.complete) s += "# incomplete\n";
    return s;
}

}  // namespace genring
