#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "genring/plane.hpp"

namespace genring {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Inequivalent: return "inequivalent";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

namespace {

struct Node {
    int lab = 0, eps = -1, leaf = -1;
    std::vector<Node> ch;
};

Node to_node(const Tree& t, int v, const std::vector<std::vector<int>>& ch) {
    Node n{t.lab[v], t.eps[v], t.leaf[v], {}};
    for (int c : ch[v]) n.ch.push_back(to_node(t, c, ch));
    return n;
}

// As to_node, with the subtree at v replaced by sub.
Node replaced(const Tree& t, int u, const std::vector<std::vector<int>>& ch, int v, const Node& sub) {
    if (u == v) {
        Node r = sub;
        r.lab = t.lab[u];
        return r;
    }
    Node n{t.lab[u], t.eps[u], t.leaf[u], {}};
    for (int c : ch[u]) n.ch.push_back(replaced(t, c, ch, v, sub));
    return n;
}

void emit(const Node& n, int parent, Tree& out) {
    int me = out.size();
    out.par.push_back(parent);
    out.lab.push_back(n.lab);
    out.eps.push_back(n.ch.empty() ? -1 : n.eps);
    out.leaf.push_back(n.ch.empty() ? n.leaf : -1);
    for (auto& c : n.ch) emit(c, me, out);
}

Tree from_node(const Node& n) {
    Tree t;
    emit(n, -1, t);
    return normalize(t);
}

// Sorted boundary ids below every node.
std::vector<std::vector<int>> leaf_sets(const Tree& t) {
    std::vector<std::vector<int>> s(t.size());
    auto ch = t.children();
    for (int v = t.size() - 1; v >= 0; --v) {
        if (ch[v].empty()) s[v].push_back(t.leaf[v]);
        for (int c : ch[v]) s[v].insert(s[v].end(), s[c].begin(), s[c].end());
        std::sort(s[v].begin(), s[v].end());
    }
    return s;
}

int total_nodes(const Datum& d) {
    int s = d.top.size();
    for (auto& b : d.bot) s += b.size();
    return s;
}

// Single trees reachable from t in one move, with at most cap nodes.
std::vector<Tree> tree_moves(const Tree& t, int cap, bool& pruned) {
    std::vector<Tree> out;
    if (t.empty()) return out;
    for (auto& r : transposition_neighbors(t, TreeKind::Oriented)) out.push_back(r);
    auto nu = t.nu();
    for (int a = 0; a < t.size(); ++a) {
        if (nu[a] == 1) out.push_back(normalize(one_reduce_at(t, a)));
        else if (a > 0 && nu[a] > 0 && t.eps[a] == t.eps[t.par[a]]) out.push_back(normalize(o_reduce_at(t, a)));
    }
    if (t.size() + 1 > cap) pruned = true;
    // Unary insertions only create subtrees over a single point, whose swaps reduce away.
    for (auto& r : inverse_reductions(t, cap, false)) out.push_back(r);
    std::vector<Tree> kept;
    for (auto& r : out) {
        if (r.size() > cap) pruned = true;
        else kept.push_back(std::move(r));
    }
    return kept;
}

// Data reachable in one move within the node budget.
std::vector<Datum> datum_moves(const Datum& d, int budget, bool& pruned) {
    std::vector<Datum> out;
    int total = total_nodes(d);
    auto with = [&](int c, Tree t) {
        Datum e = d;
        (c == 0 ? e.top : e.bot[c - 1]) = std::move(t);
        out.push_back(std::move(e));
    };
    for (int c = 0; c <= (int)d.bot.size(); ++c) {
        const Tree& t = c == 0 ? d.top : d.bot[c - 1];
        for (auto& r : tree_moves(t, budget - (total - t.size()), pruned)) with(c, std::move(r));
    }
    // Subtree swaps between the top and one bottom over the same boundary points.
    if (d.top.empty()) return out;
    auto tch = d.top.children();
    auto tls = leaf_sets(d.top);
    for (size_t x = 0; x < d.bot.size(); ++x) {
        const Tree& b = d.bot[x];
        if (b.empty()) continue;
        auto bch = b.children();
        auto bls = leaf_sets(b);
        for (int u = 0; u < d.top.size(); ++u)
            for (int v = 0; v < b.size(); ++v) {
                if (tch[u].empty() && bch[v].empty()) continue;
                if (tls[u] != bls[v]) continue;
                Node su = to_node(d.top, u, tch), sv = to_node(b, v, bch);
                Datum e = d;
                e.top = from_node(replaced(d.top, 0, tch, u, sv));
                e.bot[x] = from_node(replaced(b, 0, bch, v, su));
                if (total_nodes(e) > budget) {
                    pruned = true;
                    continue;
                }
                out.push_back(std::move(e));
            }
    }
    return out;
}

struct Side {
    std::unordered_map<std::string, Datum> seen;
    std::vector<std::string> frontier;
    bool pruned = false;
};

}  // namespace

EquivResult selfadjoint_equiv(const TreeDatumRing& U, const Element& a, const Element& b, int budget,
                              std::size_t state_cap) {
    EquivResult res;
    if (a.shape != b.shape) {
        res.verdict = Verdict::Inequivalent;
        return res;
    }
    auto sizes = [&](const Element& e) {
        std::vector<size_t> v;
        for (auto& t : U.datum(e).bot) v.push_back(t.boundary().size());
        return v;
    };
    if (sizes(a) != sizes(b)) {
        res.verdict = Verdict::Inequivalent;
        return res;
    }
    if (U.equal(a, b)) {
        res.verdict = Verdict::Equivalent;
        return res;
    }
    Side side[2];
    const Element* start[2] = {&a, &b};
    for (int s = 0; s < 2; ++s) {
        auto cd = canonicalize_datum_raw(U.datum(*start[s]));
        side[s].seen.emplace(cd.key, cd.rep);
        side[s].frontier.push_back(cd.key);
    }
    for (;;) {
        res.states = side[0].seen.size() + side[1].seen.size();
        for (int s = 0; s < 2; ++s)
            if (side[s].frontier.empty()) {
                res.pruned = side[0].pruned || side[1].pruned;
                res.verdict = side[s].pruned ? Verdict::Unknown : Verdict::Inequivalent;
                return res;
            }
        int s = side[0].frontier.size() <= side[1].frontier.size() ? 0 : 1;
        Side& me = side[s];
        const Side& other = side[1 - s];
        std::vector<std::string> next;
        for (auto& k : me.frontier) {
            Datum cur = me.seen.at(k);
            for (auto& e : datum_moves(cur, budget, me.pruned)) {
                auto cd = canonicalize_datum_raw(e);
                if (other.seen.count(cd.key)) {
                    res.verdict = Verdict::Equivalent;
                    res.states = side[0].seen.size() + side[1].seen.size();
                    return res;
                }
                if (me.seen.count(cd.key)) continue;
                if (side[0].seen.size() + side[1].seen.size() >= state_cap) {
                    res.verdict = Verdict::Unknown;
                    res.pruned = true;
                    return res;
                }
                me.seen.emplace(cd.key, cd.rep);
                next.push_back(cd.key);
            }
        }
        me.frontier = std::move(next);
    }
}

namespace {

// All raw keys reachable from d within the budget; complete is false when the cap is hit.
std::unordered_set<std::string> component(const Datum& d, int budget, std::size_t state_cap, bool& complete) {
    std::unordered_map<std::string, Datum> seen;
    std::deque<std::string> queue;
    auto cd = canonicalize_datum_raw(d);
    seen.emplace(cd.key, cd.rep);
    queue.push_back(cd.key);
    bool pruned = false;
    while (!queue.empty()) {
        Datum cur = seen.at(queue.front());
        queue.pop_front();
        for (auto& e : datum_moves(cur, budget, pruned)) {
            auto c = canonicalize_datum_raw(e);
            if (seen.count(c.key)) continue;
            if (seen.size() >= state_cap) {
                complete = false;
                queue.clear();
                break;
            }
            seen.emplace(c.key, c.rep);
            queue.push_back(c.key);
        }
    }
    std::unordered_set<std::string> keys;
    for (auto& [k, v] : seen) keys.insert(k);
    return keys;
}

}  // namespace

FiberTable nabla_fiber(const TreeDatumRing& U, int N, int node_cap, int budget) {
    FiberTable tab;
    tab.N = N;
    if (N <= 0) return tab;
    auto trees = enumerate_oriented(N, node_cap);
    tab.complete = trees.complete;
    std::vector<Tree> reps;
    for (auto& c : trees.classes) {
        if (c.canonical.size() > node_cap) {
            tab.complete = false;
            continue;
        }
        reps.push_back(number_leaves(c.canonical));
    }
    std::unordered_set<std::string> keys;
    std::vector<int> perm(N);
    for (auto& top : reps)
        for (auto& bot : reps) {
            std::iota(perm.begin(), perm.end(), 0);
            do {
                Datum d{top, {bot}};
                auto bb = d.bot[0].boundary();
                for (int i = 0; i < N; ++i) d.bot[0].leaf[bb[i]] = perm[i];
                Element e = U.from_datum(d, 1);
                if (keys.insert(U.key(e)).second) tab.classes.push_back(FiberClass{e, -1});
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    // Υ⁺ classes: explore the component of each unassigned class within the budget.
    for (size_t i = 0; i < tab.classes.size(); ++i) {
        if (tab.classes[i].plus_class >= 0) continue;
        int id = tab.plus_classes++;
        tab.classes[i].plus_class = id;
        bool complete = true;
        auto comp = component(U.datum(tab.classes[i].rep), budget, 100000, complete);
        if (!complete) tab.complete = false;
        for (size_t j = i + 1; j < tab.classes.size(); ++j) {
            if (tab.classes[j].plus_class >= 0) continue;
            if (comp.count(canonicalize_datum_raw(U.datum(tab.classes[j].rep)).key)) tab.classes[j].plus_class = id;
        }
    }
    return tab;
}

std::string fiber_tsv(const TreeDatumRing& U, const FiberTable& t) {
    std::string s = "N\tclass\tplus_class\tdatum\n";
    for (size_t i = 0; i < t.classes.size(); ++i)
        s += std::to_string(t.N) + "\t" + std::to_string(i + 1) + "\t" + std::to_string(t.classes[i].plus_class + 1) +
             "\t" + U.format(t.classes[i].rep) + "\n";
    s += "# classes " + std::to_string(t.classes.size()) + ", plus classes " + std::to_string(t.plus_classes) + "\n";
    if (!t.complete) s += "# incomplete\n";
    return s;
}

std::vector<std::pair<std::string, std::string>> selfadjoint_fixtures() {
    const std::string s0 = "(e0 ()()())", s1 = "(e1 ()()())", t0 = "(e0 ()(e1 ()()))", t1 = "(e1 ()(e0 ()()))";
    const std::string c0 = "(e0 ()())", c1 = "(e1 ()())";
    const std::string id3 = "sigma=[1->(1,1), 2->(1,2), 3->(1,3)]";
    const std::string mix3 = "sigma=[1->(1,2), 2->(1,1), 3->(1,3)]";
    auto d = [](const std::string& a, const std::string& b, const std::string& sg) {
        return "{top=" + a + " | x1=" + b + " | " + sg + "}";
    };
    return {
        // N = 2: the transpose of a mixed pair.
        {d(c0, c1, "sigma=[1->(1,1), 2->(1,2)]"), d(c1, c0, "sigma=[1->(1,1), 2->(1,2)]")},
        // N = 3.
        {d(s0, s1, id3), d(s1, s0, id3)},
        {d(t0, t1, id3), d(s0, s1, id3)},
        {d(t1, t0, id3), d(s1, s0, id3)},
        {d(t0, t1, mix3), d(t1, t0, mix3)},
        {d(s0, t0, id3), d(t0, s0, id3)},
        {d(s1, t1, id3), d(t1, s1, id3)},
        {d(s0, t1, mix3), d(t1, s0, id3)},
        {d(t0, s1, id3), d(s1, t0, id3)},
    };
}

}  // namespace genring
