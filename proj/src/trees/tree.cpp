#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "genring/trees.hpp"

namespace genring {

std::vector<std::vector<int>> Tree::children() const {
    std::vector<std::vector<int>> ch(par.size());
    for (int v = 1; v < size(); ++v) ch[par[v]].push_back(v);
    return ch;
}

std::vector<int> Tree::nu() const {
    std::vector<int> n(par.size(), 0);
    for (int v = 1; v < size(); ++v) ++n[par[v]];
    return n;
}

std::vector<int> Tree::boundary() const {
    std::vector<int> out;
    if (empty()) return out;
    auto ch = children();
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (ch[v].empty()) out.push_back(v);
        for (auto it = ch[v].rbegin(); it != ch[v].rend(); ++it) stack.push_back(*it);
    }
    return out;
}

int Tree::height() const {
    int h = 0;
    std::vector<int> d(par.size(), 0);
    auto order = [&] {
        std::vector<int> o{0};
        auto ch = children();
        for (size_t i = 0; i < o.size(); ++i)
            for (int c : ch[o[i]]) o.push_back(c);
        return o;
    };
    if (empty()) return 0;
    for (int v : order()) {
        if (v) d[v] = d[par[v]] + 1;
        h = std::max(h, d[v]);
    }
    return h;
}

Tree Tree::point() { return Tree{{-1}, {0}, {-1}, {-1}}; }

Tree Tree::star(int n) {
    Tree t = point();
    for (int i = 0; i < n; ++i) {
        t.par.push_back(0);
        t.lab.push_back(0);
        t.eps.push_back(-1);
        t.leaf.push_back(-1);
    }
    return t;
}

Tree Tree::ladder(int n) {
    Tree t = point();
    for (int i = 0; i < n; ++i) {
        t.par.push_back(i);
        t.lab.push_back(0);
        t.eps.push_back(-1);
        t.leaf.push_back(-1);
    }
    return t;
}

namespace {

void fix_attributes(Tree& t) {
    int n = t.size();
    t.lab.resize(n, 0);
    t.eps.resize(n, -1);
    t.leaf.resize(n, -1);
    auto nu = t.nu();
    for (int v = 0; v < n; ++v) {
        if (nu[v] == 0) t.eps[v] = -1;
        else t.leaf[v] = -1;
    }
}

std::string attrs(const Tree& t, int v, bool ids) {
    std::string s;
    auto add = [&](const std::string& a) { s += (s.empty() ? "" : " ") + a; };
    if (t.lab[v] > 0) add("w:" + std::to_string(t.lab[v]));
    if (t.eps[v] >= 0) add("e" + std::to_string(t.eps[v]));
    if (ids && t.leaf[v] >= 0) add("#" + std::to_string(t.leaf[v]));
    return s;
}

// Encodings of all subtrees, bottom-up; children lists sorted by encoding.
std::vector<std::string> encodings(const Tree& t, bool ids, std::vector<std::vector<int>>& ch) {
    int n = t.size();
    ch.assign(n, {});
    for (int v = 1; v < n; ++v) ch[t.par[v]].push_back(v);
    std::vector<int> order{0};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : ch[order[i]]) order.push_back(c);
    std::vector<std::string> enc(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        std::sort(ch[v].begin(), ch[v].end(), [&](int a, int b) { return enc[a] < enc[b]; });
        std::string a = attrs(t, v, ids);
        std::string s = "(" + a;
        if (!a.empty() && !ch[v].empty()) s += " ";
        for (int c : ch[v]) s += enc[c];
        enc[v] = s + ")";
    }
    return enc;
}

Tree relayout(const Tree& t, const std::vector<std::vector<int>>& ch) {
    Tree r;
    std::vector<std::pair<int, int>> stack{{0, -1}};
    while (!stack.empty()) {
        auto [v, p] = stack.back();
        stack.pop_back();
        r.par.push_back(p);
        r.lab.push_back(t.lab[v]);
        r.eps.push_back(t.eps[v]);
        r.leaf.push_back(t.leaf[v]);
        int me = r.size() - 1;
        for (auto it = ch[v].rbegin(); it != ch[v].rend(); ++it) stack.push_back({*it, me});
    }
    return r;
}

Tree normalize_impl(const Tree& t0, bool ids) {
    if (t0.empty()) return Tree{};
    Tree t = t0;
    fix_attributes(t);
    std::vector<std::vector<int>> ch;
    encodings(t, ids, ch);
    return relayout(t, ch);
}

}  // namespace

Tree normalize(const Tree& t) { return normalize_impl(t, true); }

Tree normalize_shape(const Tree& t) { return normalize_impl(t, false); }

Tree strip_leaf_ids(const Tree& t) {
    Tree r = t;
    std::fill(r.leaf.begin(), r.leaf.end(), -1);
    return r;
}

Tree number_leaves(const Tree& t) {
    Tree r = t;
    int k = 0;
    for (int v : r.boundary()) r.leaf[v] = k++;
    return r;
}

std::string to_text(const Tree& t) {
    if (t.empty()) return "0";
    Tree u = t;
    fix_attributes(u);
    std::vector<std::vector<int>> ch;
    return encodings(u, true, ch)[0];
}

bool tree_less(const Tree& a, const Tree& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return to_text(a) < to_text(b);
}

namespace {

struct TreeParser {
    std::string_view s;
    size_t i = 0;
    Tree t;

    void ws() {
        while (i < s.size() && s[i] == ' ') ++i;
    }
    [[noreturn]] void fail(const std::string& m) {
        throw ParseError("tree: " + m + " at offset " + std::to_string(i) + " in '" + std::string(s) + "'");
    }
    int number() {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
        if (ec != std::errc()) fail("expected number");
        i = p - s.data();
        return v;
    }
    void node(int parent) {
        ws();
        if (i >= s.size() || s[i] != '(') fail("expected '('");
        ++i;
        int me = t.size();
        t.par.push_back(parent);
        t.lab.push_back(0);
        t.eps.push_back(-1);
        t.leaf.push_back(-1);
        for (;;) {
            ws();
            if (i >= s.size()) fail("unterminated node");
            char c = s[i];
            if (c == ')') {
                ++i;
                return;
            }
            if (c == '(') {
                node(me);
                continue;
            }
            if (c == 'w' && i + 1 < s.size() && s[i + 1] == ':') {
                i += 2;
                int w = number();
                if (w < 1) fail("label must be >= 1");
                t.lab[me] = w;
            } else if (c == 'e') {
                ++i;
                int e = number();
                if (e != 0 && e != 1) fail("orientation must be 0 or 1");
                t.eps[me] = e;
            } else if (c == '#') {
                ++i;
                t.leaf[me] = number();
            } else {
                fail(std::string("unexpected '") + c + "'");
            }
        }
    }
};

}  // namespace

Tree parse_tree(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "0") return Tree{};
    TreeParser p{s, 0, {}};
    p.node(-1);
    p.ws();
    if (p.i != s.size()) p.fail("trailing input");
    auto nu = p.t.nu();
    for (int v = 0; v < p.t.size(); ++v) {
        if (nu[v] == 0 && p.t.eps[v] >= 0) p.fail("orientation on a boundary point");
        if (nu[v] > 0 && p.t.leaf[v] >= 0) p.fail("boundary id on an interior node");
    }
    return p.t;
}

// ---------------------------------------------------------------- restriction and grafting

namespace {

std::vector<bool> alive_nodes(const Tree& t, const std::vector<bool>& keep_leaf) {
    int n = t.size();
    std::vector<bool> alive(n, false);
    auto nu = t.nu();
    std::vector<int> order{0};
    auto ch = t.children();
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : ch[order[i]]) order.push_back(c);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (nu[v] == 0) alive[v] = keep_leaf[v];
        if (alive[v] && v) alive[t.par[v]] = true;
    }
    return alive;
}

}  // namespace

Tree restrict_tree(const Tree& t, const std::vector<bool>& keep) {
    if (t.empty()) return t;
    auto alive = alive_nodes(t, keep);
    if (!alive[0]) return Tree{};
    std::vector<int> idx(t.size(), -1);
    Tree r;
    std::vector<int> order{0};
    auto ch = t.children();
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : ch[order[i]])
            if (alive[c]) order.push_back(c);
    for (int v : order) {
        idx[v] = r.size();
        r.par.push_back(v ? idx[t.par[v]] : -1);
        r.lab.push_back(t.lab[v]);
        r.eps.push_back(t.eps[v]);
        r.leaf.push_back(t.leaf[v]);
    }
    return r;
}

Tree graft(const Tree& f, const std::vector<const Tree*>& at, const std::function<int(int, int)>& combine) {
    if (f.empty()) return f;
    auto nu = f.nu();
    std::vector<bool> keep(f.size(), false);
    for (int v = 0; v < f.size(); ++v)
        if (nu[v] == 0) keep[v] = at[v] && !at[v]->empty();
    auto alive = alive_nodes(f, keep);
    if (!alive[0]) return Tree{};
    Tree r;
    std::vector<int> idx(f.size(), -1);
    std::vector<int> order{0};
    auto ch = f.children();
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : ch[order[i]])
            if (alive[c]) order.push_back(c);
    for (int v : order) {
        idx[v] = r.size();
        r.par.push_back(v ? idx[f.par[v]] : -1);
        r.lab.push_back(f.lab[v]);
        r.eps.push_back(f.eps[v]);
        r.leaf.push_back(f.leaf[v]);
    }
    for (int v : order) {
        if (nu[v] != 0) continue;
        const Tree& g = *at[v];
        int b = idx[v];
        int fid = f.leaf[v];
        if (g.size() == 1) {
            r.leaf[b] = combine(fid, g.leaf[0]);
            continue;
        }
        r.leaf[b] = -1;
        r.eps[b] = g.eps[0];
        std::vector<int> gidx(g.size(), -1);
        gidx[0] = b;
        // g is assumed to satisfy par[u] < u only after normalization; walk in BFS order.
        std::vector<int> gorder{0};
        auto gch = g.children();
        for (size_t i = 0; i < gorder.size(); ++i)
            for (int c : gch[gorder[i]]) gorder.push_back(c);
        for (int u : gorder) {
            if (u == 0) continue;
            gidx[u] = r.size();
            r.par.push_back(gidx[g.par[u]]);
            r.lab.push_back(g.lab[u]);
            r.eps.push_back(g.eps[u]);
            r.leaf.push_back(gch[u].empty() ? combine(fid, g.leaf[u]) : -1);
        }
    }
    return r;
}

// ---------------------------------------------------------------- transposition

bool can_transpose(const Tree& t, int b, TreeKind kind) {
    auto ch = t.children();
    if (ch[b].empty()) return false;
    size_t n = ch[ch[b][0]].size();
    if (n == 0) return false;
    std::set<int> w0;
    if (kind == TreeKind::Labeled)
        for (int x : ch[ch[b][0]]) w0.insert(t.lab[x]);
    for (int a : ch[b]) {
        if (ch[a].size() != n) return false;
        if (kind == TreeKind::Oriented && t.eps[a] != t.eps[ch[b][0]]) return false;
        if (kind == TreeKind::Labeled) {
            std::set<int> wa;
            for (int x : ch[a]) wa.insert(t.lab[x]);
            if (wa != w0) return false;
        }
    }
    return true;
}


namespace {

// Transposition at b. sigma[i][j] is the new group of the j-th child of the i-th child of b.
// new_lab labels the new middle nodes; grand_lab (when not empty) relabels the grandchildren.
Tree transpose_impl(const Tree& t0, int b, const std::vector<std::vector<int>>& sigma, const std::vector<int>& new_lab,
                    bool relabel_grandchildren) {
    Tree t = t0;
    fix_attributes(t);
    auto ch = t.children();
    if (b < 0 || b >= t.size() || ch[b].empty()) throw TreeError("transpose: node has no children");
    const auto kids = ch[b];
    int n = (int)ch[kids[0]].size();
    if (n == 0) throw TreeError("transpose: children are boundary points");
    if (sigma.size() != kids.size()) throw TreeError("transpose: one bijection per child required");
    for (size_t i = 0; i < kids.size(); ++i) {
        if ((int)ch[kids[i]].size() != n) throw TreeError("transpose: children of unequal valence");
        std::vector<int> s = sigma[i];
        std::sort(s.begin(), s.end());
        for (int j = 0; j < n; ++j)
            if (s[j] != j) throw TreeError("transpose: not a bijection");
    }
    int eps_children = t.eps[kids[0]];
    Tree r = t;
    std::vector<int> fresh(n);
    for (int j = 0; j < n; ++j) {
        fresh[j] = r.size();
        r.par.push_back(b);
        r.lab.push_back(new_lab.empty() ? 0 : new_lab[j]);
        r.eps.push_back(t.eps[b]);
        r.leaf.push_back(-1);
    }
    r.eps[b] = eps_children;
    for (size_t i = 0; i < kids.size(); ++i)
        for (int j = 0; j < n; ++j) {
            int x = ch[kids[i]][j];
            r.par[x] = fresh[sigma[i][j]];
            if (relabel_grandchildren) r.lab[x] = t.lab[kids[i]];
        }
    std::vector<bool> removed(r.size(), false);
    for (int a : kids) removed[a] = true;
    std::vector<std::vector<int>> rch(r.size());
    for (int v = 1; v < r.size(); ++v)
        if (!removed[v]) rch[r.par[v]].push_back(v);
    std::vector<int> order{0}, idx(r.size(), -1);
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : rch[order[i]]) order.push_back(c);
    Tree out;
    for (int v : order) {
        idx[v] = out.size();
        out.par.push_back(v ? idx[r.par[v]] : -1);
        out.lab.push_back(r.lab[v]);
        out.eps.push_back(r.eps[v]);
        out.leaf.push_back(r.leaf[v]);
    }
    return out;
}

Tree transpose_labeled(const Tree& t, int b) {
    auto ch = t.children();
    std::vector<int> w0;
    for (int x : ch[ch[b][0]]) w0.push_back(t.lab[x]);
    std::sort(w0.begin(), w0.end());
    std::vector<std::vector<int>> sigma;
    for (int a : ch[b]) {
        std::vector<int> s;
        for (int x : ch[a]) s.push_back(int(std::lower_bound(w0.begin(), w0.end(), t.lab[x]) - w0.begin()));
        sigma.push_back(s);
    }
    return transpose_impl(t, b, sigma, w0, true);
}

}  // namespace

Tree transpose_tree(const Tree& t, int b, const std::vector<std::vector<int>>& sigma) {
    return transpose_impl(t, b, sigma, {}, false);
}

std::vector<Tree> transposition_neighbors(const Tree& t0, TreeKind kind) {
    std::vector<Tree> out;
    if (t0.empty()) return out;
    Tree t = t0;
    fix_attributes(t);
    std::unordered_set<std::string> seen;
    auto add = [&](Tree r) {
        r = normalize(r);
        if (seen.insert(to_text(r)).second) out.push_back(std::move(r));
    };
    auto ch = t.children();
    for (int b = 0; b < t.size(); ++b) {
        if (!can_transpose(t, b, kind)) continue;
        if (kind == TreeKind::Labeled) {
            add(transpose_labeled(t, b));
            continue;
        }
        int k = (int)ch[b].size();
        int n = (int)ch[ch[b][0]].size();
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        std::vector<std::vector<int>> sigma(k, id);
        // The first child keeps the identity; relabeling the groups is an isomorphism.
        std::function<void(int)> rec = [&](int i) {
            if (i == k) {
                add(transpose_impl(t, b, sigma, {}, false));
                return;
            }
            std::vector<int> p = id;
            do {
                sigma[i] = p;
                rec(i + 1);
            } while (std::next_permutation(p.begin(), p.end()));
        };
        rec(1);
    }
    return out;
}

// ---------------------------------------------------------------- oriented reductions

namespace {

Tree drop_node(const Tree& t, int a) {
    auto ch = t.children();
    Tree r = t;
    int up = a ? t.par[a] : -1;
    for (int c : ch[a]) r.par[c] = up;
    std::vector<int> order, idx(t.size(), -1);
    int root = a ? 0 : ch[a][0];
    order.push_back(root);
    std::vector<std::vector<int>> rch(t.size());
    for (int v = 0; v < t.size(); ++v)
        if (v != a && v != root && r.par[v] >= 0) rch[r.par[v]].push_back(v);
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : rch[order[i]]) order.push_back(c);
    Tree out;
    for (int v : order) {
        idx[v] = out.size();
        out.par.push_back(v == root ? -1 : idx[r.par[v]]);
        out.lab.push_back(v == root ? 0 : r.lab[v]);
        out.eps.push_back(r.eps[v]);
        out.leaf.push_back(r.leaf[v]);
    }
    return out;
}

}  // namespace

Tree one_reduce_at(const Tree& t, int a) {
    auto nu = t.nu();
    if (nu[a] != 1) throw TreeError("1-reduction needs a node with one child");
    return drop_node(t, a);
}

Tree o_reduce_at(const Tree& t, int a) {
    auto nu = t.nu();
    if (a == 0 || nu[a] == 0 || t.eps[a] != t.eps[t.par[a]]) throw TreeError("O-reduction not applicable");
    return drop_node(t, a);
}

Tree reduce_oriented(const Tree& t0) {
    if (t0.empty()) return t0;
    Tree t = t0;
    fix_attributes(t);
    for (;;) {
        auto nu = t.nu();
        int hit = -1;
        bool one = false;
        for (int v = 0; v < t.size() && hit < 0; ++v)
            if (nu[v] == 1) hit = v, one = true;
        for (int v = 1; v < t.size() && hit < 0; ++v)
            if (nu[v] > 0 && t.eps[v] == t.eps[t.par[v]]) hit = v;
        if (hit < 0) break;
        t = one ? one_reduce_at(t, hit) : o_reduce_at(t, hit);
    }
    return normalize(t);
}

bool is_one_reduced(const Tree& t) {
    auto nu = t.nu();
    return std::none_of(nu.begin(), nu.end(), [](int v) { return v == 1; });
}

bool is_o_reduced(const Tree& t) {
    auto nu = t.nu();
    for (int v = 1; v < t.size(); ++v)
        if (nu[v] > 0 && t.eps[v] == t.eps[t.par[v]]) return false;
    return true;
}

// ---------------------------------------------------------------- classes

namespace {

std::vector<Tree> moves_impl(const Tree& t, TreeKind kind) {
    auto out = transposition_neighbors(t, kind);
    if (kind == TreeKind::Oriented) {
        for (auto& r : out) r = reduce_oriented(r);
        Tree red = reduce_oriented(t);
        if (to_text(red) != to_text(normalize(t))) out.push_back(red);
    }
    return out;
}

std::vector<Tree> moves(const Tree& t, TreeKind kind) { return moves_impl(t, kind); }

}  // namespace

std::vector<Tree> class_moves(const Tree& t, TreeKind kind) { return moves_impl(t, kind); }

Tree greedy_descent(const Tree& t, TreeKind kind) {
    if (t.empty()) return t;
    Tree start = kind == TreeKind::Oriented ? reduce_oriented(t) : normalize(t);
    for (;;) {
        std::optional<Tree> best;
        for (auto& r : moves(start, kind))
            if (r.size() < start.size() && (!best || tree_less(r, *best))) best = r;
        if (!best) return start;
        start = *best;
    }
}

std::vector<Tree> class_min_members(const Tree& t, TreeKind kind, const CanonOptions& opt) {
    if (t.empty()) return {Tree{}};
    Tree start = greedy_descent(t, kind);
    int minsize = start.size();
    std::unordered_map<std::string, Tree> seen;
    std::deque<std::string> queue;
    std::string s0 = to_text(start);
    seen.emplace(s0, start);
    queue.push_back(s0);
    while (!queue.empty()) {
        Tree cur = seen.at(queue.front());
        queue.pop_front();
        if (cur.size() > minsize + opt.slack) continue;
        for (auto& r : moves(cur, kind)) {
            if (r.size() > minsize + opt.slack) continue;
            std::string key = to_text(r);
            if (seen.count(key)) continue;
            if (seen.size() >= opt.orbit_cap) throw OrbitOverflow("orbit cap exceeded");
            minsize = std::min(minsize, r.size());
            seen.emplace(key, r);
            queue.push_back(key);
        }
    }
    std::vector<Tree> out;
    for (auto& [k, v] : seen)
        if (v.size() == minsize) out.push_back(v);
    std::sort(out.begin(), out.end(), tree_less);
    return out;
}

Tree canonicalize(const Tree& t, TreeKind kind, const CanonOptions& opt) {
    return class_min_members(strip_leaf_ids(t), kind, opt).front();
}

std::vector<Tree> inverse_reductions(const Tree& t, int node_cap, bool unary) {
    std::vector<Tree> out;
    if (t.size() + 1 > node_cap) return out;
    auto ch = t.children();
    for (int v = 0; v < t.size() && unary; ++v) {
        for (int e = 0; e < 2; ++e) {
            Tree r = t;
            int u = r.size();
            r.par.push_back(v ? t.par[v] : -1);
            r.lab.push_back(0);
            r.eps.push_back(e);
            r.leaf.push_back(-1);
            if (v == 0) {
                // New root: swap roles so the root stays at index 0.
                r.par[u] = 0;
                std::swap(r.eps[0], r.eps[u]);
                std::swap(r.leaf[0], r.leaf[u]);
                for (int c : ch[0]) r.par[c] = u;
            } else {
                r.par[v] = u;
            }
            out.push_back(normalize(r));
        }
    }
    for (int p = 0; p < t.size(); ++p) {
        int k = (int)ch[p].size();
        if (k < 2) continue;
        for (int mask = 1; mask < (1 << k); ++mask) {
            // Grouping one child, or every child, creates a node with one child.
            if (!unary && (mask == (1 << k) - 1 || __builtin_popcount(mask) == 1)) continue;
            Tree r = t;
            int u = r.size();
            r.par.push_back(p);
            r.lab.push_back(0);
            r.eps.push_back(t.eps[p]);
            r.leaf.push_back(-1);
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) r.par[ch[p][i]] = u;
            out.push_back(normalize(r));
        }
    }
    return out;
}

std::vector<Tree> orbit_oracle(const Tree& t, TreeKind kind, int node_cap, std::size_t orbit_cap) {
    std::unordered_map<std::string, Tree> seen;
    std::deque<std::string> queue;
    Tree s = normalize(t);
    seen.emplace(to_text(s), s);
    queue.push_back(to_text(s));
    while (!queue.empty()) {
        Tree cur = seen.at(queue.front());
        queue.pop_front();
        std::vector<Tree> next = transposition_neighbors(cur, kind);
        if (kind == TreeKind::Oriented) {
            auto nu = cur.nu();
            for (int v = 0; v < cur.size(); ++v) {
                if (nu[v] == 1) next.push_back(normalize(one_reduce_at(cur, v)));
                if (v && nu[v] > 0 && cur.eps[v] == cur.eps[cur.par[v]]) next.push_back(normalize(o_reduce_at(cur, v)));
            }
            for (auto& r : inverse_reductions(cur, node_cap)) next.push_back(std::move(r));
        }
        for (auto& r : next) {
            if (r.size() > node_cap) continue;
            std::string key = to_text(r);
            if (seen.count(key)) continue;
            if (seen.size() >= orbit_cap) throw OrbitOverflow("oracle orbit cap exceeded");
            seen.emplace(key, r);
            queue.push_back(key);
        }
    }
    std::vector<Tree> out;
    for (auto& [k, v] : seen) out.push_back(v);
    std::sort(out.begin(), out.end(), tree_less);
    return out;
}

std::vector<Tree> all_trees(int n) {
    if (n <= 0) return {};
    std::vector<Tree> level{Tree::point()};
    for (int m = 2; m <= n; ++m) {
        std::map<std::string, Tree> next;
        for (auto& t : level)
            for (int v = 0; v < t.size(); ++v) {
                Tree r = t;
                r.par.push_back(v);
                r.lab.push_back(0);
                r.eps.push_back(-1);
                r.leaf.push_back(-1);
                r = normalize(r);
                next.emplace(to_text(r), r);
            }
        level.clear();
        for (auto& [k, t] : next) level.push_back(t);
    }
    std::sort(level.begin(), level.end(), tree_less);
    return level;
}

std::vector<Tree> all_oriented_trees(int n) {
    std::map<std::string, Tree> out;
    for (auto& t : all_trees(n)) {
        auto nu = t.nu();
        std::vector<int> interior;
        for (int v = 0; v < t.size(); ++v)
            if (nu[v] > 0) interior.push_back(v);
        for (int mask = 0; mask < (1 << interior.size()); ++mask) {
            Tree r = t;
            for (size_t i = 0; i < interior.size(); ++i) r.eps[interior[i]] = mask >> i & 1;
            r = normalize(r);
            out.emplace(to_text(r), r);
        }
    }
    std::vector<Tree> v;
    for (auto& [k, t] : out) v.push_back(t);
    std::sort(v.begin(), v.end(), tree_less);
    return v;
}

std::unordered_map<std::string, std::string> closure_partition(TreeKind kind, int node_cap) {
    std::vector<Tree> all;
    for (int n = 1; n <= node_cap; ++n)
        for (auto& t : kind == TreeKind::Oriented ? all_oriented_trees(n) : all_trees(n)) all.push_back(t);
    std::unordered_map<std::string, int> id;
    std::vector<std::string> text;
    for (auto& t : all) {
        id.emplace(to_text(t), (int)text.size());
        text.push_back(to_text(t));
    }
    std::vector<int> uf(all.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    auto join = [&](int a, const Tree& r) {
        auto it = id.find(to_text(r));
        if (it == id.end()) return;
        int x = find(a), y = find(it->second);
        if (x == y) return;
        // Keep the smallest tree as root; all is sorted by tree_less.
        if (x < y) uf[y] = x;
        else uf[x] = y;
    };
    for (int i = 0; i < (int)all.size(); ++i) {
        const Tree& t = all[i];
        for (auto& r : transposition_neighbors(t, kind)) join(i, r);
        if (kind != TreeKind::Oriented) continue;
        auto nu = t.nu();
        for (int v = 0; v < t.size(); ++v) {
            if (nu[v] == 1) join(i, normalize(one_reduce_at(t, v)));
            if (v && nu[v] > 0 && t.eps[v] == t.eps[t.par[v]]) join(i, normalize(o_reduce_at(t, v)));
        }
    }
    std::unordered_map<std::string, std::string> out;
    for (int i = 0; i < (int)all.size(); ++i) out.emplace(text[i], text[find(i)]);
    return out;
}

}  // namespace genring
