#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "genring/trees.hpp"

namespace genring {

std::vector<Tree> ClassCache::members(const Tree& t) {
    if (t.empty()) return {Tree{}};
    Tree s = normalize_shape(t);
    std::vector<int> ids;
    for (int v : s.boundary()) ids.push_back(s.leaf[v]);
    std::string key = to_text(strip_leaf_ids(s));
    std::vector<Tree> base;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) base = it->second;
    }
    if (base.empty()) {
        base = class_min_members(number_leaves(strip_leaf_ids(s)), kind_, opt_);
        std::lock_guard<std::mutex> lock(mu_);
        cache_.emplace(key, base);
    }
    for (auto& m : base) {
        for (auto& id : m.leaf)
            if (id >= 0) id = ids[id];
        m = normalize(m);
    }
    return base;
}

std::map<int, int> sigma_bar(const Datum& d) {
    std::map<int, int> out;
    for (int x = 0; x < (int)d.bot.size(); ++x)
        for (int v : d.bot[x].boundary()) out[d.bot[x].leaf[v]] = x;
    return out;
}

// ---------------------------------------------------------------- canonical form of a datum

namespace {

// Leaf-labelled class members of every component, glued along shared boundary ids, as a colored graph.
class Gadget {
public:
    Gadget(const std::vector<std::vector<Tree>>& comps) : comps_(comps) {
        std::set<int> idset;
        for (auto& c : comps_)
            for (auto& m : c)
                for (int v = 0; v < m.size(); ++v)
                    if (m.leaf[v] >= 0) idset.insert(m.leaf[v]);
        ids_.assign(idset.begin(), idset.end());
        k_ = (int)ids_.size();
        std::map<int, int> pos;
        for (int i = 0; i < k_; ++i) pos[ids_[i]] = i;
        nv_ = k_;
        std::vector<std::vector<int>> init;
        for (int i = 0; i < k_; ++i) init.push_back({0});
        par_.assign(k_, -1);
        link_.assign(k_, {});
        kids_.assign(k_, {});
        for (int c = 0; c < (int)comps_.size(); ++c)
            for (auto& m : comps_[c]) {
                int base = nv_;
                for (int v = 0; v < m.size(); ++v) {
                    bool leaf = m.leaf[v] >= 0 || m.size() == 1;
                    init.push_back({1, c, v == 0, m.eps[v], m.lab[v], leaf});
                    par_.push_back(v ? base + m.par[v] : -1);
                    kids_.push_back({});
                    link_.push_back({});
                    if (v) kids_[base + m.par[v]].push_back(base + v);
                    if (m.leaf[v] >= 0) {
                        int s = pos.at(m.leaf[v]);
                        link_.back().push_back(s);
                        link_[s].push_back(base + v);
                        twin_[s].push_back(base + (v ? m.par[v] : 0));
                        twin_[s].push_back(m.lab[v]);
                    }
                }
                nv_ += m.size();
            }
        color_ = rank(init);
        for (auto& c : comps_) {
            std::set<std::string> ts;
            std::set<int> ls;
            for (auto& m : c) {
                ts.insert(to_text(m));
                for (int id : m.leaf)
                    if (id >= 0) ls.insert(id);
            }
            texts_.push_back(std::move(ts));
            leafsets_.push_back(std::move(ls));
        }
    }

    CanonDatum run(int n) {
        best_.reset();
        search(color_, n);
        return *best_;
    }

private:
    template <class T>
    static std::vector<int> rank(const std::vector<T>& sig) {
        std::vector<T> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(sig.size());
        for (size_t i = 0; i < sig.size(); ++i)
            out[i] = int(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
        return out;
    }

    std::vector<int> refine(std::vector<int> col) const {
        if (col.empty()) return col;
        int classes = *std::max_element(col.begin(), col.end()) + 1;
        for (;;) {
            std::vector<std::vector<int>> sig(nv_);
            for (int v = 0; v < nv_; ++v) {
                auto& s = sig[v];
                s.push_back(col[v]);
                s.push_back(par_[v] >= 0 ? col[par_[v]] : -1);
                std::vector<int> a;
                for (int c : kids_[v]) a.push_back(col[c]);
                std::sort(a.begin(), a.end());
                s.push_back(-2);
                s.insert(s.end(), a.begin(), a.end());
                a.clear();
                for (int c : link_[v]) a.push_back(col[c]);
                std::sort(a.begin(), a.end());
                s.push_back(-3);
                s.insert(s.end(), a.begin(), a.end());
            }
            auto next = rank(sig);
            int nc = *std::max_element(next.begin(), next.end()) + 1;
            col = std::move(next);
            if (nc == classes) return col;
            classes = nc;
        }
    }

    void search(std::vector<int> col, int n) {
        col = refine(std::move(col));
        // First non-singleton cell of shared leaves, by color.
        std::map<int, std::vector<int>> cells;
        for (int i = 0; i < k_; ++i) cells[col[i]].push_back(i);
        const std::vector<int>* target = nullptr;
        for (auto& [c, vs] : cells)
            if (vs.size() > 1) {
                target = &vs;
                break;
            }
        if (!target) {
            leaf(col, n);
            return;
        }
        std::set<std::vector<int>> tried;
        std::vector<int> done;
        for (int u : *target) {
            if (!tried.insert(twin_.count(u) ? twin_.at(u) : std::vector<int>{u}).second) continue;
            if (std::any_of(done.begin(), done.end(), [&](int t) { return same_orbit(t, u) || swap_is_automorphism(t, u); }))
                continue;
            done.push_back(u);
            std::vector<int> c2(col.size());
            for (int v = 0; v < nv_; ++v) c2[v] = 2 * col[v];
            c2[u] += 1;
            prefix_.push_back(u);
            search(std::move(c2), n);
            prefix_.pop_back();
        }
    }

    // Whether a known automorphism fixing the current prefix maps u to w.
    bool same_orbit(int u, int w) const {
        std::vector<int> uf(k_);
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
        for (auto& g : autos_) {
            if (std::any_of(prefix_.begin(), prefix_.end(), [&](int p) { return g[p] != p; })) continue;
            for (int i = 0; i < k_; ++i) uf[find(i)] = find(g[i]);
        }
        return find(u) == find(w);
    }

    // Whether exchanging two shared boundary points maps every class to itself.
    bool swap_is_automorphism(int u, int w) {
        auto key = std::minmax(u, w);
        auto it = swaps_.find(key);
        if (it != swaps_.end()) return it->second;
        int a = ids_[u], b = ids_[w];
        bool ok = true;
        for (size_t c = 0; c < comps_.size() && ok; ++c) {
            if (!leafsets_[c].count(a) && !leafsets_[c].count(b)) continue;
            for (auto m : comps_[c]) {
                for (auto& id : m.leaf)
                    if (id == a) id = b;
                    else if (id == b) id = a;
                if (!texts_[c].count(to_text(normalize(m)))) {
                    ok = false;
                    break;
                }
            }
        }
        swaps_[key] = ok;
        return ok;
    }

    void leaf(const std::vector<int>& col, int n) {
        std::vector<int> order(k_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return col[a] < col[b]; });
        std::map<int, int> relabel;
        for (int r = 0; r < k_; ++r) relabel[ids_[order[r]]] = r;
        CanonDatum cd;
        cd.key = std::to_string(n) + ":";
        for (size_t c = 0; c < comps_.size(); ++c) {
            std::vector<Tree> ms;
            std::vector<std::string> texts;
            for (auto m : comps_[c]) {
                for (auto& id : m.leaf)
                    if (id >= 0) id = relabel.at(id);
                m = normalize(m);
                texts.push_back(to_text(m));
                ms.push_back(std::move(m));
            }
            std::vector<int> idx(ms.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return texts[a] < texts[b]; });
            cd.key += c ? "|" : "";
            for (int i : idx) cd.key += texts[i] + ";";
            Tree rep = ms.empty() ? Tree{} : ms[idx[0]];
            if (c == 0) cd.rep.top = rep;
            else cd.rep.bot.push_back(rep);
        }
        std::vector<int> lab(k_);
        for (int r = 0; r < k_; ++r) lab[order[r]] = r;
        auto [it, fresh] = seen_.emplace(cd.key, lab);
        if (!fresh) {
            // Same certificate: the two labellings differ by an automorphism.
            std::vector<int> inv(k_), g(k_);
            for (int i = 0; i < k_; ++i) inv[it->second[i]] = i;
            for (int i = 0; i < k_; ++i) g[i] = inv[lab[i]];
            autos_.push_back(std::move(g));
        }
        if (!best_ || cd.key < best_->key) best_ = std::move(cd);
    }

    const std::vector<std::vector<Tree>>& comps_;
    std::vector<int> ids_;
    int k_ = 0, nv_ = 0;
    std::vector<int> par_, color_;
    std::vector<std::vector<int>> kids_, link_;
    std::map<int, std::vector<int>> twin_;
    std::vector<std::set<std::string>> texts_;
    std::vector<std::set<int>> leafsets_;
    std::map<std::pair<int, int>, bool> swaps_;
    std::vector<int> prefix_;
    std::vector<std::vector<int>> autos_;
    std::map<std::string, std::vector<int>> seen_;
    std::optional<CanonDatum> best_;
};

}  // namespace

CanonDatum canonicalize_datum(const Datum& d, ClassCache& cache) {
    std::vector<std::vector<Tree>> comps;
    comps.push_back(cache.members(d.top));
    for (auto& b : d.bot) comps.push_back(cache.members(b));
    Gadget g(comps);
    return g.run((int)d.bot.size());
}

CanonDatum canonicalize_datum_raw(const Datum& d) {
    std::vector<std::vector<Tree>> comps;
    comps.push_back({normalize(d.top)});
    for (auto& b : d.bot) comps.push_back({normalize(b)});
    Gadget g(comps);
    return g.run((int)d.bot.size());
}

std::optional<bool> equivalent_data(const Datum& a0, const Datum& b0, TreeKind kind, const CanonOptions& opt,
                                    std::size_t budget) {
    if (a0.bot.size() != b0.bot.size()) return false;
    auto descend = [&](const Datum& d) {
        Datum r{greedy_descent(d.top, kind), {}};
        for (auto& t : d.bot) r.bot.push_back(greedy_descent(t, kind));
        return r;
    };
    auto comp = [](Datum& d, size_t c) -> Tree& { return c ? d.bot[c - 1] : d.top; };
    Datum a = descend(a0), b = descend(b0);
    size_t nc = a.bot.size() + 1;
    std::vector<int> bound(nc);
    for (size_t c = 0; c < nc; ++c) bound[c] = std::min(comp(a, c).size(), comp(b, c).size()) + opt.slack;
    struct Side {
        std::unordered_map<std::string, Datum> seen;
        std::deque<std::string> frontier;
    } side[2];
    for (int s = 0; s < 2; ++s) {
        const Datum& d = s ? b : a;
        std::string k = canonicalize_datum_raw(d).key;
        side[s].seen.emplace(k, d);
        side[s].frontier.push_back(k);
    }
    if (side[0].seen.count(side[1].frontier.front())) return true;
    for (;;) {
        int s = side[0].frontier.size() <= side[1].frontier.size() ? 0 : 1;
        if (side[s].frontier.empty()) return false;
        // Expand one full layer of the smaller side.
        std::deque<std::string> layer;
        std::swap(layer, side[s].frontier);
        for (auto& key : layer) {
            Datum cur = side[s].seen.at(key);
            for (size_t c = 0; c < nc; ++c) {
                for (auto& r : class_moves(comp(cur, c), kind)) {
                    if (r.size() > bound[c]) continue;
                    Datum nd = cur;
                    comp(nd, c) = r;
                    std::string k = canonicalize_datum_raw(nd).key;
                    if (side[1 - s].seen.count(k)) return true;
                    if (!side[s].seen.emplace(k, nd).second) continue;
                    side[s].frontier.push_back(k);
                    if (side[0].seen.size() + side[1].seen.size() > budget) return std::nullopt;
                }
            }
        }
    }
}

// ---------------------------------------------------------------- text

namespace {

// Tree text in stored child order, without boundary ids.
std::string plain_text(const Tree& t) {
    if (t.empty()) return "0";
    auto ch = t.children();
    std::function<std::string(int)> rec = [&](int v) {
        std::string a;
        if (t.lab[v] > 0) a += "w:" + std::to_string(t.lab[v]);
        if (!ch[v].empty() && t.eps[v] >= 0) a += std::string(a.empty() ? "" : " ") + "e" + std::to_string(t.eps[v]);
        std::string s = "(" + a;
        if (!a.empty() && !ch[v].empty()) s += " ";
        for (int c : ch[v]) s += rec(c);
        return s + ")";
    };
    return rec(0);
}

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(' '), b = s.find_last_not_of(' ');
    if (a == std::string_view::npos) return "";
    return std::string(s.substr(a, b - a + 1));
}

void validate_tree(const Tree& t, TreeKind kind, int W) {
    if (t.empty()) return;
    auto ch = t.children();
    for (int v = 0; v < t.size(); ++v) {
        if (kind == TreeKind::Oriented && !ch[v].empty() && t.eps[v] < 0)
            throw ParseError("oriented tree needs an orientation on every interior node");
        if (kind != TreeKind::Oriented && t.eps[v] >= 0) throw ParseError("orientation on an unoriented tree");
        if (kind == TreeKind::Labeled) {
            if (v && (t.lab[v] < 1 || t.lab[v] > W)) throw ParseError("label outside [W]");
            std::set<int> seen;
            for (int c : ch[v])
                if (!seen.insert(t.lab[c]).second) throw ParseError("labels below a node must be distinct");
        } else if (v && t.lab[v] != 0) {
            throw ParseError("label on an unlabeled tree");
        }
    }
}

void validate_datum(const Datum& d, TreeKind kind, int W) {
    std::multiset<int> top, bot;
    validate_tree(d.top, kind, W);
    for (int v : d.top.boundary()) top.insert(d.top.leaf[v]);
    for (auto& b : d.bot) {
        validate_tree(b, kind, W);
        for (int v : b.boundary()) bot.insert(b.leaf[v]);
    }
    if (top != bot) throw ParseError("datum: boundary of the top does not match the bottoms");
    if (std::set<int>(top.begin(), top.end()).size() != top.size()) throw ParseError("datum: repeated boundary id");
    if (top.count(-1)) throw ParseError("datum: unnumbered boundary point");
}

}  // namespace

std::string format_datum(const Datum& d) {
    std::string s = "{top=" + plain_text(d.top) + " | ";
    std::map<int, std::pair<int, int>> where;
    for (size_t x = 0; x < d.bot.size(); ++x) {
        s += (x ? ", " : "") + ("x" + std::to_string(x + 1)) + "=" + plain_text(d.bot[x]);
        int j = 1;
        for (int v : d.bot[x].boundary()) where[d.bot[x].leaf[v]] = {int(x) + 1, j++};
    }
    s += " | sigma=[";
    int i = 1;
    for (int v : d.top.boundary()) {
        auto [x, j] = where.at(d.top.leaf[v]);
        s += (i > 1 ? ", " : "") + std::to_string(i) + "->(" + std::to_string(x) + "," + std::to_string(j) + ")";
        ++i;
    }
    return s + "]}";
}

Datum parse_datum(std::string_view s0, int n, TreeKind) {
    std::string s = trim(s0);
    for (size_t p; (p = s.find("→")) != std::string::npos;) s.replace(p, std::string("→").size(), "->");
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("datum: expected {...}");
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t p; (p = s.find('|', start)) != std::string::npos; start = p + 1) parts.push_back(trim(s.substr(start, p - start)));
    parts.push_back(trim(s.substr(start)));
    if (parts.size() != 3) throw ParseError("datum: expected three sections");
    if (parts[0].rfind("top=", 0) != 0) throw ParseError("datum: expected top=");
    Datum d;
    d.top = parse_tree(parts[0].substr(4));
    std::vector<std::string> bots;
    if (!parts[1].empty()) {
        size_t b = 0;
        for (size_t p; (p = parts[1].find(',', b)) != std::string::npos; b = p + 1) bots.push_back(trim(parts[1].substr(b, p - b)));
        bots.push_back(trim(parts[1].substr(b)));
    }
    for (size_t x = 0; x < bots.size(); ++x) {
        std::string pre = "x" + std::to_string(x + 1) + "=";
        if (bots[x].rfind(pre, 0) != 0) throw ParseError("datum: expected " + pre);
        d.bot.push_back(parse_tree(bots[x].substr(pre.size())));
    }
    if (n >= 0 && (int)d.bot.size() != n) throw ParseError("datum: wrong number of bottoms");
    if (parts[2].rfind("sigma=[", 0) != 0 || parts[2].back() != ']') throw ParseError("datum: expected sigma=[...]");
    std::string body = parts[2].substr(7, parts[2].size() - 8);
    auto topb = d.top.boundary();
    std::vector<std::vector<int>> botb;
    for (auto& b : d.bot) botb.push_back(b.boundary());
    for (int v : topb) d.top.leaf[v] = -1;
    for (size_t x = 0; x < d.bot.size(); ++x)
        for (int v : botb[x]) d.bot[x].leaf[v] = -1;
    std::set<int> seen;
    size_t p = 0;
    while (p < body.size()) {
        size_t q = body.find(')', p);
        if (q == std::string::npos) throw ParseError("datum: bad sigma entry");
        std::string e = body.substr(p, q - p + 1);
        p = q + 1;
        while (p < body.size() && (body[p] == ',' || body[p] == ' ')) ++p;
        int i = 0, x = 0, j = 0;
        e.erase(std::remove(e.begin(), e.end(), ' '), e.end());
        if (std::sscanf(e.c_str(), "%d->(%d,%d)", &i, &x, &j) != 3) throw ParseError("datum: bad sigma entry '" + e + "'");
        if (i < 1 || i > (int)topb.size() || x < 1 || x > (int)d.bot.size() || j < 1 || j > (int)botb[x - 1].size())
            throw ParseError("datum: sigma entry out of range '" + e + "'");
        if (!seen.insert(i).second) throw ParseError("datum: sigma repeats a top point");
        int& slot = d.bot[x - 1].leaf[botb[x - 1][j - 1]];
        if (slot >= 0) throw ParseError("datum: sigma is not injective");
        slot = i - 1;
        d.top.leaf[topb[i - 1]] = i - 1;
    }
    if (seen.size() != topb.size()) throw ParseError("datum: sigma is not total");
    return d;
}

// ---------------------------------------------------------------- the ring

TreeDatumRing::TreeDatumRing(TreeKind kind, int W, std::string name)
    : kind_(kind), W_(W), name_(std::move(name)), cache_(kind, CanonOptions{2, 100000}) {}

Element TreeDatumRing::from_datum(const Datum& d, int n) const {
    if ((int)d.bot.size() != n) throw ShapeError(name_ + ": datum has the wrong number of bottoms");
    validate_datum(d, kind_, W_);
    auto cd = canonicalize_datum_raw(d);
    auto v = std::make_shared<DatumValue>();
    v->rep = std::move(cd.rep);
    v->raw_key = std::move(cd.key);
    return make(n, v);
}

const CanonDatum& TreeDatumRing::canonical(const Element& a) const {
    check_same_ring(this, a);
    const auto& v = a.as<DatumValue>();
    std::call_once(v.once, [&] { v.full = canonicalize_datum(v.rep, cache_); });
    return v.full;
}

bool TreeDatumRing::equal(const Element& a, const Element& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    if (a.shape != b.shape) return false;
    if (a.as<DatumValue>().raw_key == b.as<DatumValue>().raw_key) return true;
    // A negative answer is confirmed with a wider window before it is trusted.
    std::optional<bool> r;
    for (int slack : {2, 3}) {
        r = equivalent_data(datum(a), datum(b), kind_, CanonOptions{slack, 100000}, 20000);
        if (!r || *r) break;
    }
    if (r) return *r;
    return canonical(a).key == canonical(b).key;
}

Element TreeDatumRing::zero(int n) const {
    Datum d;
    d.bot.assign(n, Tree{});
    return from_datum(d, n);
}

Element TreeDatumRing::one() const {
    Datum d;
    d.top = Tree::point();
    d.top.leaf[0] = 0;
    d.bot.push_back(d.top);
    return from_datum(d, 1);
}

Element TreeDatumRing::delta(int n, int eps) const {
    if (kind_ == TreeKind::Labeled && n != W_) throw ShapeError(name_ + ": the generator lives over [W]");
    if (n == 0) return zero(0);
    Datum d;
    d.top = Tree::star(n);
    if (kind_ == TreeKind::Oriented) d.top.eps[0] = eps;
    for (int i = 0; i < n; ++i) {
        d.top.leaf[i + 1] = i;
        if (kind_ == TreeKind::Labeled) d.top.lab[i + 1] = i + 1;
        Tree p = Tree::point();
        p.leaf[0] = i;
        d.bot.push_back(p);
    }
    return from_datum(d, n);
}

namespace {

int max_leaf_id(const Tree& t) {
    int m = -1;
    for (int id : t.leaf) m = std::max(m, id);
    return m;
}

const Datum* component_datum(const TreeDatumRing& R, const Fibered& b, int y) {
    const Element* c = component(b, y);
    if (!c) return nullptr;
    check_same_ring(&R, *c);
    return &R.datum(*c);
}

}  // namespace

std::optional<Element> TreeDatumRing::mul(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.tgt) throw ShapeError(name_ + " mul: shape mismatch");
    const Datum& G = datum(a);
    std::vector<const Datum*> F(f.tgt + 1, nullptr);
    int big = 1;
    for (int y = 1; y <= f.tgt; ++y) {
        F[y] = component_datum(*this, b, y);
        if (F[y]) big = std::max(big, max_leaf_id(F[y]->top) + 1);
    }
    auto combine = [big](int l, int x) { return l * big + x; };
    auto sb = sigma_bar(G);
    Datum out;
    std::vector<const Tree*> at(G.top.size(), nullptr);
    for (int v : G.top.boundary()) {
        int y = sb.at(G.top.leaf[v]) + 1;
        at[v] = F[y] ? &F[y]->top : nullptr;
    }
    out.top = graft(G.top, at, combine);
    for (int x = 1; x <= f.src; ++x) {
        if (!f.defined(x)) {
            out.bot.emplace_back();
            continue;
        }
        int y = f(x);
        const Tree& fb = F[y]->bot[fiber_index(f, x) - 1];
        std::vector<const Tree*> at2(fb.size(), &G.bot[y - 1]);
        out.bot.push_back(graft(fb, at2, [big](int a2, int l) { return l * big + a2; }));
    }
    return from_datum(out, f.src);
}

std::optional<Element> TreeDatumRing::contract(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.src) throw ShapeError(name_ + " contract: shape mismatch");
    const Datum& G = datum(a);
    std::vector<const Datum*> F(f.tgt + 1, nullptr);
    int big = 1;
    for (int y = 1; y <= f.tgt; ++y) {
        F[y] = component_datum(*this, b, y);
        if (F[y]) big = std::max(big, max_leaf_id(F[y]->top) + 1);
    }
    auto sb = sigma_bar(G);
    Datum out;
    std::vector<const Tree*> at(G.top.size(), nullptr);
    for (int v : G.top.boundary()) {
        int x = sb.at(G.top.leaf[v]) + 1;
        if (!f.defined(x)) continue;
        at[v] = &F[f(x)]->bot[fiber_index(f, x) - 1];
    }
    out.top = graft(G.top, at, [big](int l, int c) { return l * big + c; });
    auto fibers = fiber_shapes(f);
    for (int y = 1; y <= f.tgt; ++y) {
        if (!F[y]) {
            out.bot.emplace_back();
            continue;
        }
        const Datum& Fy = *F[y];
        const auto& xs = std::find_if(fibers.begin(), fibers.end(), [y](const Fiber& fb) { return fb.y == y; })->xs;
        auto fsb = sigma_bar(Fy);
        std::vector<const Tree*> at2(Fy.top.size(), nullptr);
        for (int v : Fy.top.boundary()) at2[v] = &G.bot[xs[fsb.at(Fy.top.leaf[v])] - 1];
        out.bot.push_back(graft(Fy.top, at2, [big](int a2, int d) { return d * big + a2; }));
    }
    return from_datum(out, f.tgt);
}

Tree TreeDatumRing::random_tree(int leaves, Rng& rng) const {
    if (leaves <= 0) return Tree{};
    std::uniform_real_distribution<double> u(0, 1);
    Tree t;
    std::function<void(int, int, int, int)> build = [&](int parent, int lab, int m, int depth) {
        int me = t.size();
        t.par.push_back(parent);
        t.lab.push_back(lab);
        t.eps.push_back(-1);
        t.leaf.push_back(-1);
        int maxc = kind_ == TreeKind::Labeled ? std::min(m, W_) : m;
        bool unary = depth < 2 && u(rng) < (m == 1 ? 0.15 : 0.1);
        if (m == 1 && !unary) return;
        if (kind_ == TreeKind::Labeled && maxc < 2) unary = true;
        int c = unary ? 1 : std::uniform_int_distribution<int>(2, maxc)(rng);
        // Random composition of m into c positive parts.
        std::vector<int> cuts(m - 1);
        std::iota(cuts.begin(), cuts.end(), 1);
        std::shuffle(cuts.begin(), cuts.end(), rng);
        cuts.resize(c - 1);
        std::sort(cuts.begin(), cuts.end());
        cuts.insert(cuts.begin(), 0);
        cuts.push_back(m);
        std::vector<int> labs(std::max(W_, 1));
        std::iota(labs.begin(), labs.end(), 1);
        std::shuffle(labs.begin(), labs.end(), rng);
        for (int i = 0; i < c; ++i) build(me, kind_ == TreeKind::Labeled ? labs[i] : 0, cuts[i + 1] - cuts[i], depth + 1);
        if (kind_ == TreeKind::Oriented) t.eps[me] = std::uniform_int_distribution<int>(0, 1)(rng);
    };
    build(-1, 0, leaves, 0);
    return t;
}

Element TreeDatumRing::sample(int n, Rng& rng) const {
    if (n == 0) return zero(0);
    // At most two boundary points: products of three samples stay within reach of the equivalence search.
    std::discrete_distribution<int> dk({0.15, 0.45, 0.4});
    int k = dk(rng);
    if (kind_ == TreeKind::Labeled && W_ <= 1) k = std::min(k, 1);
    Datum d;
    d.top = random_tree(k, rng);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto tb = d.top.boundary();
    for (int i = 0; i < k; ++i) d.top.leaf[tb[i]] = perm[i];
    std::vector<std::vector<int>> ids(n);
    std::uniform_int_distribution<int> px(0, n - 1);
    for (int i = 0; i < k; ++i) ids[px(rng)].push_back(i);
    for (int x = 0; x < n; ++x) {
        Tree b = random_tree((int)ids[x].size(), rng);
        auto bb = b.boundary();
        for (size_t j = 0; j < bb.size(); ++j) b.leaf[bb[j]] = ids[x][j];
        d.bot.push_back(b);
    }
    return from_datum(d, n);
}

std::string TreeDatumRing::format(const Element& a) const { return format_datum(datum(a)); }

Element TreeDatumRing::parse(std::string_view s, int n) const {
    Datum d = parse_datum(s, n, kind_);
    return from_datum(d, (int)d.bot.size());
}

std::shared_ptr<TreeDatumRing> make_Delta() { return std::make_shared<TreeDatumRing>(TreeKind::Plain, 0, "Delta"); }

std::shared_ptr<TreeDatumRing> make_DeltaW(int W) {
    if (W < 1) throw std::invalid_argument("Delta^W needs W >= 1");
    return std::make_shared<TreeDatumRing>(TreeKind::Labeled, W, "Delta^" + std::to_string(W));
}

}  // namespace genring
