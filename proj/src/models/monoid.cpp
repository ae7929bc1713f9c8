#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "genring/models.hpp"
#include "json.hpp"

namespace genring {

bool Monoid::trivial_involution_on(const std::vector<MElem>& xs) const {
    return std::all_of(xs.begin(), xs.end(), [&](const MElem& m) { return inv(m) == m; });
}

// ---------------------------------------------------------------- finite

FiniteMonoid::FiniteMonoid(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> table,
                           std::vector<int> inv)
    : name_(std::move(name)), names_(std::move(names)), table_(std::move(table)), inv_(std::move(inv)) {
    int n = (int)names_.size();
    if (n < 1 || (int)table_.size() != n || (int)inv_.size() != n) throw std::invalid_argument("monoid: bad sizes");
    for (auto& row : table_) {
        if ((int)row.size() != n) throw std::invalid_argument("monoid: bad table row");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("monoid: table entry out of range");
    }
    for (int v : inv_)
        if (v < 0 || v >= n) throw std::invalid_argument("monoid: involution out of range");
    if (auto bad = validate()) throw std::invalid_argument("monoid " + name_ + ": " + *bad);
}

MElem FiniteMonoid::mul(const MElem& a, const MElem& b) const { return at(table_[index(a)][index(b)]); }

MElem FiniteMonoid::inv(const MElem& a) const { return at(inv_[index(a)]); }

std::string FiniteMonoid::format(const MElem& a) const { return names_[index(a)]; }

MElem FiniteMonoid::parse(std::string_view s) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == s) return at(i);
    throw ParseError("monoid " + name_ + ": unknown element '" + std::string(s) + "'");
}

MElem FiniteMonoid::sample(Rng& rng) const {
    std::uniform_int_distribution<int> d(0, size() - 1);
    return at(d(rng));
}

std::optional<std::vector<MElem>> FiniteMonoid::elements() const {
    std::vector<MElem> v;
    for (int i = 1; i < size(); ++i) v.push_back(at(i));
    return v;
}

std::optional<std::string> FiniteMonoid::validate() const {
    int n = size();
    int one = n > 1 ? 1 : 0;
    for (int a = 0; a < n; ++a) {
        if (table_[a][one] != a) return "1 is not a unit at " + names_[a];
        if (table_[a][0] != 0) return "0 is not absorbing at " + names_[a];
        if (inv_[inv_[a]] != a) return "involution not of order two at " + names_[a];
        for (int b = 0; b < n; ++b) {
            if (table_[a][b] != table_[b][a]) return "not commutative at " + names_[a] + "," + names_[b];
            if (inv_[table_[a][b]] != table_[inv_[a]][inv_[b]]) return "involution not multiplicative";
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) return "not associative";
        }
    }
    if (inv_[0] != 0 || inv_[one] != one) return std::string("involution moves 0 or 1");
    return std::nullopt;
}

std::shared_ptr<FiniteMonoid> FiniteMonoid::signs() {
    return std::make_shared<FiniteMonoid>("pm1", std::vector<std::string>{"0", "1", "-1"},
                                          std::vector<std::vector<int>>{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}},
                                          std::vector<int>{0, 1, 2});
}

std::shared_ptr<FiniteMonoid> FiniteMonoid::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    auto names = j.at("elements").get<std::vector<std::string>>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<int> inv;
    if (j.contains("involution")) inv = j.at("involution").get<std::vector<int>>();
    else {
        inv.resize(names.size());
        std::iota(inv.begin(), inv.end(), 0);
    }
    return std::make_shared<FiniteMonoid>(j.value("name", std::string("M")), names, table, inv);
}

// ---------------------------------------------------------------- free

FreeMonoid::FreeMonoid(std::vector<Gen> gens) : gens_(std::move(gens)) {
    for (size_t i = 0; i < gens_.size(); ++i) {
        auto& g = gens_[i];
        if (g.involution < 0) g.involution = (int)i;
        if (g.involution >= (int)gens_.size() || gens_[g.involution].involution != (int)i)
            throw std::invalid_argument("free monoid: involution is not a pairing");
    }
}

std::string FreeMonoid::name() const {
    std::string s;
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (i) s += "*";
        s += gens_[i].name + (gens_[i].integral ? "^Z" : "^N");
    }
    return s;
}

MElem FreeMonoid::mul(const MElem& a, const MElem& b) const {
    if (a.zero || b.zero) return zero();
    MElem r{false, a.e};
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

MElem FreeMonoid::inv(const MElem& a) const {
    if (a.zero) return a;
    MElem r{false, std::vector<long>(gens_.size(), 0)};
    for (size_t i = 0; i < gens_.size(); ++i) r.e[gens_[i].involution] = a.e[i];
    return r;
}

std::string FreeMonoid::format(const MElem& a) const {
    if (a.zero) return "0";
    std::string s;
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (!a.e[i]) continue;
        if (!s.empty()) s += "*";
        s += gens_[i].name;
        if (a.e[i] != 1) s += "^" + std::to_string(a.e[i]);
    }
    return s.empty() ? "1" : s;
}

MElem FreeMonoid::parse(std::string_view s) const {
    if (s == "0") return zero();
    MElem r = one();
    if (s == "1") return r;
    size_t start = 0;
    while (start <= s.size()) {
        size_t star = s.find('*', start);
        std::string_view tok = s.substr(start, star == s.npos ? s.npos : star - start);
        size_t caret = tok.find('^');
        std::string_view nm = tok.substr(0, caret);
        long k = 1;
        if (caret != tok.npos) {
            auto ex = tok.substr(caret + 1);
            auto [p, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), k);
            if (ec != std::errc() || p != ex.data() + ex.size()) throw ParseError("bad exponent in '" + std::string(s) + "'");
        }
        bool found = false;
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name == nm) {
                if (k < 0 && !gens_[i].integral) throw ParseError("negative exponent on " + gens_[i].name);
                r.e[i] += k;
                found = true;
            }
        }
        if (!found) throw ParseError("unknown generator '" + std::string(nm) + "'");
        if (star == s.npos) break;
        start = star + 1;
    }
    return r;
}

MElem FreeMonoid::sample(Rng& rng) const {
    std::uniform_int_distribution<int> z(0, 9);
    if (z(rng) == 0) return zero();
    MElem r = one();
    for (size_t i = 0; i < gens_.size(); ++i) {
        std::uniform_int_distribution<long> d(gens_[i].integral ? -2 : 0, 2);
        r.e[i] = d(rng);
    }
    return r;
}

MElem FreeMonoid::gen(int i, long k) const {
    MElem r = one();
    r.e[i] = k;
    return r;
}

long FreeMonoid::degree(const MElem& a) const {
    long d = 0;
    for (long v : a.e) d += std::labs(v);
    return d;
}

std::vector<MElem> FreeMonoid::words_up_to(long d) const {
    std::vector<MElem> out;
    MElem cur = one();
    std::function<void(size_t, long)> rec = [&](size_t i, long left) {
        if (i == gens_.size()) {
            out.push_back(cur);
            return;
        }
        long lo = gens_[i].integral ? -left : 0;
        for (long k = lo; k <= left; ++k) {
            cur.e[i] = k;
            rec(i + 1, left - std::labs(k));
        }
        cur.e[i] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), [&](const MElem& a, const MElem& b) {
        long da = degree(a), db = degree(b);
        return da != db ? da < db : a.e < b.e;
    });
    return out;
}

std::shared_ptr<FreeMonoid> FreeMonoid::polynomial() { return std::make_shared<FreeMonoid>(std::vector<Gen>{{"z", false, 0}}); }

std::shared_ptr<FreeMonoid> FreeMonoid::laurent() { return std::make_shared<FreeMonoid>(std::vector<Gen>{{"z", true, 0}}); }

std::shared_ptr<FreeMonoid> FreeMonoid::two_sided() {
    return std::make_shared<FreeMonoid>(std::vector<Gen>{{"z", false, 1}, {"zt", false, 0}});
}

// ---------------------------------------------------------------- F[M]

MonoidRing::MonoidRing(std::shared_ptr<const Monoid> M) : M_(std::move(M)) {}

Element MonoidRing::zero(int n) const { return make(n, std::make_shared<MValue>(0, M_->zero())); }

Element MonoidRing::one() const { return elem(1, M_->one(), 1); }

Element MonoidRing::elem(int x, MElem m, int n) const {
    if (x < 0 || x > n) throw ShapeError("F[M]: point outside shape");
    if (m.zero || x == 0) return zero(n);
    return make(n, std::make_shared<MValue>(x, std::move(m)));
}

std::optional<Element> MonoidRing::mul(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.tgt) throw ShapeError("F[M] mul: shape mismatch");
    int y0 = point(a);
    if (!y0) return zero(f.src);
    const Element* c = component(b, y0);
    if (!c || !point(*c)) return zero(f.src);
    int i = point(*c), k = 0;
    for (int x = 1; x <= f.src; ++x)
        if (f(x) == y0 && ++k == i) return elem(x, M_->mul(word(a), word(*c)), f.src);
    throw ShapeError("F[M] mul: component outside fiber");
}

std::optional<Element> MonoidRing::contract(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    const PartialMap& f = b.map;
    if (a.shape != f.src) throw ShapeError("F[M] contract: shape mismatch");
    int x0 = point(a);
    if (!x0 || !f.defined(x0)) return zero(f.tgt);
    int y = f(x0);
    const Element* c = component(b, y);
    if (point(*c) != fiber_index(f, x0)) return zero(f.tgt);
    return elem(y, M_->mul(word(a), M_->inv(word(*c))), f.tgt);
}

Element MonoidRing::sample(int n, Rng& rng) const {
    if (n == 0) return zero(0);
    std::uniform_int_distribution<int> z(0, 6), x(1, n);
    if (z(rng) == 0) return zero(n);
    return elem(x(rng), M_->sample(rng), n);
}

std::string MonoidRing::format(const Element& a) const {
    if (!point(a)) return "0";
    return "[x:" + std::to_string(point(a)) + ", m:" + M_->format(word(a)) + "]";
}

Element MonoidRing::parse(std::string_view s, int n) const {
    if (s == "0") return zero(n);
    if (s.size() < 8 || s.substr(0, 3) != "[x:" || s.back() != ']') throw ParseError("F[M]: expected [x:i, m:w]");
    size_t comma = s.find(", m:");
    if (comma == s.npos) throw ParseError("F[M]: expected ', m:'");
    int x = 0;
    auto xs = s.substr(3, comma - 3);
    auto [p, ec] = std::from_chars(xs.data(), xs.data() + xs.size(), x);
    if (ec != std::errc() || p != xs.data() + xs.size() || x < 1 || x > n) throw ParseError("F[M]: bad point");
    return elem(x, M_->parse(s.substr(comma + 4, s.size() - comma - 5)), n);
}

std::optional<std::vector<Element>> MonoidRing::enumerate(int n) const {
    auto ms = M_->elements();
    if (!ms) return std::nullopt;
    std::vector<Element> out{zero(n)};
    for (int x = 1; x <= n; ++x)
        for (auto& m : *ms)
            if (!m.zero) out.push_back(elem(x, m, n));
    return out;
}

std::shared_ptr<MonoidRing> make_monoid_ring(std::shared_ptr<const Monoid> M) {
    return std::make_shared<MonoidRing>(std::move(M));
}

// ---------------------------------------------------------------- congruences

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        p[b] = a;
        return true;
    }
};

// Congruence generated by pairs, restricted to words of degree <= D (plus 0).
struct BoundedCongruence {
    const FreeMonoid& M;
    long D;
    std::vector<MElem> words;  // index 0 is the zero element
    std::map<MElem, int> index;
    UnionFind uf{0};

    BoundedCongruence(const FreeMonoid& m, long d, const std::vector<std::pair<MElem, MElem>>& pairs) : M(m), D(d) {
        words.push_back(M.zero());
        for (auto& w : M.words_up_to(D)) words.push_back(w);
        for (size_t i = 0; i < words.size(); ++i) index[words[i]] = (int)i;
        uf = UnionFind((int)words.size());
        std::vector<std::pair<MElem, MElem>> all = pairs;
        for (auto& [u, v] : pairs) all.emplace_back(M.inv(u), M.inv(v));
        for (auto& [u, v] : all)
            for (auto& s : words) {
                int a = lookup(M.mul(s, u)), b = lookup(M.mul(s, v));
                if (a >= 0 && b >= 0) uf.unite(a, b);
            }
    }
    int lookup(const MElem& w) const {
        if (w.zero) return 0;
        if (M.degree(w) > D) return -1;
        return index.at(w);
    }
    // Class representative (smallest index) of the words of degree < D, by partition id.
    std::vector<int> partition_below(long d) {
        std::vector<int> out;
        for (size_t i = 0; i < words.size(); ++i)
            if (words[i].zero || M.degree(words[i]) < d) out.push_back(uf.find((int)i));
        return out;
    }
    bool top_collapses() {
        for (size_t i = 1; i < words.size(); ++i) {
            if (M.degree(words[i]) != D) continue;
            int r = uf.find((int)i);
            if (r != 0 && M.degree(words[r]) >= D) return false;
        }
        return true;
    }
};

}  // namespace

CongruenceResult monoid_congruence(const FreeMonoid& M, const std::vector<std::pair<MElem, MElem>>& pairs,
                                   long max_bound) {
    CongruenceResult res;
    for (long D = 1; D <= max_bound; ++D) {
        BoundedCongruence a(M, D, pairs);
        if (!a.top_collapses()) continue;
        BoundedCongruence b(M, D + 1, pairs), c(M, D + 2, pairs);
        auto pa = a.partition_below(D), pb = b.partition_below(D), pc = c.partition_below(D);
        if (pa != pb || pb != pc || !b.top_collapses()) continue;
        // Classes: representatives of degree < D, zero first, then the unit.
        std::vector<int> reps;
        std::map<int, int> cls;
        auto add_rep = [&](int root) {
            if (!cls.count(root)) {
                cls[root] = (int)reps.size();
                reps.push_back(root);
            }
        };
        add_rep(a.uf.find(0));
        add_rep(a.uf.find(a.lookup(M.one())));
        for (size_t i = 0; i < a.words.size(); ++i)
            if (a.words[i].zero || M.degree(a.words[i]) < D) add_rep(a.uf.find((int)i));
        int n = (int)reps.size();
        // reduce: class id of an arbitrary word, by peeling generators.
        std::function<int(const MElem&)> reduce = [&](const MElem& w) -> int {
            if (w.zero) return cls.at(a.uf.find(0));
            if (M.degree(w) < D) return cls.at(a.uf.find(a.lookup(w)));
            for (size_t g = 0; g < M.gens().size(); ++g) {
                if (w.e[g] == 0) continue;
                long step = w.e[g] > 0 ? 1 : -1;
                MElem rest = w;
                rest.e[g] -= step;
                int r = reduce(rest);
                MElem back = M.mul(a.words[reps[r]], M.gen((int)g, step));
                return cls.at(a.uf.find(a.lookup(back)));
            }
            return cls.at(a.uf.find(a.lookup(w)));
        };
        std::vector<std::string> names(n);
        for (int i = 0; i < n; ++i) names[i] = M.format(a.words[reps[i]]);
        if (n > 1) names[0] = "0";
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) table[i][j] = reduce(M.mul(a.words[reps[i]], a.words[reps[j]]));
            inv[i] = reduce(M.inv(a.words[reps[i]]));
        }
        res.bound = D;
        for (int r : reps) {
            std::vector<MElem> members;
            for (size_t i = 0; i < a.words.size(); ++i)
                if (a.uf.find((int)i) == r) members.push_back(a.words[i]);
            res.classes.push_back(members);
        }
        try {
            res.quotient = std::make_shared<FiniteMonoid>(M.name() + "/~", names, table, inv);
        } catch (const std::exception& e) {
            res.diagnostic = std::string("quotient table invalid: ") + e.what();
            res.quotient = nullptr;
        }
        return res;
    }
    res.diagnostic = "classes did not stabilize up to degree " + std::to_string(max_bound);
    return res;
}

std::shared_ptr<MonoidRing> finite_quotient(const MonoidRing& R, const std::vector<std::pair<Element, Element>>& gens,
                                            long max_bound) {
    std::vector<std::pair<MElem, MElem>> pairs;
    for (auto& [a, b] : gens) {
        if (a.shape != 1 || b.shape != 1) throw ShapeError("finite_quotient: generators must have shape [1]");
        MElem u = R.point(a) ? R.word(a) : R.monoid().zero();
        MElem v = R.point(b) ? R.word(b) : R.monoid().zero();
        if (!(u == v)) pairs.emplace_back(u, v);
    }
    if (pairs.empty()) return std::make_shared<MonoidRing>(R.monoid_ptr());
    if (auto* fm = dynamic_cast<const FreeMonoid*>(&R.monoid())) {
        auto res = monoid_congruence(*fm, pairs, max_bound);
        if (!res.quotient) throw std::runtime_error("finite_quotient: " + res.diagnostic);
        return std::make_shared<MonoidRing>(res.quotient);
    }
    auto* fin = dynamic_cast<const FiniteMonoid*>(&R.monoid());
    if (!fin) throw std::runtime_error("finite_quotient: unsupported monoid");
    int n = fin->size();
    UnionFind uf(n);
    std::vector<std::pair<MElem, MElem>> all = pairs;
    for (auto& [u, v] : pairs) all.emplace_back(fin->inv(u), fin->inv(v));
    for (auto& [u, v] : all)
        for (int s = 0; s < n; ++s) uf.unite(fin->index(fin->mul(fin->at(s), u)), fin->index(fin->mul(fin->at(s), v)));
    std::vector<int> reps;
    std::map<int, int> cls;
    auto add_rep = [&](int i) {
        int r = uf.find(i);
        if (!cls.count(r)) {
            cls[r] = (int)reps.size();
            reps.push_back(i);
        }
    };
    add_rep(0);
    if (n > 1) add_rep(1);
    for (int i = 0; i < n; ++i) add_rep(i);
    int m = (int)reps.size();
    std::vector<std::string> names(m);
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<int> inv(m);
    for (int i = 0; i < m; ++i) {
        names[i] = fin->names()[reps[i]];
        for (int j = 0; j < m; ++j)
            table[i][j] = cls.at(uf.find(fin->index(fin->mul(fin->at(reps[i]), fin->at(reps[j])))));
        inv[i] = cls.at(uf.find(fin->index(fin->inv(fin->at(reps[i])))));
    }
    return std::make_shared<MonoidRing>(std::make_shared<FiniteMonoid>(fin->name() + "/~", names, table, inv));
}

// ---------------------------------------------------------------- homomorphisms

Homomorphism hom_F_to_G(const FRing& F, const GRing& G) {
    return {&F, &G, [&G](const Element& a) {
                std::vector<Scalar> v(a.shape, G.semiring().zero());
                int x = a.as<FValue>().point;
                if (x) v[x - 1] = G.semiring().one();
                return G.vec(std::move(v));
            }};
}

Homomorphism hom_G_to_G(const GRing& A, const GRing& B, std::function<Scalar(const Scalar&)> phi) {
    return {&A, &B, [&A, &B, phi](const Element& a) {
                std::vector<Scalar> v;
                for (auto& s : A.coords(a)) v.push_back(phi(s));
                return B.vec(std::move(v));
            }};
}

Homomorphism hom_projection(const OEtaRing& O, const ResidueRing& k) {
    return {&O, &k, [&k](const Element& a) {
                const auto& v = a.as<GValue>().c;
                if (norm2(v) == 1) return k.vec(v);
                return k.zero(a.shape);
            }};
}

Homomorphism hom_monoid_to_G(const MonoidRing& FM, const GRing& G, std::function<Scalar(const MElem&)> psi) {
    return {&FM, &G, [&FM, &G, psi](const Element& a) {
                std::vector<Scalar> v(a.shape, G.semiring().zero());
                int x = FM.point(a);
                if (x) v[x - 1] = psi(FM.word(a));
                return G.vec(std::move(v));
            }};
}

std::vector<int> sign_monoid_endomorphisms() {
    auto M = FiniteMonoid::signs();
    std::vector<int> out;
    for (int img = 0; img < 3; ++img) {
        std::vector<int> phi{0, 1, img};
        bool ok = true;
        for (int a = 0; a < 3 && ok; ++a) {
            for (int b = 0; b < 3 && ok; ++b)
                ok = phi[M->index(M->mul(M->at(a), M->at(b)))] == M->index(M->mul(M->at(phi[a]), M->at(phi[b])));
            ok = ok && phi[M->index(M->inv(M->at(a)))] == M->index(M->inv(M->at(phi[a])));
        }
        if (ok) out.push_back(img);
    }
    return out;
}

}  // namespace genring
