#include <algorithm>
#include <numeric>

#include "genring/ideals.hpp"

namespace genring {

bool is_multiplicative(const FiniteIdeals& T, std::uint64_t S) {
    if (!(S >> T.one_idx() & 1)) return false;
    int k = (int)T.carrier().size();
    for (int x = 0; x < k; ++x) {
        if (!(S >> x & 1)) continue;
        if (!(S >> T.index(*transpose_elt(T.ring(), T.elem(x))) & 1)) return false;
        for (int y = 0; y < k; ++y)
            if ((S >> y & 1) && !(S >> T.mul_idx(x, y) & 1)) return false;
    }
    return true;
}

std::vector<int> powers_of(const FiniteMonoid& M, int s) {
    std::vector<int> out{1};
    int st = M.index(M.inv(M.at(s)));
    for (size_t i = 0; i < out.size(); ++i)
        for (int g : {s, st}) {
            int p = M.index(M.mul(M.at(out[i]), M.at(g)));
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    std::sort(out.begin(), out.end());
    return out;
}

MonoidLocalization localize_monoid(const FiniteMonoid& M, const std::vector<int>& S) {
    int m = M.size();
    std::vector<int> Ss = S;
    if (std::find(Ss.begin(), Ss.end(), 1) == Ss.end()) Ss.insert(Ss.begin(), 1);
    std::stable_partition(Ss.begin(), Ss.end(), [](int s) { return s == 1; });
    auto mul = [&](int a, int b) { return M.index(M.mul(M.at(a), M.at(b))); };
    auto inv = [&](int a) { return M.index(M.inv(M.at(a))); };
    for (int s : Ss)
        for (int t : Ss)
            if (std::find(Ss.begin(), Ss.end(), mul(s, t)) == Ss.end())
                throw std::invalid_argument("localize_monoid: S is not multiplicative");

    // Pairs (x, s) in order s-major with s = 1 first, so representatives prefer x/1.
    std::vector<std::pair<int, int>> pairs;
    for (int s : Ss)
        for (int x = 0; x < m; ++x) pairs.emplace_back(x, s);
    int P = (int)pairs.size();
    std::vector<int> cls(P, -1), reps;
    for (int i = 0; i < P; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = (int)reps.size();
        reps.push_back(i);
        for (int j = i + 1; j < P; ++j) {
            if (cls[j] >= 0) continue;
            auto [x1, s1] = pairs[i];
            auto [x2, s2] = pairs[j];
            for (int u : Ss)
                if (mul(u, mul(s2, x1)) == mul(u, mul(s1, x2))) {
                    cls[j] = cls[i];
                    break;
                }
        }
    }
    auto find = [&](int x, int s) {
        for (int i = 0; i < P; ++i)
            if (pairs[i] == std::make_pair(x, s)) return cls[i];
        throw std::logic_error("localize_monoid: missing pair");
    };
    int K = (int)reps.size();
    int c0 = find(0, 1), c1 = find(1, 1);
    if (c0 == c1) throw std::invalid_argument("localize_monoid: 0 lies in S, the localization is trivial");
    // Class of 0/1 first and 1/1 second.
    std::vector<int> order{c0, c1};
    for (int c = 0; c < K; ++c)
        if (c != c0 && c != c1) order.push_back(c);
    std::vector<int> pos(K);
    for (int i = 0; i < K; ++i) pos[order[i]] = i;

    std::vector<std::string> names;
    for (int c : order) {
        auto [x, s] = pairs[reps[c]];
        names.push_back(s == 1 ? M.names()[x] : M.names()[x] + "/" + M.names()[s]);
    }
    int n = K;
    std::vector<std::vector<int>> table(n, std::vector<int>(n, 0));
    std::vector<int> invs(n, 0);
    for (int a = 0; a < n; ++a) {
        auto [x1, s1] = pairs[reps[order[a]]];
        invs[a] = pos[find(inv(x1), inv(s1))];
        for (int b = 0; b < n; ++b) {
            auto [x2, s2] = pairs[reps[order[b]]];
            table[a][b] = pos[find(mul(x1, x2), mul(s1, s2))];
        }
    }
    auto L = std::make_shared<FiniteMonoid>(M.name() + "_S", names, table, invs);
    if (auto bad = L->validate()) throw std::logic_error("localize_monoid: " + *bad);
    std::vector<int> image(m);
    for (int x = 0; x < m; ++x) image[x] = pos[find(x, 1)];
    return MonoidLocalization{L, image};
}

std::vector<int> prime_complement(const FiniteIdeals& T, const Ideal& p) {
    auto* R = dynamic_cast<const MonoidRing*>(&T.ring());
    auto* M = R ? dynamic_cast<const FiniteMonoid*>(&R->monoid()) : nullptr;
    if (!M) throw std::invalid_argument("prime_complement: needs F[M] for a finite monoid");
    std::vector<int> out;
    for (int i = 0; i < (int)T.carrier().size(); ++i)
        if (!(p.members >> i & 1)) out.push_back(M->index(R->word(T.elem(i))));
    std::sort(out.begin(), out.end());
    return out;
}

std::shared_ptr<FiniteMonoid> residue_monoid(const FiniteMonoid& Mp) {
    int m = Mp.size();
    auto mul = [&](int a, int b) { return Mp.index(Mp.mul(Mp.at(a), Mp.at(b))); };
    std::vector<int> keep{0};
    for (int u = 1; u < m; ++u)
        for (int v = 1; v < m; ++v)
            if (mul(u, v) == 1) {
                keep.push_back(u);
                break;
            }
    std::vector<int> pos(m, -1);
    for (int i = 0; i < (int)keep.size(); ++i) pos[keep[i]] = i;
    int n = (int)keep.size();
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<int> invs(n);
    for (int a = 0; a < n; ++a) {
        names.push_back(Mp.names()[keep[a]]);
        invs[a] = pos[Mp.index(Mp.inv(Mp.at(keep[a])))];
        for (int b = 0; b < n; ++b) table[a][b] = pos[mul(keep[a], keep[b])];
    }
    return std::make_shared<FiniteMonoid>(Mp.name() + "_res", names, table, invs);
}

// ---------------------------------------------------------------- S^{-1}A

LocalizedRing::LocalizedRing(RingPtr A, std::vector<Element> S, std::string name)
    : A_(std::move(A)), S_(std::move(S)), name_(std::move(name)) {
    if (S_.empty()) S_.push_back(A_->one());
}

Element LocalizedRing::frac(const Element& a, const Element& s) const {
    check_same_ring(A_.get(), a);
    check_same_ring(A_.get(), s);
    if (s.shape != 1) throw ShapeError(name_ + ": denominators live in A_[1]");
    auto v = std::make_shared<FractionValue>();
    v->num = a;
    v->den = s;
    return make(a.shape, v);
}

Element LocalizedRing::zero(int n) const { return frac(A_->zero(n), A_->one()); }

Element LocalizedRing::one() const { return frac(A_->one(), A_->one()); }

namespace {

// Rewrites the fractions n_y/t_y over the common denominator prod t_y.
std::pair<std::vector<Element>, Element> common_denominator(const Ring& A, const std::vector<const FractionValue*>& fs) {
    Element t = A.one();
    for (auto* f : fs) t = scalar_mul(A, f->den, t);
    std::vector<Element> nums;
    for (size_t i = 0; i < fs.size(); ++i) {
        Element n = fs[i]->num;
        for (size_t j = 0; j < fs.size(); ++j)
            if (j != i) n = scalar_mul(A, fs[j]->den, n);
        nums.push_back(n);
    }
    return {nums, t};
}

}  // namespace

std::optional<Element> LocalizedRing::mul(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    std::vector<const FractionValue*> fs;
    for (auto& c : b.comps) {
        check_same_ring(this, c);
        fs.push_back(&fraction(c));
    }
    auto [nums, t] = common_denominator(*A_, fs);
    auto r = A_->mul(fraction(a).num, Fibered{b.map, nums});
    if (!r) return std::nullopt;
    return frac(*r, scalar_mul(*A_, fraction(a).den, t));
}

std::optional<Element> LocalizedRing::contract(const Element& a, const Fibered& b) const {
    check_same_ring(this, a);
    std::vector<const FractionValue*> fs;
    for (auto& c : b.comps) {
        check_same_ring(this, c);
        fs.push_back(&fraction(c));
    }
    auto [nums, t] = common_denominator(*A_, fs);
    auto r = A_->contract(fraction(a).num, Fibered{b.map, nums});
    auto tt = transpose_elt(*A_, t);
    if (!r || !tt) return std::nullopt;
    return frac(*r, scalar_mul(*A_, fraction(a).den, *tt));
}

bool LocalizedRing::equal(const Element& a, const Element& b) const {
    check_same_ring(this, a);
    check_same_ring(this, b);
    if (a.shape != b.shape) return false;
    const auto& fa = fraction(a);
    const auto& fb = fraction(b);
    Element l = scalar_mul(*A_, fb.den, fa.num);
    Element r = scalar_mul(*A_, fa.den, fb.num);
    if (A_->equal(l, r)) return true;
    for (auto& u : S_)
        if (A_->equal(scalar_mul(*A_, u, l), scalar_mul(*A_, u, r))) return true;
    return false;
}

// Not a normal form: equal() is the equality of this ring.
std::string LocalizedRing::key(const Element& a) const { return format(a); }

Element LocalizedRing::sample(int n, Rng& rng) const {
    std::uniform_int_distribution<size_t> pick(0, S_.size() - 1);
    return frac(A_->sample(n, rng), S_[pick(rng)]);
}

std::string LocalizedRing::format(const Element& a) const {
    const auto& f = fraction(a);
    return A_->format(f.num) + " / " + A_->format(f.den);
}

std::shared_ptr<LocalizedRing> poly_at_z(int max_power) {
    auto P = make_monoid_ring(FreeMonoid::polynomial());
    auto& Z = static_cast<const FreeMonoid&>(P->monoid());
    std::vector<Element> S;
    for (int k = 0; k <= max_power; ++k) S.push_back(P->scalar(Z.gen(0, k)));
    return std::make_shared<LocalizedRing>(P, S, "F[z^N]_z");
}

LocalizationIso check_poly_localization(int L, int max_shape) {
    LocalizationIso rep;
    auto fail = [&](const std::string& w) {
        if (!rep.witness) rep.witness = w;
    };
    auto FZ = make_monoid_ring(FreeMonoid::laurent());
    auto& Zl = static_cast<const FreeMonoid&>(FZ->monoid());
    auto loc = poly_at_z(2 * L);
    auto& P = static_cast<const MonoidRing&>(loc->base());
    auto& Zp = static_cast<const FreeMonoid&>(P.monoid());

    auto phi = [&](const Element& a) {
        int x = FZ->point(a);
        if (x == 0) return loc->zero(a.shape);
        long k = FZ->word(a).e[0];
        return loc->frac(P.elem(x, Zp.gen(0, std::max(k, 0L)), a.shape), P.scalar(Zp.gen(0, std::max(-k, 0L))));
    };
    auto words = [&](int n) {
        std::vector<Element> out{FZ->zero(n)};
        for (int x = 1; x <= n; ++x)
            for (long k = -L; k <= L; ++k) out.push_back(FZ->elem(x, Zl.gen(0, k), n));
        return out;
    };

    for (int m = 0; m <= max_shape; ++m)
        for (int n = 0; n <= max_shape; ++n) {
            std::vector<int> t(m, 0);
            for (;;) {
                PartialMap f(m, n, t);
                auto fibers = fiber_shapes(f);
                std::vector<std::vector<Element>> choices;
                for (auto& fb : fibers) choices.push_back(words((int)fb.xs.size()));
                std::vector<size_t> idx(choices.size(), 0);
                auto outer = words(n);
                auto inner = words(m);
                for (;;) {
                    Fibered b{f, {}}, bl{f, {}};
                    for (size_t i = 0; i < choices.size(); ++i) {
                        b.comps.push_back(choices[i][idx[i]]);
                        bl.comps.push_back(phi(choices[i][idx[i]]));
                    }
                    for (auto& a : outer) {
                        ++rep.checked;
                        auto l = loc->mul(phi(a), bl);
                        if (!l || !loc->equal(*l, phi(*FZ->mul(a, b))))
                            fail("mul differs at " + FZ->format(a) + " over " + to_string(f));
                    }
                    for (auto& a : inner) {
                        ++rep.checked;
                        auto l = loc->contract(phi(a), bl);
                        if (!l || !loc->equal(*l, phi(*FZ->contract(a, b))))
                            fail("contract differs at " + FZ->format(a) + " over " + to_string(f));
                    }
                    size_t i = choices.size();
                    while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
                    if (i == 0) break;
                }
                int i = m - 1;
                while (i >= 0 && ++t[i] > n) t[i--] = 0;
                if (i < 0) break;
            }
        }

    auto ws = words(1);
    for (auto& u : ws)
        for (auto& v : ws) {
            ++rep.checked;
            if (!FZ->equal(u, v) && loc->equal(phi(u), phi(v)))
                fail("not injective: " + FZ->format(u) + " and " + FZ->format(v));
        }
    for (long a = 0; a <= L; ++a)
        for (long b = 0; b <= L; ++b) {
            ++rep.checked;
            Element q = loc->frac(P.scalar(Zp.gen(0, a)), P.scalar(Zp.gen(0, b)));
            if (!loc->equal(q, phi(FZ->scalar(Zl.gen(0, a - b)))))
                fail("not surjective at z^" + std::to_string(a) + "/z^" + std::to_string(b));
        }
    return rep;
}

bool in_local_ring_at(long p, const mpq_class& q) { return q.get_den() % p != 0; }

}  // namespace genring
