#include <algorithm>
#include <bit>
#include <map>

#include "genring/ideals.hpp"

namespace genring {

Ideal IdealTheory::generated(const std::vector<Element>& gens) const {
    Ideal r = zero();
    for (auto& g : gens) r = sum(r, principal(g));
    return r;
}

Element scalar_mul(const Ring& A, const Element& s, const Element& a) {
    auto r = A.mul(s, Fibered{constant_map(a.shape), a.shape ? std::vector<Element>{a} : std::vector<Element>{}});
    if (!r) throw std::runtime_error(A.name() + ": scalar product undefined");
    return *r;
}

Element diag_mul(const Ring& A, const Element& b, const std::vector<Element>& c) {
    auto r = A.mul(b, Fibered{identity(b.shape), c});
    if (!r) throw std::runtime_error(A.name() + ": product undefined");
    return *r;
}

Element pair_contract(const Ring& A, const Element& u, const Element& d) {
    auto r = A.contract(u, Fibered{constant_map(u.shape), u.shape ? std::vector<Element>{d} : std::vector<Element>{}});
    if (!r) throw std::runtime_error(A.name() + ": contraction undefined");
    return *r;
}

namespace {

// Short label of an element of A_[1].
std::string label(const Ring& A, const Element& a) {
    if (auto* M = dynamic_cast<const MonoidRing*>(&A)) return M->point(a) ? M->monoid().format(M->word(a)) : "0";
    if (auto* G = dynamic_cast<const GRing*>(&A)) return G->semiring().format(G->coords(a)[0]);
    return A.format(a);
}

std::vector<int> bits(std::uint64_t s) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (s >> i & 1) out.push_back(i);
    return out;
}

}  // namespace

FiniteIdeals::FiniteIdeals(RingPtr A, int bound) : A_(std::move(A)), bound_(bound) {
    if (bound_ < 2) throw std::invalid_argument("closure bound must be at least 2");
    auto c = A_->enumerate(1);
    if (!c) throw std::invalid_argument(A_->name() + ": A_[1] is not finite");
    if (c->size() > 64) throw std::invalid_argument(A_->name() + ": A_[1] too large");
    carrier_ = *c;
    for (int n = 0; n <= bound_; ++n) {
        auto s = A_->enumerate(n);
        if (!s) throw std::invalid_argument(A_->name() + ": A_" + std::to_string(n) + " is not enumerable");
        shapes_.push_back(*s);
    }
    int k = (int)carrier_.size();
    one_ = index(A_->one());
    zero_ = index(A_->zero(1));
    mul_.assign(k, std::vector<int>(k));
    inv_.assign(k, 0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) mul_[i][j] = index(diag_mul(*A_, carrier_[i], {carrier_[j]}));
        inv_[i] = index(*transpose_elt(*A_, carrier_[i]));
    }
    reach_.assign(bound_ + 1, {});
    for (int n = 1; n <= bound_; ++n) {
        size_t total = 1;
        for (int x = 0; x < n; ++x) total *= k;
        reach_[n].assign(total, 0);
        for (size_t code = 0; code < total; ++code) {
            std::vector<Element> c(n);
            for (int x = n - 1, r = (int)code; x >= 0; --x, r /= k) c[x] = carrier_[r % k];
            for (auto& b : shapes_[n]) {
                Element bc = diag_mul(*A_, b, c);
                for (auto& d : shapes_[n]) reach_[n][code] |= std::uint64_t(1) << index(pair_contract(*A_, bc, d));
            }
        }
    }
}

int FiniteIdeals::index(const Element& a) const {
    for (size_t i = 0; i < carrier_.size(); ++i)
        if (A_->equal(carrier_[i], a)) return (int)i;
    throw std::invalid_argument(A_->name() + ": element outside the listed carrier");
}

std::uint64_t FiniteIdeals::closure_step(std::uint64_t s, int max_shape) const {
    std::uint64_t out = s | (std::uint64_t(1) << zero_);
    auto members = bits(s);
    if (members.empty()) return out;
    size_t k = carrier_.size();
    for (int n = 1; n <= max_shape; ++n) {
        std::vector<size_t> idx(n, 0);
        for (;;) {
            size_t code = 0;
            for (int x = 0; x < n; ++x) code = code * k + members[idx[x]];
            out |= reach_[n][code];
            int i = n - 1;
            while (i >= 0 && ++idx[i] == members.size()) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    return out;
}

std::uint64_t FiniteIdeals::closure_at(std::uint64_t gens, int max_shape) const {
    std::uint64_t cur = gens | (std::uint64_t(1) << zero_);
    for (;;) {
        std::uint64_t next = closure_step(cur, max_shape);
        if (next == cur) return cur;
        cur = next;
    }
}

bool FiniteIdeals::closed_above(std::uint64_t s) const {
    size_t k = carrier_.size();
    if (std::popcount(s) == (int)k) return true;
    if (auto it = checked_.find(s); it != checked_.end()) return it->second;
    int n = bound_ + 1;
    auto An = A_->enumerate(n);
    bool ok = true;
    auto members = bits(s);
    std::vector<size_t> idx(n, 0);
    while (ok) {
        std::vector<Element> c;
        for (int x = 0; x < n; ++x) c.push_back(carrier_[members[idx[x]]]);
        for (auto& b : *An) {
            Element bc = diag_mul(*A_, b, c);
            for (auto& d : *An)
                if (!(s >> index(pair_contract(*A_, bc, d)) & 1)) ok = false;
            if (!ok) break;
        }
        int i = n - 1;
        while (i >= 0 && ++idx[i] == members.size()) idx[i--] = 0;
        if (i < 0) break;
    }
    checked_[s] = ok;
    return ok;
}

Ideal FiniteIdeals::closure(std::uint64_t gens) const {
    std::uint64_t s = closure_at(gens, bound_);
    if (!closed_above(s))
        throw ClosureError(A_->name() + ": closure over shapes <= " + std::to_string(bound_) +
                           " is not closed at shape " + std::to_string(bound_ + 1));
    return Ideal{s, 0};
}

Ideal FiniteIdeals::principal(const Element& a) const {
    int i = index(a);
    std::uint64_t s = 0;
    for (size_t j = 0; j < carrier_.size(); ++j) s |= std::uint64_t(1) << mul_[i][j];
    return Ideal{s, 0};
}

Ideal FiniteIdeals::generated(const std::vector<Element>& gens) const {
    std::uint64_t s = 0;
    for (auto& g : gens) s |= std::uint64_t(1) << index(g);
    return closure(s);
}

Ideal FiniteIdeals::zero() const { return Ideal{std::uint64_t(1) << zero_, 0}; }

Ideal FiniteIdeals::sum(const Ideal& a, const Ideal& b) const { return closure(a.members | b.members); }

Ideal FiniteIdeals::product(const Ideal& a, const Ideal& b) const {
    std::uint64_t s = 0;
    for (int x : bits(a.members))
        for (int y : bits(b.members)) s |= std::uint64_t(1) << mul_[x][y];
    return closure(s);
}

Ideal FiniteIdeals::quotient(const Ideal& a0, const Ideal& a1) const {
    std::uint64_t s = 0;
    for (size_t c = 0; c < carrier_.size(); ++c) {
        bool in = true;
        for (int x : bits(a1.members)) in = in && (a0.members >> mul_[c][x] & 1);
        if (in) s |= std::uint64_t(1) << c;
    }
    return Ideal{s, 0};
}

Ideal FiniteIdeals::radical(const Ideal& a) const {
    std::uint64_t s = 0;
    for (size_t x = 0; x < carrier_.size(); ++x) {
        int p = (int)x;
        for (size_t n = 0; n <= carrier_.size(); ++n) {
            if (a.members >> p & 1) {
                s |= std::uint64_t(1) << x;
                break;
            }
            p = mul_[p][x];
        }
    }
    return Ideal{s, 0};
}

Ideal FiniteIdeals::ann(const Element& m1, const Element& m2) const {
    std::uint64_t s = 0;
    for (size_t i = 0; i < carrier_.size(); ++i)
        if (A_->equal(scalar_mul(*A_, carrier_[i], m1), scalar_mul(*A_, carrier_[i], m2))) s |= std::uint64_t(1) << i;
    return Ideal{s, 0};
}

bool FiniteIdeals::contains(const Ideal& a, const Element& x) const { return a.members >> index(x) & 1; }

bool FiniteIdeals::is_prime(const Ideal& a) const {
    if (a.members >> one_ & 1) return false;
    for (size_t x = 0; x < carrier_.size(); ++x)
        for (size_t y = 0; y < carrier_.size(); ++y)
            if (!(a.members >> x & 1) && !(a.members >> y & 1) && (a.members >> mul_[x][y] & 1)) return false;
    return true;
}

bool FiniteIdeals::is_homogeneous(const Ideal& a) const {
    for (int x : bits(a.members))
        if (!(a.members >> inv_[x] & 1)) return false;
    return true;
}

std::string FiniteIdeals::format(const Ideal& a) const {
    std::string s = "{";
    bool first = true;
    for (int x : bits(a.members)) {
        s += (first ? "" : ", ") + label(*A_, carrier_[x]);
        first = false;
    }
    return s + "}";
}

std::vector<Ideal> FiniteIdeals::h_ideals() const {
    std::vector<Ideal> all{zero()};
    auto add = [&](const Ideal& a) {
        for (auto& b : all)
            if (b.members == a.members) return false;
        all.push_back(a);
        return true;
    };
    for (auto& c : carrier_) add(principal(c));
    for (bool grew = true; grew;) {
        grew = false;
        size_t n = all.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if ((all[i].members | all[j].members) != all[i].members &&
                    (all[i].members | all[j].members) != all[j].members)
                    grew = add(sum(all[i], all[j])) || grew;
    }
    std::sort(all.begin(), all.end(), [](const Ideal& a, const Ideal& b) {
        int pa = std::popcount(a.members), pb = std::popcount(b.members);
        return pa != pb ? pa < pb : a.members < b.members;
    });
    return all;
}

std::vector<Ideal> FiniteIdeals::maximal() const {
    auto all = h_ideals();
    std::vector<Ideal> out;
    for (auto& a : all) {
        if (a.members >> one_ & 1) continue;
        bool top = true;
        for (auto& b : all)
            if (!(b.members >> one_ & 1) && b.members != a.members && leq(a, b)) top = false;
        if (top) out.push_back(a);
    }
    return out;
}

std::vector<SpecPoint> FiniteIdeals::primes(long, bool& complete) const {
    complete = true;
    std::vector<SpecPoint> out;
    for (auto& a : h_ideals())
        if (is_prime(a)) out.push_back(SpecPoint{a, format(a)});
    return out;
}

// ---------------------------------------------------------------- stability

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        case Stability::Unknown: return "unknown";
    }
    return "?";
}

StabilityResult estable_check(const FiniteIdeals& T, const Ideal& a, int bound) {
    StabilityResult res;
    const Ring& A = T.ring();
    res.bound = std::min(bound, T.bound());
    auto members = bits(a.members);
    int k = (int)T.carrier().size();
    for (int n = 1; n <= res.bound; ++n) {
        auto An = *A.enumerate(n);
        for (int ymask = 1; ymask < (1 << n); ++ymask) {
            // Positions in Y take values in a; the others are shared by c and c̄.
            std::vector<int> range(n);
            for (int x = 0; x < n; ++x) range[x] = (ymask >> x & 1) ? (int)members.size() : k;
            for (auto& b : An)
                for (auto& d : An) {
                    std::map<std::vector<int>, std::pair<bool, std::string>> seen;
                    std::vector<int> idx(n, 0);
                    for (;;) {
                        std::vector<Element> c;
                        std::vector<int> shared;
                        for (int x = 0; x < n; ++x) {
                            bool y = ymask >> x & 1;
                            int e = y ? members[idx[x]] : idx[x];
                            c.push_back(T.elem(e));
                            if (!y) shared.push_back(e);
                        }
                        bool in = T.contains(a, pair_contract(A, b, diag_mul(A, d, c)));
                        std::string where = "b=" + A.format(b) + " d=" + A.format(d) + " c=[";
                        for (size_t x = 0; x < c.size(); ++x) where += (x ? "," : "") + label(A, c[x]);
                        where += "]";
                        auto it = seen.find(shared);
                        if (it == seen.end()) {
                            seen.emplace(shared, std::make_pair(in, where));
                        } else if (it->second.first != in) {
                            res.verdict = Stability::Unstable;
                            res.witness = (in ? where + " gives a member, " + it->second.second
                                              : it->second.second + " gives a member, " + where) +
                                          " does not";
                            return res;
                        }
                        int i = n - 1;
                        while (i >= 0 && ++idx[i] == range[i]) idx[i--] = 0;
                        if (i < 0) break;
                    }
                }
        }
    }
    res.verdict = Stability::Stable;
    return res;
}

}  // namespace genring
