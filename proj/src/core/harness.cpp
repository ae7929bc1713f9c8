#include "json.hpp"

#include "genring/core.hpp"

namespace genring {

const std::vector<std::string>& axiom_names() {
    static const std::vector<std::string> names = {
        "associativity", "left_adjunction", "right_adjunction", "left_linearity", "right_linearity",
        "unit",          "commutativity",   "self_adjoint",     "derived_mul",    "derived_contract"};
    return names;
}

const AxiomResult* AxiomReport::find(std::string_view axiom) const {
    for (auto& r : results)
        if (r.axiom == axiom) return &r;
    return nullptr;
}

namespace {

struct Trial {
    const Ring& R;
    Rng& rng;
    int max_shape;

    int size() {
        std::uniform_int_distribution<int> d(0, 9);
        if (d(rng) == 0) return 0;
        std::uniform_int_distribution<int> s(1, std::max(1, max_shape));
        return s(rng);
    }
    Fibered sample(const PartialMap& f) { return sample_fibered(R, f, rng); }
    std::string fmt(const Fibered& a) { return format_fibered(R, a); }
    std::string fmt(const Element& a) { return R.format(a); }
};

// Outcome of one instance: nullopt means pass, otherwise a counterexample text.
using Outcome = std::optional<std::string>;

std::string sides(Trial& t, const std::optional<Fibered>& l, const std::optional<Fibered>& r) {
    return " lhs=" + (l ? t.fmt(*l) : std::string("undefined")) + " rhs=" + (r ? t.fmt(*r) : std::string("undefined"));
}

Outcome compare(Trial& t, const std::string& inputs, const std::optional<Fibered>& l,
                const std::optional<Fibered>& r) {
    if (l && r && equal_fibered(t.R, *l, *r)) return std::nullopt;
    return inputs + sides(t, l, r);
}

std::optional<Fibered> mx(Trial& t, const std::optional<Fibered>& a, const std::optional<Fibered>& b) {
    if (!a || !b) return std::nullopt;
    return mul_ext(t.R, *a, *b);
}

std::optional<Fibered> cx(Trial& t, const std::optional<Fibered>& c, const std::optional<Fibered>& b,
                          const PartialMap& g) {
    if (!c || !b) return std::nullopt;
    return contract_ext(t.R, *c, *b, g);
}

Outcome associativity(Trial& t) {
    int x = t.size(), y = t.size(), z = t.size();
    PartialMap f = random_map(x, y, t.rng), g = random_map(y, z, t.rng), h = constant_map(z);
    Fibered d = t.sample(h), c = t.sample(g), b = t.sample(f);
    auto l = mx(t, d, mx(t, c, b));
    auto r = mx(t, mx(t, d, c), b);
    return compare(t, "d=" + t.fmt(d) + " c=" + t.fmt(c) + " b=" + t.fmt(b), l, r);
}

Outcome left_adjunction(Trial& t) {
    int x = t.size(), y = t.size(), z = t.size();
    PartialMap f = random_map(x, y, t.rng), g = random_map(y, z, t.rng), h = constant_map(z);
    PartialMap hg = compose(h, g), hgf = compose(hg, f);
    Fibered d = t.sample(hgf), a = t.sample(g), c = t.sample(f);
    auto l = cx(t, d, mx(t, a, c), h);
    auto r = cx(t, cx(t, d, c, hg), a, h);
    return compare(t, "d=" + t.fmt(d) + " a=" + t.fmt(a) + " c=" + t.fmt(c), l, r);
}

// Right adjunction and left linearity only assert equality when the right side is defined.
Outcome right_adjunction(Trial& t, bool& vacuous) {
    int x = t.size(), y = t.size(), z = t.size();
    PartialMap f = random_map(x, y, t.rng), g = random_map(y, z, t.rng), h = constant_map(z);
    PartialMap hg = compose(h, g), gf = compose(g, f);
    Fibered d = t.sample(hg), a = t.sample(gf), c = t.sample(f);
    auto r = cx(t, d, cx(t, a, c, g), h);
    if (!r) {
        vacuous = true;
        return std::nullopt;
    }
    auto l = cx(t, mx(t, d, c), a, h);
    return compare(t, "d=" + t.fmt(d) + " a=" + t.fmt(a) + " c=" + t.fmt(c), l, r);
}

Outcome left_linearity(Trial& t, bool& vacuous) {
    int x = t.size(), y = t.size(), z = t.size();
    PartialMap f = random_map(x, y, t.rng), g = random_map(y, z, t.rng), h = constant_map(z);
    PartialMap hg = compose(h, g), gf = compose(g, f);
    Fibered d = t.sample(h), a = t.sample(gf), c = t.sample(f);
    auto r = mx(t, d, cx(t, a, c, g));
    if (!r) {
        vacuous = true;
        return std::nullopt;
    }
    auto l = cx(t, mx(t, d, a), c, hg);
    return compare(t, "d=" + t.fmt(d) + " a=" + t.fmt(a) + " c=" + t.fmt(c), l, r);
}

Outcome right_linearity(Trial& t) {
    int x = t.size(), y = t.size(), z = t.size();
    PartialMap g = random_map(z, y, t.rng), f = random_map(x, y, t.rng), h = constant_map(y);
    PartialMap hf = compose(h, f), hg = compose(h, g);
    Fibered d = t.sample(hf), a = t.sample(g), c = t.sample(f);
    PullbackSquare p = pullback(g, f);
    Fibered at = lift_along(p, a, f, false);
    Fibered ct = lift_along(p, c, g, true);
    auto l = mx(t, cx(t, d, c, h), a);
    auto r = cx(t, mx(t, d, at), ct, hg);
    return compare(t, "d=" + t.fmt(d) + " a=" + t.fmt(a) + " c=" + t.fmt(c), l, r);
}

Outcome unit(Trial& t) {
    int x = t.size();
    Element a = t.R.sample(x, t.rng);
    Fibered one_id = unit_fibered(t.R, identity(x));
    Fibered af = as_fibered(a);
    std::string in = "a=" + t.fmt(a);
    auto m1 = t.R.mul(a, one_id);
    if (!m1 || !t.R.equal(*m1, a)) return in + " a*1_id=" + (m1 ? t.fmt(*m1) : "undefined");
    auto m2 = t.R.mul(t.R.one(), af);
    if (!m2 || !t.R.equal(*m2, a)) return in + " 1*a=" + (m2 ? t.fmt(*m2) : "undefined");
    auto m3 = t.R.contract(a, one_id);
    if (!m3 || !t.R.equal(*m3, a)) return in + " (a,1_id)=" + (m3 ? t.fmt(*m3) : "undefined");
    int y = t.size();
    PartialMap f = random_partial_bijection(x, y, t.rng);
    auto l = t.R.mul(a, unit_fibered(t.R, transpose(f)));
    auto r = t.R.contract(a, unit_fibered(t.R, f));
    if (!l || !r || !t.R.equal(*l, *r))
        return in + " f=" + to_string(f) + " a*1_ft=" + (l ? t.fmt(*l) : "undefined") +
               " (a,1_f)=" + (r ? t.fmt(*r) : "undefined");
    return std::nullopt;
}

Outcome commutativity(Trial& t) {
    int x = t.size(), y = t.size(), z = t.size();
    PartialMap g = random_map(z, y, t.rng), f = random_map(x, y, t.rng);
    Fibered a = t.sample(g), c = t.sample(f);
    PullbackSquare p = pullback(g, f);
    Fibered at = lift_along(p, a, f, false);
    Fibered ct = lift_along(p, c, g, true);
    auto l = mx(t, a, ct);
    auto r = mx(t, c, at);
    return compare(t, "a=" + t.fmt(a) + " c=" + t.fmt(c), l, r);
}

Outcome self_adjoint(Trial& t) {
    Element a = t.R.sample(1, t.rng);
    auto at = transpose_elt(t.R, a);
    if (at && t.R.equal(*at, a)) return std::nullopt;
    return "a=" + t.fmt(a) + " a^t=" + (at ? t.fmt(*at) : std::string("undefined"));
}

Outcome derived(Trial& t, bool contraction) {
    int x = t.size(), y = t.size();
    Element a = t.R.sample(x, t.rng), b = t.R.sample(x, t.rng);
    Element c = t.R.sample(y, t.rng), d = t.R.sample(y, t.rng);
    auto ab = t.R.contract(a, as_fibered(b));
    auto cd = t.R.contract(c, as_fibered(d));
    std::optional<Element> l;
    if (ab && cd) l = contraction ? t.R.contract(*ab, as_fibered(*cd)) : t.R.mul(*ab, as_fibered(*cd));
    auto r = contraction ? derived_contract(t.R, a, b, c, d) : derived_mul(t.R, a, b, c, d);
    if (l && r && t.R.equal(*l, *r)) return std::nullopt;
    return "a=" + t.fmt(a) + " b=" + t.fmt(b) + " c=" + t.fmt(c) + " d=" + t.fmt(d) +
           " lhs=" + (l ? t.fmt(*l) : std::string("undefined")) + " rhs=" + (r ? t.fmt(*r) : std::string("undefined"));
}

}  // namespace

AxiomReport check_axioms(const Ring& R, const HarnessOptions& opt) {
    AxiomReport rep;
    rep.ring = R.name();
    std::uint64_t salt = 0;
    for (auto& name : axiom_names()) {
        ++salt;
        if (name == "self_adjoint" && !opt.self_adjoint) continue;
        if ((name == "derived_mul" || name == "derived_contract") && !opt.derived) continue;
        Rng rng(opt.seed * 1000003ULL + salt);
        Trial t{R, rng, opt.max_shape};
        AxiomResult res;
        res.axiom = name;
        for (int i = 0; i < opt.trials; ++i) {
            bool vac = false;
            Outcome o;
            if (name == "associativity") o = associativity(t);
            else if (name == "left_adjunction") o = left_adjunction(t);
            else if (name == "right_adjunction") o = right_adjunction(t, vac);
            else if (name == "left_linearity") o = left_linearity(t, vac);
            else if (name == "right_linearity") o = right_linearity(t);
            else if (name == "unit") o = unit(t);
            else if (name == "commutativity") o = commutativity(t);
            else if (name == "self_adjoint") o = self_adjoint(t);
            else if (name == "derived_mul") o = derived(t, false);
            else o = derived(t, true);
            ++res.trials;
            if (vac) ++res.vacuous;
            if (!o) ++res.passes;
            else if (!res.counterexample) res.counterexample = *o;
        }
        rep.results.push_back(std::move(res));
    }
    return rep;
}

std::string report_json(const AxiomReport& r) {
    nlohmann::ordered_json j;
    j["ring"] = r.ring;
    nlohmann::ordered_json ax = nlohmann::ordered_json::object();
    for (auto& a : r.results) {
        nlohmann::ordered_json e;
        e["trials"] = a.trials;
        e["passes"] = a.passes;
        e["counterexample"] = a.counterexample ? nlohmann::ordered_json(*a.counterexample) : nlohmann::ordered_json();
        ax[a.axiom] = e;
    }
    j["axioms"] = ax;
    return j.dump(2);
}

std::string report_tsv(const AxiomReport& r) {
    std::string s = "axiom\ttrials\tpasses\tcounterexample\n";
    for (auto& a : r.results)
        s += a.axiom + "\t" + std::to_string(a.trials) + "\t" + std::to_string(a.passes) + "\t" +
             (a.counterexample ? *a.counterexample : std::string("-")) + "\n";
    return s;
}

AxiomResult check_homomorphism(const Homomorphism& h, int trials, int max_shape, std::uint64_t seed) {
    const Ring& S = *h.source;
    const Ring& T = *h.target;
    Rng rng(seed);
    AxiomResult res;
    res.axiom = "homomorphism";
    Trial t{S, rng, max_shape};
    for (int i = 0; i < trials; ++i) {
        ++res.trials;
        int x = t.size(), y = t.size();
        PartialMap f = random_map(x, y, rng);
        Element a = S.sample(y, rng);
        Element c = S.sample(x, rng);
        Fibered b = sample_fibered(S, f, rng);
        bool ok = T.equal(h.map(S.one()), T.one());
        auto m = S.mul(a, b);
        auto mt = T.mul(h.map(a), h.apply(b));
        ok = ok && m && mt && T.equal(h.map(*m), *mt);
        auto k = S.contract(c, b);
        auto kt = T.contract(h.map(c), h.apply(b));
        ok = ok && k && kt && T.equal(h.map(*k), *kt);
        if (ok) ++res.passes;
        else if (!res.counterexample)
            res.counterexample = "a=" + S.format(a) + " c=" + S.format(c) + " b=" + format_fibered(S, b);
    }
    return res;
}

}  // namespace genring
