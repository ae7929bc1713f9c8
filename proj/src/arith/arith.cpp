#include <algorithm>
#include <cmath>

#include "genring/arith.hpp"
#include "json.hpp"

namespace genring {

bool is_squarefree(long N) {
    if (N < 1) return false;
    for (long p = 2; p * p <= N; ++p)
        if (N % (p * p) == 0) return false;
    return true;
}

std::vector<mpz_class> prime_factors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n <= 1) return out;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) break;
    }
    if (n > 1) out.push_back(n);
    return out;
}

long valuation(const mpq_class& q, const mpz_class& p) {
    if (q == 0) throw std::invalid_argument("valuation of 0");
    long v = 0;
    mpz_class a = q.get_num(), b = q.get_den();
    while (a % p == 0) a /= p, ++v;
    while (b % p == 0) b /= p, --v;
    return v;
}

std::vector<long> squarefree_upto(long bound) {
    std::vector<long> out;
    for (long n = 2; n <= bound; ++n)
        if (is_squarefree(n)) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------- A_N

namespace {

bool denominator_ok(const mpz_class& den, long N) {
    mpz_class d = den;
    for (;;) {
        mpz_class g;
        mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), (unsigned long)N);
        if (g == 1) return d == 1;
        d /= g;
    }
}

void require_squarefree(long N) {
    if (N < 2 || !is_squarefree(N)) throw std::invalid_argument("A_N needs a square-free N >= 2, got " + std::to_string(N));
}

}  // namespace

ANRing::ANRing(long N) : GZInvRing(N) { require_squarefree(N); }

bool ANRing::admissible(const std::vector<Scalar>& v) const {
    return GZInvRing::admissible(v) && norm2(v) <= 1;
}

Element ANRing::sample(int n, Rng& rng) const {
    // Coordinates k/N^e, rejected until the norm condition holds.
    std::uniform_int_distribution<int> pw(0, 2);
    for (;;) {
        std::vector<Scalar> v;
        for (int i = 0; i < n; ++i) {
            mpz_class den = 1;
            for (int k = pw(rng); k > 0; --k) den *= N();
            long d = den.get_si();
            std::uniform_int_distribution<long> num(-d, d);
            v.emplace_back(mpq_class(num(rng), den));
        }
        if (norm2(v) <= 1) return vec(std::move(v));
    }
}

Element ANRing::parse(std::string_view s, int n) const {
    auto v = parse_gvector(semiring(), s);
    if (n >= 0 && (int)v.size() != n) throw ParseError(name() + ": wrong number of coordinates");
    if (!admissible(v)) throw ParseError(name() + ": vector outside A_N");
    return vec(std::move(v));
}

bool ANRing::is_invertible(const Element& a) const {
    if (a.shape != 1) throw ShapeError(name() + ": invertibility is a property of A_[1]");
    const auto& q = coords(a)[0].q;
    if (q == 0) return false;
    mpq_class inv = 1 / q;
    return denominator_ok(inv.get_den(), N()) && inv * inv <= 1;
}

bool ANRing::in_maximal_ideal(const Element& a) const { return norm2(coords(a)) < 1; }

bool an_membership(long N, const std::vector<mpq_class>& v) {
    require_squarefree(N);
    mpq_class s = 0;
    for (auto& q : v) {
        if (!denominator_ok(q.get_den(), N)) return false;
        s += q * q;
    }
    return s <= 1;
}

std::vector<mpq_class> tower_global_sections(const std::vector<long>& tower, long bound) {
    std::vector<mpq_class> out;
    for (long q = 1; q <= bound; ++q)
        for (long p = -bound; p <= bound; ++p) {
            mpq_class x(p, q);
            x.canonicalize();
            if (x.get_den() != q) continue;  // each rational once
            bool all = true;
            for (long N : tower)
                if (!an_membership(N, {x})) {
                    all = false;
                    break;
                }
            if (all) out.push_back(x);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- divisors

long Divisor::at(const mpz_class& p) const {
    auto it = nu.find(p);
    return it == nu.end() ? 0 : it->second;
}

namespace {

void add_into(std::map<mpz_class, long>& a, const std::map<mpz_class, long>& b, long sign = 1) {
    for (auto& [p, v] : b) {
        long& x = a[p];
        x += sign * v;
        if (x == 0) a.erase(p);
    }
}

double log_mult(const mpq_class& r) { return std::log(r.get_d()); }

}  // namespace

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor d;
    d.nu = nu;
    add_into(d.nu, o.nu);
    if (exact() && o.exact()) {
        d.r = r * o.r;
    } else {
        // A real archimedean part never folds back into an exact one.
        double a = exact() ? -log_mult(r) : *approx_nu_eta;
        double b = o.exact() ? -log_mult(o.r) : *o.approx_nu_eta;
        d.approx_nu_eta = a + b;
    }
    return d;
}

Divisor Divisor::operator-() const {
    Divisor d;
    add_into(d.nu, nu, -1);
    if (exact())
        d.r = 1 / r;
    else
        d.approx_nu_eta = -*approx_nu_eta;
    return d;
}

bool Divisor::operator==(const Divisor& o) const {
    if (exact() != o.exact() || nu != o.nu) return false;
    return exact() ? r == o.r : *approx_nu_eta == *o.approx_nu_eta;
}

bool Divisor::effective() const {
    for (auto& [p, v] : nu)
        if (v < 0) return false;
    return exact() ? r <= 1 : *approx_nu_eta >= 0;
}

Divisor prime_divisor(const mpz_class& p) {
    Divisor d;
    d.nu[p] = 1;
    return d;
}

Divisor eta_divisor(double nu_eta) {
    Divisor d;
    d.approx_nu_eta = nu_eta;
    return d;
}

Divisor div(const mpq_class& f) {
    if (f == 0) throw std::invalid_argument("div: f = 0");
    Divisor d;
    for (auto& p : prime_factors(f.get_num())) d.nu[p] = valuation(f, p);
    for (auto& p : prime_factors(f.get_den())) d.nu[p] = valuation(f, p);
    d.r = abs(f);
    return d;
}

NormValue norm_map(const Divisor& D) {
    NormValue n;
    mpq_class q = 1;
    for (auto& [p, v] : D.nu) {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), (unsigned long)std::labs(v));
        q *= v > 0 ? mpq_class(pk) : mpq_class(1, pk);
    }
    q.canonicalize();
    if (D.exact()) {
        n.q = q / D.r;
        return n;
    }
    n.exact = false;
    n.approx = std::exp(*D.approx_nu_eta) * q.get_d();
    return n;
}

std::string format_divisor(const Divisor& D) {
    std::string s;
    for (auto& [p, v] : D.nu) s += (s.empty() ? "" : " + ") + std::to_string(v) + "[" + p.get_str() + "]";
    std::string eta = D.exact() ? (D.r == 1 ? "" : "-log(" + D.r.get_str() + ")[eta]")
                                : std::to_string(*D.approx_nu_eta) + "[eta] (approx)";
    if (!eta.empty()) s += (s.empty() ? "" : " + ") + eta;
    return s.empty() ? "0" : s;
}

std::string divisor_tsv(const Divisor& D) {
    std::string s = "place\tvaluation\n";
    for (auto& [p, v] : D.nu) s += p.get_str() + "\t" + std::to_string(v) + "\n";
    if (D.exact())
        s += "eta\t" + (D.r == 1 ? std::string("0") : "-log(" + D.r.get_str() + ")") + "\n";
    else
        s += "eta\t" + std::to_string(*D.approx_nu_eta) + "\t# approx\n";
    return s;
}

// ---------------------------------------------------------------- level divisors

namespace {

void check_level(const LevelDivisor& D) {
    if (D.N < 2 || !is_squarefree(D.N)) throw std::invalid_argument("level must be square-free, got " + std::to_string(D.N));
    for (auto& [p, v] : D.nu)
        if (D.N % p.get_si() != 0)
            throw std::invalid_argument("component at " + p.get_str() + " outside level " + std::to_string(D.N));
    if (D.r <= 0) throw std::invalid_argument("archimedean multiplicand must be positive");
}

}  // namespace

LevelDivisor LevelDivisor::operator+(const LevelDivisor& o) const {
    if (N != o.N) throw std::invalid_argument("level mismatch: " + std::to_string(N) + " and " + std::to_string(o.N));
    LevelDivisor d{N, nu, r * o.r};
    add_into(d.nu, o.nu);
    return d;
}

LevelDivisor LevelDivisor::operator-() const {
    LevelDivisor d{N, {}, 1 / r};
    add_into(d.nu, nu, -1);
    return d;
}

bool LevelDivisor::operator==(const LevelDivisor& o) const { return N == o.N && nu == o.nu && r == o.r; }

bool LevelDivisor::effective() const {
    for (auto& [p, v] : nu)
        if (v < 0) return false;
    return r <= 1;
}

LevelDivisor level_restrict(const Divisor& D, long N) {
    if (!D.exact()) throw std::invalid_argument("level divisors need an exact archimedean part");
    LevelDivisor L{N, {}, D.r};
    for (auto& [p, v] : D.nu)
        if (N % p.get_si() == 0) L.nu[p] = v;
    check_level(L);
    return L;
}

LevelDivisor pro_push(const LevelDivisor& D, long M) {
    check_level(D);
    if (M < 2 || !is_squarefree(M)) throw std::invalid_argument("level must be square-free, got " + std::to_string(M));
    if (M % D.N != 0)
        throw std::invalid_argument("level mismatch: " + std::to_string(D.N) + " does not divide " + std::to_string(M));
    LevelDivisor L = D;
    L.N = M;
    for (auto& q : prime_factors(mpz_class(M / D.N))) {
        long v = valuation(D.r, q);
        if (v != 0) L.nu[q] = v;
    }
    return L;
}

std::string format_level(const LevelDivisor& D) {
    std::string s = "N=" + std::to_string(D.N) + ":";
    for (auto& [p, v] : D.nu) s += " " + std::to_string(v) + "[" + p.get_str() + "]";
    return s + " r=" + D.r.get_str();
}

ProDivisorReport pro_divisor_checks(const std::vector<LevelDivisor>& seq) {
    ProDivisorReport rep;
    if (seq.empty()) throw std::invalid_argument("pro-divisor: empty tower");
    for (size_t i = 0; i < seq.size(); ++i) {
        check_level(seq[i]);
        rep.levels.push_back(seq[i].N);
        if (i > 0 && (seq[i].N % seq[i - 1].N != 0 || seq[i].N == seq[i - 1].N))
            throw std::invalid_argument("inconsistent tower: " + std::to_string(seq[i - 1].N) + " then " +
                                        std::to_string(seq[i].N));
    }
    auto note = [&](const std::string& w) {
        if (!rep.witness) rep.witness = w;
    };

    // Monotone: push(D_N) = D_M + d with d effective.
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j) {
            LevelDivisor d = pro_push(seq[i], seq[j].N) - seq[j];
            if (!d.effective()) {
                rep.monotone = false;
                note("push of level " + std::to_string(seq[i].N) + " minus level " + std::to_string(seq[j].N) +
                     " is not effective: " + format_level(d));
            }
        }

    // Bounded: d at the first level with D_M + push(d) effective for every M.
    const LevelDivisor& first = seq.front();
    LevelDivisor d{first.N, {}, 1};
    std::map<mpz_class, long> need;
    mpq_class rmax = 0;
    for (auto& D : seq) {
        for (auto& p : prime_factors(mpz_class(D.N))) {
            long v = D.nu.count(p) ? D.nu.at(p) : 0;
            auto it = need.find(p);
            need[p] = it == need.end() ? std::max(0L, -v) : std::max(it->second, -v);
        }
        rmax = std::max(rmax, D.r);
    }
    mpq_class r = 1;
    for (auto& [p, k] : need) {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), (unsigned long)k);
        if (first.N % p.get_si() == 0) {
            if (k) d.nu[p] = k;
        } else {
            r *= pk;
        }
    }
    // Scale by a prime of the first level until r * rmax <= 1.
    long p0 = prime_factors(mpz_class(first.N)).front().get_si();
    while (r * rmax > 1) r /= p0;
    r.canonicalize();
    d.r = r;
    for (auto& D : seq)
        if (!(D + pro_push(d, D.N)).effective()) rep.bounded = false;
    if (rep.bounded) rep.bound_certificate = d;

    // Stabilization on the last two levels, then the limit from the last level pushed far enough
    // to expose every prime of its multiplicand.
    const LevelDivisor& last = seq.back();
    if (seq.size() >= 2) {
        LevelDivisor prev = pro_push(seq[seq.size() - 2], last.N);
        if (!(prev == last)) {
            rep.stabilized = false;
            note("components change between levels " + std::to_string(seq[seq.size() - 2].N) + " and " +
                 std::to_string(last.N));
        }
    }
    long top = last.N;
    for (auto& p : prime_factors(last.r.get_num())) top = std::lcm(top, p.get_si());
    for (auto& p : prime_factors(last.r.get_den())) top = std::lcm(top, p.get_si());
    LevelDivisor lim = pro_push(last, top);
    rep.limit.nu = lim.nu;
    rep.limit.r = lim.r;
    return rep;
}

std::vector<LevelDivisor> parse_tower_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("tower: ") + e.what());
    }
    if (!j.contains("levels") || !j["levels"].is_array()) throw ParseError("tower: missing levels");
    std::vector<LevelDivisor> out;
    for (auto& N : j["levels"]) out.push_back(LevelDivisor{N.get<long>(), {}, 1});
    if (j.contains("components")) {
        for (auto& [place, vals] : j["components"].items()) {
            if (!vals.is_array() || vals.size() != out.size())
                throw ParseError("tower: component " + place + " needs one entry per level");
            for (size_t i = 0; i < out.size(); ++i) {
                if (vals[i].is_null()) continue;
                if (place == "eta") {
                    out[i].r = parse_rational(vals[i].is_string() ? vals[i].get<std::string>() : vals[i].dump());
                } else {
                    long v = vals[i].get<long>();
                    if (v != 0) out[i].nu[mpz_class(place)] = v;
                }
            }
        }
    }
    return out;
}

std::string pro_report_json(const ProDivisorReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["levels"] = r.levels;
    j["monotone"] = r.monotone;
    j["bounded"] = r.bounded;
    j["stabilized"] = r.stabilized;
    if (r.bound_certificate) j["bound_certificate"] = format_level(*r.bound_certificate);
    ordered_json lim = ordered_json::object();
    for (auto& [p, v] : r.limit.nu) lim[p.get_str()] = v;
    lim["eta"] = r.limit.r.get_str();
    j["limit"] = lim;
    if (r.witness) j["witness"] = *r.witness;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- P^1

P1MapData p1_map(const mpq_class& f) {
    if (f == 0) throw std::invalid_argument("p1_map: f = 0");
    P1MapData d;
    d.f = f;
    if (f == 1 || f == -1) {
        d.constant = true;
        d.charts.push_back(P1Chart{"F[z^Z]", 1, "z", f});
        return d;
    }
    for (auto& p : prime_factors(f.get_num())) d.N0 *= p;
    for (auto& p : prime_factors(f.get_den())) d.Ninf *= p;
    d.charts.push_back(P1Chart{"F[z^N]", d.Ninf, "z", f});
    d.charts.push_back(P1Chart{"F[z^Z]", d.N0 * d.Ninf, "z", f});
    d.charts.push_back(P1Chart{"F[(z^-1)^N]", d.N0, "z^-1", 1 / f});
    return d;
}

P1MapData invert(const P1MapData& d) {
    P1MapData e;
    e.f = 1 / d.f;
    e.constant = d.constant;
    e.N0 = d.Ninf;
    e.Ninf = d.N0;
    if (d.constant) {
        e.charts.push_back(P1Chart{"F[z^Z]", 1, "z", e.f});
        return e;
    }
    // I swaps z and z^-1: the chart of F[(z^-1)^N] becomes the chart of F[z^N] and back.
    for (auto it = d.charts.rbegin(); it != d.charts.rend(); ++it) {
        P1Chart c = *it;
        if (c.source == "F[z^N]") c = P1Chart{"F[(z^-1)^N]", c.level, "z^-1", c.image};
        else if (c.source == "F[(z^-1)^N]") c = P1Chart{"F[z^N]", c.level, "z", c.image};
        else c.image = 1 / c.image;
        e.charts.push_back(c);
    }
    return e;
}

bool operator==(const P1MapData& a, const P1MapData& b) {
    if (a.f != b.f || a.N0 != b.N0 || a.Ninf != b.Ninf || a.constant != b.constant) return false;
    if (a.charts.size() != b.charts.size()) return false;
    for (size_t i = 0; i < a.charts.size(); ++i) {
        auto& x = a.charts[i];
        auto& y = b.charts[i];
        if (x.source != y.source || x.level != y.level || x.generator != y.generator || x.image != y.image)
            return false;
    }
    return true;
}

bool chart_consistent(const P1MapData& d) {
    auto in_level = [](const mpq_class& q, const mpz_class& L) {
        mpz_class den = q.get_den();
        for (auto& p : prime_factors(den))
            if (L % p != 0) return false;
        return true;
    };
    if (d.constant) return d.charts.size() == 1 && (d.f == 1 || d.f == -1);
    if (d.charts.size() != 3 || gcd(d.N0, d.Ninf) != 1) return false;
    for (auto& c : d.charts)
        if (!in_level(c.image, c.level)) return false;
    // On the overlap z^-1 -> f^-1 is the inverse of z -> f.
    return d.charts[0].image * d.charts[2].image == 1 && d.charts[1].image == d.charts[0].image &&
           d.N0 * d.Ninf == d.charts[1].level;
}

}  // namespace genring
