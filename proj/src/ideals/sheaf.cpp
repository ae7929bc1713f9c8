#include "genring/ideals.hpp"

namespace genring {

namespace {

Element power(const Ring& A, const Element& x, long n) {
    Element r = A.one();
    for (long i = 0; i < n; ++i) r = scalar_mul(A, x, r);
    return r;
}

bool compatible(const Ring& A, const std::vector<Element>& g, const std::vector<Element>& a, long n,
                std::pair<int, int>* bad) {
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j) {
            Element p = power(A, scalar_mul(A, g[i], g[j]), n);
            if (!A.equal(scalar_mul(A, p, scalar_mul(A, g[j], a[i])), scalar_mul(A, p, scalar_mul(A, g[i], a[j])))) {
                if (bad) *bad = {(int)i, (int)j};
                return false;
            }
        }
    return true;
}

}  // namespace

GlueResult glue_sections(const Ring& A, const Element& s, const std::vector<Element>& g, const std::vector<Element>& a,
                         const std::function<std::optional<CoverCertificate>(const std::vector<Element>& g)>& certify,
                         int bound) {
    GlueResult res;
    if (g.empty() || g.size() != a.size()) throw std::invalid_argument("glue_sections: one section per chart");
    int X = a[0].shape;
    for (auto& ai : a)
        if (ai.shape != X) throw ShapeError("glue_sections: sections of different shapes");

    long n = 0;
    std::pair<int, int> bad;
    while (!compatible(A, g, a, n, &bad)) {
        if (++n > bound) {
            res.incompatible = bad;
            res.message = "sections " + std::to_string(bad.first + 1) + " and " + std::to_string(bad.second + 1) +
                          " disagree on the overlap: (g_i g_j)^n (g_j a_i - g_i a_j) != 0 for n <= " +
                          std::to_string(bound);
            return res;
        }
    }
    for (size_t i = 0; i < g.size(); ++i) {
        res.sections.push_back(scalar_mul(A, power(A, g[i], n), a[i]));
        res.g.push_back(power(A, g[i], n + 1));
    }
    if (!compatible(A, res.g, res.sections, 0, &bad)) {
        res.incompatible = bad;
        res.message = "cleared sections are not compatible";
        return res;
    }

    auto cert = certify(res.g);
    if (!cert) {
        res.message = "no certificate s^M = (b∘c, d) found for the cover";
        return res;
    }
    int Y = cert->b.shape;
    res.M = cert->M;

    // Apex X⊗Y with (x, y) at (x-1)*Y + y.
    int P = X * Y;
    std::vector<int> to_y(P), to_x(P);
    for (int x = 1; x <= X; ++x)
        for (int y = 1; y <= Y; ++y) {
            to_y[(x - 1) * Y + y - 1] = y;
            to_x[(x - 1) * Y + y - 1] = x;
        }
    Fibered e{PartialMap(P, Y, to_y), {}};
    if (X > 0)
        for (int y = 0; y < Y; ++y) e.comps.push_back(res.sections[cert->chart[y]]);
    Fibered dt{PartialMap(P, X, to_x), {}};
    if (Y > 0)
        for (int x = 0; x < X; ++x) dt.comps.push_back(cert->d);
    auto be = A.mul(cert->b, e);
    if (!be) throw std::runtime_error(A.name() + ": b∘e undefined");
    auto glued = A.contract(*be, dt);
    if (!glued) throw std::runtime_error(A.name() + ": contraction with d undefined");
    res.a = *glued;

    Element sM = power(A, s, res.M);
    for (size_t j = 0; j < res.g.size(); ++j)
        if (!A.equal(scalar_mul(A, res.g[j], res.a), scalar_mul(A, sM, res.sections[j]))) {
            res.message = "glued section does not restrict to chart " + std::to_string(j + 1);
            return res;
        }
    res.ok = true;
    res.message = "glued";
    return res;
}

std::optional<CoverCertificate> gz_certificate(const GRing& GZ, const Element& s, const std::vector<Element>& g,
                                               long max_power) {
    mpz_class d = 0;
    std::vector<mpz_class> u(g.size(), 0);
    for (size_t i = 0; i < g.size(); ++i) {
        mpz_class gi = GZ.coords(g[i])[0].q.get_num();
        mpz_class nd, a, b;
        mpz_gcdext(nd.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), gi.get_mpz_t());
        for (size_t j = 0; j < i; ++j) u[j] *= a;
        u[i] = b;
        d = nd;
    }
    if (d == 0) return std::nullopt;
    mpz_class sv = GZ.coords(s)[0].q.get_num();
    mpz_class t = 1;
    for (long M = 0; M <= max_power; ++M, t *= sv) {
        if (t % d != 0) continue;
        CoverCertificate c;
        c.M = M;
        std::vector<Scalar> b;
        for (auto& ui : u) b.emplace_back(mpq_class(ui * (t / d)));
        c.b = GZ.vec(b);
        c.d = GZ.ones((int)g.size());
        for (size_t i = 0; i < g.size(); ++i) c.chart.push_back((int)i);
        return c;
    }
    return std::nullopt;
}

std::optional<CoverCertificate> finite_certificate(const FiniteIdeals& T, const Element& s,
                                                   const std::vector<Element>& g, long max_power, int shape_bound) {
    const Ring& A = T.ring();
    int N = (int)g.size();
    for (long M = 0; M <= max_power; ++M) {
        Element target = power(A, s, M);
        for (int k = 1; k <= shape_bound; ++k) {
            auto Ak = *A.enumerate(k);
            std::vector<int> chart(k, 0);
            for (;;) {
                std::vector<Element> c;
                for (int y : chart) c.push_back(g[y]);
                for (auto& b : Ak) {
                    Element bc = diag_mul(A, b, c);
                    for (auto& d : Ak)
                        if (A.equal(pair_contract(A, bc, d), target)) return CoverCertificate{M, b, d, chart};
                }
                int i = k - 1;
                while (i >= 0 && ++chart[i] == N) chart[i--] = 0;
                if (i < 0) break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace genring
