#pragma once

#include "genring/models.hpp"

namespace genring {

// h-ideal of A_[1]. Finite carriers use the bitmask over the listed carrier; symbolic
// families use the generator (classical generator for 𝒢(B), minimal degree for 𝔽[z^N]).
struct Ideal {
    std::uint64_t members = 0;
    mpz_class gen;
    bool operator==(const Ideal& o) const { return members == o.members && gen == o.gen; }
};

struct ClosureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpecPoint {
    Ideal prime;
    std::string label;
};

class IdealTheory {
public:
    virtual ~IdealTheory() = default;
    virtual const Ring& ring() const = 0;
    virtual std::string name() const { return ring().name(); }

    virtual Ideal principal(const Element& a) const = 0;
    virtual Ideal generated(const std::vector<Element>& gens) const;
    virtual Ideal zero() const = 0;
    virtual Ideal unit() const { return principal(ring().one()); }
    virtual Ideal sum(const Ideal& a, const Ideal& b) const = 0;
    virtual Ideal product(const Ideal& a, const Ideal& b) const = 0;
    // (a0 : a1) = {c : c∘a1 ⊆ a0}
    virtual Ideal quotient(const Ideal& a0, const Ideal& a1) const = 0;
    virtual Ideal radical(const Ideal& a) const = 0;
    // {a : a∘m1 = a∘m2} for m1, m2 in A_X.
    virtual Ideal ann(const Element& m1, const Element& m2) const = 0;
    virtual bool contains(const Ideal& a, const Element& x) const = 0;
    virtual bool leq(const Ideal& a, const Ideal& b) const = 0;
    virtual bool is_prime(const Ideal& a) const = 0;
    virtual std::string format(const Ideal& a) const = 0;

    // Primes, generic point first. For infinite spectra only primes up to bound are listed
    // and complete is set to false.
    virtual std::vector<SpecPoint> primes(long bound, bool& complete) const = 0;
    bool is_unit(const Ideal& a) const { return leq(unit(), a); }
};

// ---------------------------------------------------------------- finite carriers

// A_[1] finite and every A_X enumerable. Generated ideals are closures over shapes <= bound,
// accepted only when one more pass at shape bound+1 adds nothing.
class FiniteIdeals : public IdealTheory {
public:
    FiniteIdeals(RingPtr A, int bound = 2);
    const Ring& ring() const override { return *A_; }
    int bound() const { return bound_; }
    const std::vector<Element>& carrier() const { return carrier_; }
    int index(const Element& a) const;
    Element elem(int i) const { return carrier_[i]; }

    Ideal principal(const Element& a) const override;
    Ideal generated(const std::vector<Element>& gens) const override;
    Ideal zero() const override;
    Ideal sum(const Ideal& a, const Ideal& b) const override;
    Ideal product(const Ideal& a, const Ideal& b) const override;
    Ideal quotient(const Ideal& a0, const Ideal& a1) const override;
    Ideal radical(const Ideal& a) const override;
    Ideal ann(const Element& m1, const Element& m2) const override;
    bool contains(const Ideal& a, const Element& x) const override;
    bool leq(const Ideal& a, const Ideal& b) const override { return (a.members & ~b.members) == 0; }
    bool is_prime(const Ideal& a) const override;
    std::string format(const Ideal& a) const override;
    std::vector<SpecPoint> primes(long bound, bool& complete) const override;

    // Closure of a member set; throws ClosureError when it does not stabilize.
    Ideal closure(std::uint64_t gens) const;
    bool is_h_ideal(std::uint64_t s) const { return closure(s).members == s; }
    // a^t = a
    bool is_homogeneous(const Ideal& a) const;
    std::vector<Ideal> h_ideals() const;
    std::vector<Ideal> maximal() const;
    int mul_idx(int a, int b) const { return mul_[a][b]; }
    int one_idx() const { return one_; }
    int zero_idx() const { return zero_; }

private:
    std::uint64_t closure_step(std::uint64_t s, int max_shape) const;
    std::uint64_t closure_at(std::uint64_t gens, int max_shape) const;
    bool closed_above(std::uint64_t s) const;

    RingPtr A_;
    int bound_;
    std::vector<Element> carrier_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    int one_ = 0, zero_ = 0;
    std::vector<std::vector<Element>> shapes_;  // A_X for |X| <= bound
    // reach_[n][c] = {(b∘c, d) : b, d in A_n} for c in carrier^n, encoded base |carrier|
    std::vector<std::vector<std::uint64_t>> reach_;
    mutable std::map<std::uint64_t, bool> checked_;
};

// ---------------------------------------------------------------- symbolic families

// 𝒢(ℤ), 𝒢(ℤ/n) and 𝒢(ℤ[1/N]) through the ideals of the underlying ring.
class SymbolicGIdeals : public IdealTheory {
public:
    enum class Kind { Z, Zmod, ZInv };
    SymbolicGIdeals(Kind kind, long n);
    const Ring& ring() const override { return *G_; }
    std::string name() const override;
    Kind kind() const { return kind_; }
    long modulus() const { return n_; }
    // Normal form of the ideal generated by g.
    Ideal of(const mpz_class& g) const;
    // Image in the base ring of a coordinate of A_[1].
    mpz_class value(const Element& a) const;

    Ideal principal(const Element& a) const override;
    Ideal zero() const override { return of(0); }
    Ideal sum(const Ideal& a, const Ideal& b) const override;
    Ideal product(const Ideal& a, const Ideal& b) const override;
    Ideal quotient(const Ideal& a0, const Ideal& a1) const override;
    Ideal radical(const Ideal& a) const override;
    Ideal ann(const Element& m1, const Element& m2) const override;
    bool contains(const Ideal& a, const Element& x) const override;
    bool leq(const Ideal& a, const Ideal& b) const override;
    bool is_prime(const Ideal& a) const override;
    std::string format(const Ideal& a) const override;
    std::vector<SpecPoint> primes(long bound, bool& complete) const override;

private:
    Kind kind_;
    long n_;
    std::shared_ptr<GRing> G_;
};

// 𝒢(ℤ[1/N]) as the subring of 𝒢(ℚ) with denominators dividing a power of N.
class GZInvRing : public GRing {
public:
    explicit GZInvRing(long N);
    std::string name() const override { return "G(Z[1/" + std::to_string(N_) + "])"; }
    long N() const { return N_; }
    Element sample(int n, Rng& rng) const override;
    Element parse(std::string_view s, int n) const override;

protected:
    bool admissible(const std::vector<Scalar>& v) const override;

private:
    long N_;
};

// 𝔽[z^N] and 𝔽[z^Z]: every h-ideal is generated by one power of z.
class PolyMonoidIdeals : public IdealTheory {
public:
    explicit PolyMonoidIdeals(bool laurent);
    const Ring& ring() const override { return *R_; }
    const MonoidRing& monoid_ring() const { return *R_; }
    // (z^k); gen = k, or -1 for the zero ideal.
    Ideal power(long k) const;

    Ideal principal(const Element& a) const override;
    Ideal zero() const override { return power(-1); }
    Ideal sum(const Ideal& a, const Ideal& b) const override;
    Ideal product(const Ideal& a, const Ideal& b) const override;
    Ideal quotient(const Ideal& a0, const Ideal& a1) const override;
    Ideal radical(const Ideal& a) const override;
    Ideal ann(const Element& m1, const Element& m2) const override;
    bool contains(const Ideal& a, const Element& x) const override;
    bool leq(const Ideal& a, const Ideal& b) const override;
    bool is_prime(const Ideal& a) const override;
    std::string format(const Ideal& a) const override;
    std::vector<SpecPoint> primes(long bound, bool& complete) const override;

private:
    bool laurent_;
    std::shared_ptr<MonoidRing> R_;
};

// ---------------------------------------------------------------- spectrum

struct Spectrum {
    std::vector<SpecPoint> points;
    bool complete = true;
};
Spectrum spectrum(const IdealTheory& T, long bound = 50);

// Indices of the primes containing a (V) and not containing x (D).
std::vector<int> V_of(const IdealTheory& T, const Spectrum& S, const Ideal& a);
std::vector<int> D_of(const IdealTheory& T, const Spectrum& S, const Element& x);
// Closure of a set of points: the primes containing their intersection.
std::vector<int> closure_of(const IdealTheory& T, const Spectrum& S, const std::vector<int>& pts);
// Points whose closure is everything in C (for irreducible closed C).
std::vector<int> generic_points(const IdealTheory& T, const Spectrum& S, const std::vector<int>& C);
bool is_closed_point(const IdealTheory& T, const Spectrum& S, int i);
// Specialization order as a DOT graph: an edge p -> q when q is in the closure of p.
std::string spec_dot(const IdealTheory& T, const Spectrum& S);

struct LatticeReport {
    long checked = 0;
    std::optional<std::string> witness;
};
// V I V = V on all subsets of A_[1], I V I = I on all sets of points, D-set identities,
// units and nilpotents against D, and Max ⊆ spec.
LatticeReport check_spectral_identities(const FiniteIdeals& T);

// ---------------------------------------------------------------- stability

enum class Stability { Stable, Unstable, Unknown };
std::string to_string(Stability s);
struct StabilityResult {
    Stability verdict = Stability::Unknown;
    int bound = 0;
    std::optional<std::string> witness;
};
// (b, d∘c) ∈ a ⇔ (b, d∘c̄) ∈ a for c, c̄ agreeing off a set of positions where both lie in a,
// over shapes <= bound.
StabilityResult estable_check(const FiniteIdeals& T, const Ideal& a, int bound = 2);

// ---------------------------------------------------------------- localization

// Multiplicative subset check: 1 ∈ S, S∘S ⊆ S, S^t = S.
bool is_multiplicative(const FiniteIdeals& T, std::uint64_t S);

struct MonoidLocalization {
    std::shared_ptr<FiniteMonoid> M;  // S^{-1}M
    std::vector<int> image;           // m -> m/1
};
// S^{-1}M for a finite monoid; S holds monoid indices.
MonoidLocalization localize_monoid(const FiniteMonoid& M, const std::vector<int>& S);
// {s^n (s^m)^t}
std::vector<int> powers_of(const FiniteMonoid& M, int s);
// Nonzero elements outside the prime (as monoid indices), for F[M].
std::vector<int> prime_complement(const FiniteIdeals& T, const Ideal& p);
// Units of S^{-1}M with 0: the residue field of F[M] at p.
std::shared_ptr<FiniteMonoid> residue_monoid(const FiniteMonoid& Mp);

struct FractionValue : Value {
    Element num;
    Element den;  // in A_[1]
};

// S^{-1}A for an arbitrary ring, with S listed explicitly. Equality searches the witnesses in S.
class LocalizedRing : public Ring {
public:
    LocalizedRing(RingPtr A, std::vector<Element> S, std::string name);
    std::string name() const override { return name_; }
    const Ring& base() const { return *A_; }
    Element zero(int n) const override;
    Element one() const override;
    Element frac(const Element& a, const Element& s) const;
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    bool equal(const Element& a, const Element& b) const override;
    std::string key(const Element& a) const override;
    Element sample(int n, Rng& rng) const override;
    std::string format(const Element& a) const override;
    const FractionValue& fraction(const Element& a) const { return a.as<FractionValue>(); }

private:
    RingPtr A_;
    std::vector<Element> S_;
    std::string name_;
};

// s∘a for s in A_[1] and a in A_X.
Element scalar_mul(const Ring& A, const Element& s, const Element& a);
// b∘c for b in A_X and c in A_[1]^X.
Element diag_mul(const Ring& A, const Element& b, const std::vector<Element>& c);
// (u, d) for u, d in A_X.
Element pair_contract(const Ring& A, const Element& u, const Element& d);

// 𝔽[z^N] localized at z, with denominators z^k for k <= max_power.
std::shared_ptr<LocalizedRing> poly_at_z(int max_power);
struct LocalizationIso {
    long checked = 0;
    std::optional<std::string> witness;
};
// 𝔽[z^Z] -> 𝔽[z^N]_z, z^k -> z^max(k,0)/z^max(-k,0): transported operations on words of
// degree <= L over shapes <= max_shape, injectivity and surjectivity on those words.
LocalizationIso check_poly_localization(int L, int max_shape);

// 𝒢(ℤ) at (p): membership of m/n.
bool in_local_ring_at(long p, const mpq_class& q);

// ---------------------------------------------------------------- gluing

struct CoverCertificate {
    long M = 0;                       // s^M = (b∘c, d)
    Element b, d;                     // in A_Y
    std::vector<int> chart;           // c^(y) = g_{chart[y]}
};

struct GlueResult {
    bool ok = false;
    Element a;                        // glued numerator over s^M
    long M = 0;
    std::vector<Element> g, sections;  // charts and numerators after clearing
    std::optional<std::pair<int, int>> incompatible;
    std::string message;
};

// Glues sections a_i/g_i over a cover of D_s by D_{g_i}, following the surjectivity argument.
// Pairwise compatibility is searched with (g_i g_j)^n up to n <= bound.
GlueResult glue_sections(const Ring& A, const Element& s, const std::vector<Element>& g,
                         const std::vector<Element>& a, const std::function<std::optional<CoverCertificate>(
                                                            const std::vector<Element>& g)>& certify,
                         int bound = 4);
// Certificates for 𝒢(ℤ) by the extended Euclidean algorithm.
std::optional<CoverCertificate> gz_certificate(const GRing& GZ, const Element& s, const std::vector<Element>& g,
                                               long max_power = 8);
// Certificates for finite carriers by search over shapes <= shape_bound.
std::optional<CoverCertificate> finite_certificate(const FiniteIdeals& T, const Element& s,
                                                   const std::vector<Element>& g, long max_power = 8,
                                                   int shape_bound = 2);

}  // namespace genring
