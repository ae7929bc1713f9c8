#pragma once

#include <gmpxx.h>

#include <map>

#include "genring/core.hpp"

namespace genring {

// ---------------------------------------------------------------- F

struct FValue : Value {
    int point = 0;  // 0 is the zero element
    explicit FValue(int p) : point(p) {}
};

class FRing : public Ring {
public:
    std::string name() const override { return "F"; }
    Element zero(int n) const override;
    Element one() const override;
    Element point(int x, int n) const;
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    Element sample(int n, Rng& rng) const override;
    std::string format(const Element& a) const override;
    Element parse(std::string_view s, int n) const override;
    std::optional<std::vector<Element>> enumerate(int n) const override;
};

// ---------------------------------------------------------------- semirings

// Exact scalar; ninf marks the tropical zero.
struct Scalar {
    mpq_class q;
    bool ninf = false;
    Scalar() = default;
    Scalar(long v) : q(v) {}
    explicit Scalar(mpq_class v) : q(std::move(v)) {}
    static Scalar neg_inf() {
        Scalar s;
        s.ninf = true;
        return s;
    }
    bool operator==(const Scalar& o) const { return ninf == o.ninf && (ninf || q == o.q); }
};

struct Semiring {
    enum class Kind { N, Z, Q, Qnn, Zmod, Trop };
    Kind kind = Kind::Z;
    long modulus = 0;

    static Semiring naturals() { return {Kind::N, 0}; }
    static Semiring integers() { return {Kind::Z, 0}; }
    static Semiring rationals() { return {Kind::Q, 0}; }
    static Semiring nonneg_rationals() { return {Kind::Qnn, 0}; }
    static Semiring zmod(long n);
    static Semiring tropical() { return {Kind::Trop, 0}; }

    std::string name() const;
    Scalar zero() const;
    Scalar one() const;
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar normalize(Scalar a) const;
    bool valid(const Scalar& a) const;
    Scalar sample(Rng& rng) const;
    std::string format(const Scalar& a) const;
    Scalar parse(std::string_view s) const;
    // Finite carrier, listed; empty when infinite.
    std::vector<Scalar> elements() const;
};

// Checks the semiring laws on sampled triples; returns a violation description.
std::optional<std::string> check_semiring_laws(const Semiring& S, int trials, std::uint64_t seed);

std::string format_rational(const mpq_class& q);
mpq_class parse_rational(std::string_view s);

// ---------------------------------------------------------------- G(A)

struct GValue : Value {
    std::vector<Scalar> c;
    explicit GValue(std::vector<Scalar> v) : c(std::move(v)) {}
};

class GRing : public Ring {
public:
    explicit GRing(Semiring s);
    std::string name() const override;
    const Semiring& semiring() const { return S_; }
    Element zero(int n) const override;
    Element one() const override;
    Element vec(std::vector<Scalar> v) const;
    Element vec_int(const std::vector<long>& v) const;
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    Element sample(int n, Rng& rng) const override;
    std::string format(const Element& a) const override;
    Element parse(std::string_view s, int n) const override;
    std::optional<std::vector<Element>> enumerate(int n) const override;
    const std::vector<Scalar>& coords(const Element& a) const { return a.as<GValue>().c; }
    // Tautological vector with every coordinate 1.
    Element ones(int n) const;

protected:
    virtual bool admissible(const std::vector<Scalar>&) const { return true; }
    Semiring S_;
    std::string name_;
};

std::vector<Scalar> parse_gvector(const Semiring& S, std::string_view s);

// ---------------------------------------------------------------- real prime

mpq_class norm2(const std::vector<Scalar>& v);

enum class BallMembership { UnitSphere, Interior, Outside };
BallMembership ball_membership(const std::vector<Scalar>& v);
std::string to_string(BallMembership m);

// Rational vectors in the closed unit ball.
class OEtaRing : public GRing {
public:
    OEtaRing();
    std::string name() const override { return "Oeta"; }
    Element sample(int n, Rng& rng) const override;
    Element parse(std::string_view s, int n) const override;
    std::optional<std::vector<Element>> enumerate(int) const override { return std::nullopt; }
    BallMembership membership(const Element& a) const { return ball_membership(coords(a)); }

protected:
    bool admissible(const std::vector<Scalar>& v) const override;
};

// Random rational vector with norm at most 1; unit vectors appear with positive probability.
std::vector<Scalar> sample_ball_vector(int n, Rng& rng, long max_den);

// Residue field of the real prime: unit vectors and 0.
class ResidueRing : public GRing {
public:
    ResidueRing();
    std::string name() const override { return "k_eta"; }
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    Element sample(int n, Rng& rng) const override;
    std::optional<std::vector<Element>> enumerate(int) const override { return std::nullopt; }
    Element project(const Element& a) const;

protected:
    bool admissible(const std::vector<Scalar>& v) const override;
};

// ---------------------------------------------------------------- monoids

struct MElem {
    bool zero = false;
    std::vector<long> e;  // finite: {id}; free: exponent vector
    auto operator<=>(const MElem&) const = default;
    bool operator==(const MElem&) const = default;
};

class Monoid {
public:
    virtual ~Monoid() = default;
    virtual std::string name() const = 0;
    virtual MElem one() const = 0;
    MElem zero() const { return MElem{true, {}}; }
    virtual MElem mul(const MElem& a, const MElem& b) const = 0;
    virtual MElem inv(const MElem& a) const = 0;
    virtual std::string format(const MElem& a) const = 0;
    virtual MElem parse(std::string_view s) const = 0;
    virtual MElem sample(Rng& rng) const = 0;
    // Nonzero elements, when finite.
    virtual std::optional<std::vector<MElem>> elements() const { return std::nullopt; }
    bool trivial_involution_on(const std::vector<MElem>& xs) const;
};

class FiniteMonoid : public Monoid {
public:
    // names[0] is 0 and names[1] is 1; table[i][j] is the product index; inv[i] the involution.
    FiniteMonoid(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> table,
                 std::vector<int> inv);
    std::string name() const override { return name_; }
    MElem one() const override { return MElem{false, {1}}; }
    MElem mul(const MElem& a, const MElem& b) const override;
    MElem inv(const MElem& a) const override;
    std::string format(const MElem& a) const override;
    MElem parse(std::string_view s) const override;
    MElem sample(Rng& rng) const override;
    std::optional<std::vector<MElem>> elements() const override;
    int size() const { return (int)names_.size(); }
    int index(const MElem& a) const { return a.zero ? 0 : (int)a.e[0]; }
    MElem at(int i) const { return i == 0 ? zero() : MElem{false, {i}}; }
    const std::vector<std::string>& names() const { return names_; }
    // Checks associativity, commutativity, 0/1 laws and the involution laws.
    std::optional<std::string> validate() const;

    static std::shared_ptr<FiniteMonoid> signs();  // {0, 1, -1}
    static std::shared_ptr<FiniteMonoid> from_json(const std::string& text);

private:
    std::string name_;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
};

// Commutative monoid on generators with N or Z exponents, plus an adjoined 0.
class FreeMonoid : public Monoid {
public:
    struct Gen {
        std::string name;
        bool integral = false;  // Z exponents
        int involution = -1;    // index of the partner generator, or itself
    };
    explicit FreeMonoid(std::vector<Gen> gens);
    std::string name() const override;
    MElem one() const override { return MElem{false, std::vector<long>(gens_.size(), 0)}; }
    MElem mul(const MElem& a, const MElem& b) const override;
    MElem inv(const MElem& a) const override;
    std::string format(const MElem& a) const override;
    MElem parse(std::string_view s) const override;
    MElem sample(Rng& rng) const override;
    MElem gen(int i, long k = 1) const;
    long degree(const MElem& a) const;
    // Nonzero words with every |exponent| summing to at most d.
    std::vector<MElem> words_up_to(long d) const;
    const std::vector<Gen>& gens() const { return gens_; }

    static std::shared_ptr<FreeMonoid> polynomial();       // z^N
    static std::shared_ptr<FreeMonoid> laurent();          // z^Z
    static std::shared_ptr<FreeMonoid> two_sided();        // z^N (z^t)^N with z <-> z^t

private:
    std::vector<Gen> gens_;
};

struct MValue : Value {
    int x = 0;  // 0 encodes the zero element
    MElem m;
    MValue(int x_, MElem m_) : x(x_), m(std::move(m_)) {}
};

class MonoidRing : public Ring {
public:
    explicit MonoidRing(std::shared_ptr<const Monoid> M);
    std::string name() const override { return "F[" + M_->name() + "]"; }
    const Monoid& monoid() const { return *M_; }
    std::shared_ptr<const Monoid> monoid_ptr() const { return M_; }
    Element zero(int n) const override;
    Element one() const override;
    Element elem(int x, MElem m, int n) const;
    Element scalar(MElem m) const { return elem(1, std::move(m), 1); }
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    Element sample(int n, Rng& rng) const override;
    std::string format(const Element& a) const override;
    Element parse(std::string_view s, int n) const override;
    std::optional<std::vector<Element>> enumerate(int n) const override;
    int point(const Element& a) const { return a.as<MValue>().x; }
    const MElem& word(const Element& a) const { return a.as<MValue>().m; }

private:
    std::shared_ptr<const Monoid> M_;
};

// Quotient of a free monoid by the congruence generated by pairs (and their involutes).
struct CongruenceResult {
    std::shared_ptr<FiniteMonoid> quotient;  // null when the classes do not stabilize
    long bound = 0;
    std::vector<std::vector<MElem>> classes;  // representatives of degree < bound
    std::string diagnostic;
};
CongruenceResult monoid_congruence(const FreeMonoid& M, const std::vector<std::pair<MElem, MElem>>& pairs,
                                   long max_bound = 12);

// Quotient F[M] / (pairs) realized as F[M/~]; throws when the closure does not stabilize.
std::shared_ptr<MonoidRing> finite_quotient(const MonoidRing& R, const std::vector<std::pair<Element, Element>>& gens,
                                            long max_bound = 12);

// ---------------------------------------------------------------- homomorphisms

Homomorphism hom_F_to_G(const FRing& F, const GRing& G);
Homomorphism hom_G_to_G(const GRing& A, const GRing& B, std::function<Scalar(const Scalar&)> phi);
Homomorphism hom_projection(const OEtaRing& O, const ResidueRing& k);
// F[M] -> G(Z) induced by a monoid map into the multiplicative monoid of Z.
Homomorphism hom_monoid_to_G(const MonoidRing& FM, const GRing& G, std::function<Scalar(const MElem&)> psi);

// Lists the monoid maps {0,1,-1} -> {0,1,-1} (as images of -1) that respect all laws.
std::vector<int> sign_monoid_endomorphisms();

// Canonical ring handles.
std::shared_ptr<FRing> make_F();
std::shared_ptr<GRing> make_G(const Semiring& S);
std::shared_ptr<OEtaRing> make_Oeta();
std::shared_ptr<ResidueRing> make_residue_field();
std::shared_ptr<MonoidRing> make_monoid_ring(std::shared_ptr<const Monoid> M);

}  // namespace genring
