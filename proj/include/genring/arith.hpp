#pragma once

#include "genring/ideals.hpp"

namespace genring {

bool is_squarefree(long N);
// Prime factors of |n| in increasing order.
std::vector<mpz_class> prime_factors(mpz_class n);
// p-adic valuation of a nonzero rational.
long valuation(const mpq_class& q, const mpz_class& p);
// Square-free N in [2, bound].
std::vector<long> squarefree_upto(long bound);

// ---------------------------------------------------------------- A_N

// 𝒢(ℤ[1/N]) ∩ 𝒪_η: denominators dividing a power of N and Σ a_x² <= 1.
class ANRing : public GZInvRing {
public:
    explicit ANRing(long N);
    std::string name() const override { return "A_" + std::to_string(N()); }
    Element sample(int n, Rng& rng) const override;
    Element parse(std::string_view s, int n) const override;
    // a in A_[1] with a∘b = 1 for some b in A_[1].
    bool is_invertible(const Element& a) const;
    // The maximal h-ideal: Σ a_x² < 1.
    bool in_maximal_ideal(const Element& a) const;

protected:
    bool admissible(const std::vector<Scalar>& v) const override;
};

// Throws std::invalid_argument when N is not square-free.
bool an_membership(long N, const std::vector<mpq_class>& v);

// Members of A_N at shape [1] for every N in the tower, among p/q with |p|, q <= bound.
std::vector<mpq_class> tower_global_sections(const std::vector<long>& tower, long bound);

// ---------------------------------------------------------------- divisors

struct NormValue {
    bool exact = true;
    mpq_class q;      // when exact
    double approx = 0;  // otherwise
};

// Σ ν_p [p] + ν_η [η]. The archimedean part is the multiplicand r with ν_η = -log r, or an
// approximate real ν_η when it does not come from ℚ*.
struct Divisor {
    std::map<mpz_class, long> nu;  // zero entries are dropped
    mpq_class r = 1;
    std::optional<double> approx_nu_eta;

    bool exact() const { return !approx_nu_eta; }
    bool is_zero() const { return nu.empty() && exact() && r == 1; }
    long at(const mpz_class& p) const;
    Divisor operator+(const Divisor& o) const;
    Divisor operator-() const;
    Divisor operator-(const Divisor& o) const { return *this + (-o); }
    bool operator==(const Divisor& o) const;
    // Components >= 0 and ν_η >= 0.
    bool effective() const;
};

Divisor prime_divisor(const mpz_class& p);
// Archimedean divisor with real ν_η.
Divisor eta_divisor(double nu_eta);
// Throws std::invalid_argument for f = 0.
Divisor div(const mpq_class& f);
NormValue norm_map(const Divisor& D);
std::string format_divisor(const Divisor& D);
// place<TAB>valuation rows, η last.
std::string divisor_tsv(const Divisor& D);

// Divisor of level N: components at p | N and the archimedean multiplicand.
struct LevelDivisor {
    long N = 2;
    std::map<mpz_class, long> nu;
    mpq_class r = 1;

    LevelDivisor operator+(const LevelDivisor& o) const;
    LevelDivisor operator-() const;
    LevelDivisor operator-(const LevelDivisor& o) const { return *this + (-o); }
    bool operator==(const LevelDivisor& o) const;
    bool effective() const;
};

// Errors for a non square-free level or an approximate archimedean part.
LevelDivisor level_restrict(const Divisor& D, long N);
// Pushforward to level M, N | M: new primes q take ν_q of the archimedean multiplicand.
LevelDivisor pro_push(const LevelDivisor& D, long M);
std::string format_level(const LevelDivisor& D);

struct ProDivisorReport {
    std::vector<long> levels;
    bool monotone = true;
    bool bounded = true;
    bool stabilized = true;  // last two levels agree on every shared component
    std::optional<LevelDivisor> bound_certificate;  // d at the first level
    Divisor limit;
    std::optional<std::string> witness;
};
// The levels must form a divisibility chain of square-free integers; throws std::invalid_argument
// for an inconsistent tower. Boundedness is certified by an explicit d at the first level.
ProDivisorReport pro_divisor_checks(const std::vector<LevelDivisor>& seq);
// {"levels":[...],"components":{"2":[...],...,"eta":["12/5",...]}}, null where p does not divide N.
std::vector<LevelDivisor> parse_tower_json(const std::string& text);
std::string pro_report_json(const ProDivisorReport& r);

// ---------------------------------------------------------------- P^1 map data

struct P1Chart {
    std::string source;  // F[z^N], F[z^Z], F[(z^-1)^N]
    mpz_class level;     // target G(Z[1/level])
    std::string generator;
    mpq_class image;
};

struct P1MapData {
    mpq_class f;
    mpz_class N0 = 1, Ninf = 1;
    bool constant = false;  // f = ±1: F[z^Z] -> F[±1]
    std::vector<P1Chart> charts;
};

P1MapData p1_map(const mpq_class& f);
// The data of I∘f: z and z^-1 interchanged.
P1MapData invert(const P1MapData& d);
bool operator==(const P1MapData& a, const P1MapData& b);
// Each chart image lies in its target and the images agree on the overlap.
bool chart_consistent(const P1MapData& d);

}  // namespace genring
