#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "genring/fcat.hpp"

namespace genring {

using Rng = std::mt19937_64;

class Ring;

struct RingMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model payloads derive from Value; elements share them immutably.
struct Value {
    virtual ~Value() = default;
};

struct Element {
    const Ring* ring = nullptr;
    int shape = 0;
    std::shared_ptr<const Value> v;

    template <class T>
    const T& as() const {
        return static_cast<const T&>(*v);
    }
};

// Element of A_f: one component per fiber of f, in ascending order of y.
struct Fibered {
    PartialMap map;
    std::vector<Element> comps;
};

class Ring {
public:
    virtual ~Ring() = default;

    virtual std::string name() const = 0;
    virtual Element zero(int n) const = 0;
    virtual Element one() const = 0;
    // a in A_Y, b in A_f with f : X -> Y; result in A_X.
    virtual std::optional<Element> mul(const Element& a, const Fibered& b) const = 0;
    // a in A_X, b in A_f with f : X -> Y; result in A_Y.
    virtual std::optional<Element> contract(const Element& a, const Fibered& b) const = 0;
    // Canonical text; equal elements have equal keys.
    virtual std::string key(const Element& a) const { return format(a); }
    virtual bool equal(const Element& a, const Element& b) const;
    virtual Element sample(int n, Rng& rng) const = 0;
    virtual std::string format(const Element& a) const = 0;
    virtual Element parse(std::string_view s, int n) const;
    // All of A_n when finite and small enough.
    virtual std::optional<std::vector<Element>> enumerate(int n) const;
    virtual bool is_zero(const Element& a) const { return equal(a, zero(a.shape)); }

    Element make(int n, std::shared_ptr<const Value> v) const { return Element{this, n, std::move(v)}; }
};

using RingPtr = std::shared_ptr<const Ring>;

void check_same_ring(const Ring* r, const Element& a);
void check_same_ring(const Ring* r, const Fibered& b);

// Element of A_X seen in A_{c_X}, and back.
Fibered as_fibered(const Element& a);
Element from_fibered(const Ring& R, const Fibered& b, int n);

// 1_f for f a partial map: unit on every fiber of size one; requires f injective.
Fibered unit_fibered(const Ring& R, const PartialMap& f);
Fibered zero_fibered(const Ring& R, const PartialMap& f);
Fibered sample_fibered(const Ring& R, const PartialMap& f, Rng& rng);
// Family (a_x) in (A_[1])^X as an element of A_{id_X}.
Fibered diagonal_family(const std::vector<Element>& a);

// Index into b.comps of the fiber over y, or -1 when y is not in the image.
int component_index(const PartialMap& f, int y);
const Element* component(const Fibered& b, int y);

// b|_z : restriction of b over f : X -> Y to the fiber of g over z.
Fibered restrict_to(const Fibered& b, const PartialMap& g, int z);

// Extended multiplication A_g x A_f -> A_{g o f}.
std::optional<Fibered> mul_ext(const Ring& R, const Fibered& a, const Fibered& b);
// Extended contraction A_{g o f} x A_f -> A_g.
std::optional<Fibered> contract_ext(const Ring& R, const Fibered& c, const Fibered& b, const PartialMap& g);

bool equal_fibered(const Ring& R, const Fibered& a, const Fibered& b);
std::string format_fibered(const Ring& R, const Fibered& a);

// Lifts along a cartesian square Z -g-> Y <-f- X.
// c over f  ->  c~ over f~ : apex -> Z, with c~^(z) = c^(g(z)).
Fibered lift_along(const PullbackSquare& p, const Fibered& c, const PartialMap& g, bool over_ft);

// a^t = (1, a) for a in A_[1].
std::optional<Element> transpose_elt(const Ring& R, const Element& a);
// f_A(a) = (a, 1_f) for a partial bijection f.
std::optional<Element> functor_map(const Ring& R, const Element& a, const PartialMap& f);

// (a,b) o (c,d) via the one-contraction formula; a,b in A_X, c,d in A_Y.
std::optional<Element> derived_mul(const Ring& R, const Element& a, const Element& b, const Element& c,
                                   const Element& d);
// ((a,b),(c,d)) via the one-contraction formula.
std::optional<Element> derived_contract(const Ring& R, const Element& a, const Element& b, const Element& c,
                                        const Element& d);

// Random partial map [m] -> [n], each point undefined with probability p_undef.
PartialMap random_map(int m, int n, Rng& rng, double p_undef = 0.2);
PartialMap random_partial_bijection(int m, int n, Rng& rng);

struct AxiomResult {
    std::string axiom;
    int trials = 0;
    int passes = 0;
    int vacuous = 0;
    std::optional<std::string> counterexample;
    bool passed() const { return passes == trials; }
};

struct AxiomReport {
    std::string ring;
    std::vector<AxiomResult> results;
    const AxiomResult* find(std::string_view axiom) const;
};

struct HarnessOptions {
    int trials = 500;
    int max_shape = 4;
    std::uint64_t seed = 1;
    bool self_adjoint = true;
    bool derived = true;
};

// Axiom names, in report order.
const std::vector<std::string>& axiom_names();

AxiomReport check_axioms(const Ring& R, const HarnessOptions& opt);
std::string report_json(const AxiomReport& r);
std::string report_tsv(const AxiomReport& r);

// Per-shape element map between two rings.
struct Homomorphism {
    const Ring* source = nullptr;
    const Ring* target = nullptr;
    std::function<Element(const Element&)> map;
    Fibered apply(const Fibered& b) const;
};

// Checks multiplication, contraction and unit preservation on random data.
AxiomResult check_homomorphism(const Homomorphism& h, int trials, int max_shape, std::uint64_t seed);

}  // namespace genring
