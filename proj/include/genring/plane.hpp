#pragma once

#include "genring/trees.hpp"

namespace genring {

// ---------------------------------------------------------------- Υ

std::shared_ptr<TreeDatumRing> make_Upsilon();

// ∇: Υ -> G(N), the number of top boundary points sent to each x.
Element nabla(const TreeDatumRing& U, const GRing& GN, const Element& e);
Homomorphism nabla_hom(const TreeDatumRing& U, const GRing& GN);

// δ over the subset of [n] marked in keep, with root orientation eps.
Element delta_on(const TreeDatumRing& U, const std::vector<bool>& keep, int eps);

// Checks δ_Y∘δ_f ≅ δ_{D(f)}, δ_[1] ≅ 1 and that mixed orientations do not collapse,
// for all maps between shapes <= max_shape.
struct DeltaRelationReport {
    long checked = 0;
    std::optional<std::string> witness;
};
DeltaRelationReport check_delta_relations(const TreeDatumRing& U, int max_shape);

// ---------------------------------------------------------------- reduced oriented trees

// ν(a)-1 over interior nodes, sorted in decreasing order.
std::vector<int> tree_partition(const Tree& t);
std::string format_partition(const std::vector<int>& p);
// In an O-reduced tree the orientation at depth d is the root orientation plus d mod 2.
bool orientation_parity(const Tree& t);

// 1-reduced trees with n leaves and no orientation, normalized.
std::vector<Tree> reduced_shapes(int leaves);
// Every 1-reduced, O-reduced oriented tree with n leaves.
std::vector<Tree> reduced_oriented_trees(int leaves);

struct OrientedClass {
    Tree canonical;
    std::vector<int> partition;  // of the canonical tree
    int orientation = -1;        // root orientation, -1 for the point
    std::vector<Tree> members;   // reduced trees in the class
};

struct OrientedTable {
    int N = 0;
    std::vector<OrientedClass> classes;
    bool complete = true;
};

OrientedTable enumerate_oriented(int N, int node_cap = 12, std::size_t orbit_cap = 100000);
// Columns: N, partition, orientation, canonical tree, class size.
std::string oriented_tsv(const OrientedTable& t);

// ---------------------------------------------------------------- ∇-fibers over [1]

enum class Verdict { Equivalent, Inequivalent, Unknown };
std::string to_string(Verdict v);

struct EquivResult {
    Verdict verdict = Verdict::Unknown;
    std::size_t states = 0;
    bool pruned = false;  // some move was cut by the budget
};

// Υ⁺ equivalence by a bidirectional search over reductions, their inverses, transpositions
// and subtree swaps between the top and a bottom. budget bounds the total node count of
// the data visited; state_cap bounds their number.
EquivResult selfadjoint_equiv(const TreeDatumRing& U, const Element& a, const Element& b, int budget,
                              std::size_t state_cap = 100000);

struct FiberClass {
    Element rep;
    int plus_class = 0;  // index of its Υ⁺ class
};

struct FiberTable {
    int N = 0;
    std::vector<FiberClass> classes;
    int plus_classes = 0;
    int unknown_pairs = 0;
    bool complete = true;
};

// Υ-classes over [1] with ∇ = N, grouped into Υ⁺ classes within budget.
FiberTable nabla_fiber(const TreeDatumRing& U, int N, int node_cap = 12, int budget = 12);
// Columns: N, class index, Υ⁺ class, datum.
std::string fiber_tsv(const TreeDatumRing& U, const FiberTable& t);

// Identifications expected at N <= 3, as pairs of data over [1].
std::vector<std::pair<std::string, std::string>> selfadjoint_fixtures();

// ---------------------------------------------------------------- n^B

// Sets over X with a weight in B on every point, points of weight 0 dropped.
struct NBValue : Value {
    std::vector<std::vector<int>> pts;  // per x, sorted monoid indices
    explicit NBValue(std::vector<std::vector<int>> p) : pts(std::move(p)) {}
};

class NBRing : public Ring {
public:
    explicit NBRing(std::shared_ptr<const FiniteMonoid> B);
    std::string name() const override { return "n^" + B_->name(); }
    const FiniteMonoid& B() const { return *B_; }
    Element zero(int n) const override;
    Element one() const override;
    Element from_points(std::vector<std::vector<int>> pts) const;
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    Element sample(int n, Rng& rng) const override;
    std::string format(const Element& a) const override;
    Element parse(std::string_view s, int n) const override;
    const std::vector<std::vector<int>>& points(const Element& a) const { return a.as<NBValue>().pts; }

private:
    std::shared_ptr<const FiniteMonoid> B_;
};

// Ψ_B: sums the weights of each fiber through weight : B -> scalars.
Homomorphism psi_B(const NBRing& R, const GRing& G, std::function<Scalar(int)> weight);
// Preimage of an integer vector for B = {0, 1, -1}: |v| points of weight sign(v).
Element sign_preimage(const NBRing& R, const std::vector<long>& v);

struct SurjectivityReport {
    long checked = 0;
    std::optional<std::string> witness;
};
// Every vector with |entries| <= bound at shapes <= max_shape is hit by its explicit preimage.
SurjectivityReport check_sign_surjectivity(const NBRing& R, const GRing& GZ, int bound, int max_shape);

// ---------------------------------------------------------------- tensor products of monoid rings

// Pushout of commutative monoids with zero M0 <- N -> M1.
struct MonoidPushout {
    std::shared_ptr<FiniteMonoid> P;
    std::vector<int> in0, in1;  // images of the elements of M0 and M1
};
MonoidPushout monoid_pushout(const FiniteMonoid& M0, const FiniteMonoid& M1, const FiniteMonoid& N,
                             const std::vector<int>& phi0, const std::vector<int>& phi1);
// The base {0, 1}, mapped into any monoid.
std::shared_ptr<FiniteMonoid> trivial_monoid();

// Monoid maps preserving 0, 1 and the involution.
std::vector<std::vector<int>> monoid_homs(const FiniteMonoid& A, const FiniteMonoid& T);

struct PushoutReport {
    long pairs = 0;  // compatible pairs of maps checked
    std::optional<std::string> witness;
};
// Universal property against every compatible pair of maps into each target.
PushoutReport check_pushout_law(const MonoidPushout& po, const FiniteMonoid& M0, const FiniteMonoid& M1,
                                const FiniteMonoid& N, const std::vector<int>& phi0, const std::vector<int>& phi1,
                                const std::vector<const FiniteMonoid*>& targets);

// F[M] -> F[P] induced by a monoid map.
Homomorphism monoid_ring_map(const MonoidRing& src, const MonoidRing& dst, std::vector<int> images);

}  // namespace genring
