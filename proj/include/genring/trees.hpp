#pragma once

#include <map>
#include <mutex>
#include <unordered_map>

#include "genring/models.hpp"

namespace genring {

// ---------------------------------------------------------------- trees

// Rooted tree as a parent table; node 0 is the root and par[v] < v after normalization.
// lab[v] is the W-label of v below its parent (1-based, 0 when unlabeled).
// eps[v] is the orientation of an interior node (-1 on leaves and in unoriented trees).
// leaf[v] is a boundary identifier when the boundary is labeled (-1 otherwise).
struct Tree {
    std::vector<int> par, lab, eps, leaf;

    int size() const { return (int)par.size(); }
    bool empty() const { return par.empty(); }
    std::vector<std::vector<int>> children() const;
    std::vector<int> nu() const;
    // Boundary nodes in preorder.
    std::vector<int> boundary() const;
    int height() const;
    bool operator==(const Tree& o) const = default;

    static Tree point();
    static Tree star(int n);
    static Tree ladder(int n);
};

enum class TreeKind { Plain, Labeled, Oriented };

struct TreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sorts children by their encoding and renumbers in preorder; isomorphic trees become equal.
Tree normalize(const Tree& t);
// Same, but ignoring boundary identifiers when sorting.
Tree normalize_shape(const Tree& t);
Tree strip_leaf_ids(const Tree& t);
// Replaces every boundary identifier by its position in preorder.
Tree number_leaves(const Tree& t);

// Text: "0" empty, "()" point, "(()()())" star, attributes "w:K", "e0"/"e1", "#K" after "(".
std::string to_text(const Tree& t);
Tree parse_tree(std::string_view s);
// Total order used for canonical representatives: node count, then text.
bool tree_less(const Tree& a, const Tree& b);

// F|_B: drop boundary points outside keep (indexed by node) and prune.
Tree restrict_tree(const Tree& t, const std::vector<bool>& keep);
// F ⋉ G: graft[v] for every boundary node v (nullptr means the empty tree).
// New boundary ids are combine(id of v, id in G_v).
Tree graft(const Tree& f, const std::vector<const Tree*>& at, const std::function<int(int, int)>& combine);

// Transposition at b; sigma[i] lists, for the i-th child of b, the new group of each of its children.
Tree transpose_tree(const Tree& t, int b, const std::vector<std::vector<int>>& sigma);
// Whether the transposition at b is allowed for the given kind.
bool can_transpose(const Tree& t, int b, TreeKind kind);
// All transposition results at every node, deduplicated by text.
std::vector<Tree> transposition_neighbors(const Tree& t, TreeKind kind);

// Oriented reductions.
Tree one_reduce_at(const Tree& t, int a);
Tree o_reduce_at(const Tree& t, int a);
Tree reduce_oriented(const Tree& t);
bool is_one_reduced(const Tree& t);
bool is_o_reduced(const Tree& t);
// Inverse reductions within node_cap: a unary node above v, or some children of p grouped
// under a new node of the same orientation. Without unary, no move creates a node with one child.
std::vector<Tree> inverse_reductions(const Tree& t, int node_cap, bool unary = true);

struct CanonOptions {
    int slack = 1;
    std::size_t orbit_cap = 100000;
};

struct OrbitOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minimal-size members of the equivalence class of t, normalized and sorted.
// Boundary ids of t are carried along, so the result describes the class with its boundary.
std::vector<Tree> class_min_members(const Tree& t, TreeKind kind, const CanonOptions& opt = {});

// Size-decreasing moves applied greedily; for oriented trees, starts from the reduced tree.
Tree greedy_descent(const Tree& t, TreeKind kind);
// Single moves inside the class: transpositions, followed by reduction for oriented trees.
std::vector<Tree> class_moves(const Tree& t, TreeKind kind);

// Canonical representative of the (unlabeled) class: smallest minimal member.
Tree canonicalize(const Tree& t, TreeKind kind, const CanonOptions& opt = {});

// Whole equivalence class by exhaustive search. Plain and labeled classes are finite;
// oriented classes are explored through reductions, their inverses and transpositions up to node_cap.
std::vector<Tree> orbit_oracle(const Tree& t, TreeKind kind, int node_cap, std::size_t orbit_cap = 1000000);

// Partition of all trees with at most node_cap nodes into classes of the symmetric closure of
// the elementary moves (transpositions, and for oriented trees 1- and O-reductions) inside the cap.
// Maps tree text to the text of the smallest tree of its class.
std::unordered_map<std::string, std::string> closure_partition(TreeKind kind, int node_cap);

// All unlabeled rooted trees with exactly n nodes, normalized.
std::vector<Tree> all_trees(int n);
// All oriented trees with exactly n nodes (every orientation of interior nodes), normalized.
std::vector<Tree> all_oriented_trees(int n);

// ---------------------------------------------------------------- tree data

// (F1; {F̄_x}; σ) with σ encoded by shared boundary identifiers.
struct Datum {
    Tree top;
    std::vector<Tree> bot;
};

// Canonical form of a datum up to isomorphism and class equivalence of each tree.
struct CanonDatum {
    std::string key;
    Datum rep;  // boundary ids are 0..k-1 in canonical order
};

class ClassCache {
public:
    explicit ClassCache(TreeKind kind, CanonOptions opt = {}) : kind_(kind), opt_(opt) {}
    // Members of the class of t, carrying the boundary ids of t.
    std::vector<Tree> members(const Tree& t);

private:
    TreeKind kind_;
    CanonOptions opt_;
    std::mutex mu_;
    std::unordered_map<std::string, std::vector<Tree>> cache_;
};

CanonDatum canonicalize_datum(const Datum& d, ClassCache& cache);
// Canonical form up to isomorphism only (every tree is its own class).
CanonDatum canonicalize_datum_raw(const Datum& d);

// Decides equivalence of two data by a bidirectional search over single moves, without
// enumerating the classes. Returns nullopt when more than budget data are visited.
std::optional<bool> equivalent_data(const Datum& a, const Datum& b, TreeKind kind, const CanonOptions& opt,
                                    std::size_t budget);

// Map from each boundary id of the top to the bottom index holding it.
std::map<int, int> sigma_bar(const Datum& d);

struct DatumValue : Value {
    Datum rep;            // canonical up to isomorphism
    std::string raw_key;  // isomorphism key
    mutable std::once_flag once;
    mutable CanonDatum full;  // class canonical form, computed on demand
};

// Shared implementation of Δ, Δ^W and Υ.
class TreeDatumRing : public Ring {
public:
    TreeDatumRing(TreeKind kind, int W, std::string name);
    std::string name() const override { return name_; }
    TreeKind kind() const { return kind_; }
    int W() const { return W_; }
    Element zero(int n) const override;
    Element one() const override;
    std::optional<Element> mul(const Element& a, const Fibered& b) const override;
    std::optional<Element> contract(const Element& a, const Fibered& b) const override;
    std::string key(const Element& a) const override { return canonical(a).key; }
    // Isomorphic data are equal without computing class canonical forms.
    bool equal(const Element& a, const Element& b) const override;
    Element sample(int n, Rng& rng) const override;
    std::string format(const Element& a) const override;
    Element parse(std::string_view s, int n) const override;

    Element from_datum(const Datum& d, int n) const;
    const Datum& datum(const Element& a) const { return a.as<DatumValue>().rep; }
    const CanonDatum& canonical(const Element& a) const;
    // δ_X (root orientation eps for Υ); for Δ^W, the generator δ^W over [W].
    Element delta(int n, int eps = 0) const;
    Tree random_tree(int leaves, Rng& rng) const;

protected:
    TreeKind kind_;
    int W_;
    std::string name_;
    mutable ClassCache cache_;
};

std::shared_ptr<TreeDatumRing> make_Delta();
std::shared_ptr<TreeDatumRing> make_DeltaW(int W);

std::string format_datum(const Datum& d);
Datum parse_datum(std::string_view s, int n, TreeKind kind);

// π: Δ -> G(N), the bottom boundary sizes.
Element pi_to_GN(const TreeDatumRing& D, const GRing& GN, const Element& e);

// Evaluation homomorphism. family(n) is a_[n] for Δ (must satisfy a_X∘1_{f^t} = a_{f(X)});
// for Δ^W, family(0) is ignored and a_W is given by aW.
struct EvalFamily {
    const Ring* target = nullptr;
    std::function<Element(int)> family;  // Δ
    std::optional<Element> aW;             // Δ^W
};
Element eval_hom(const TreeDatumRing& D, const EvalFamily& a, const Element& e);
// a_[F] ∈ A_{∂F} in the preorder of boundary nodes.
Element eval_tree(const EvalFamily& a, const Tree& t);
// Checks the compatibility condition of a family on all partial bijections between shapes <= max_shape.
std::optional<std::string> check_family(const EvalFamily& a, int max_shape);

// Δ^[1] <-> F[z^N (z^t)^N].
struct Delta1Iso {
    std::shared_ptr<TreeDatumRing> delta;
    std::shared_ptr<MonoidRing> fm;
    Element to_monoid(const Element& e) const;
    Element from_monoid(const Element& e) const;
};
Delta1Iso delta1_iso();

struct IsoCheck {
    long checked = 0;
    long mismatches = 0;
    std::optional<std::string> witness;
};
// Exhaustive comparison of transported operations for words of degree <= L and shapes <= max_shape.
IsoCheck check_delta1_iso(const Delta1Iso& iso, int L, int max_shape);

}  // namespace genring
