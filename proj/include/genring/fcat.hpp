#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace genring {

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Partial map [src] -> [tgt]. table[x-1] is f(x), or 0 when x is outside D(f).
struct PartialMap {
    int src = 0;
    int tgt = 0;
    std::vector<int> table;

    PartialMap() = default;
    PartialMap(int m, int n);
    PartialMap(int m, int n, std::vector<int> t);

    int operator()(int x) const { return table[x - 1]; }
    bool defined(int x) const { return table[x - 1] != 0; }
    void set(int x, int y) { table[x - 1] = y; }

    int domain_size() const;
    std::vector<int> domain() const;
    std::vector<int> image() const;
    bool injective() const;
    bool total() const;

    bool operator==(const PartialMap&) const = default;
    auto operator<=>(const PartialMap&) const = default;
};

PartialMap identity(int n);
// c_X : X -> [1], every point to 1.
PartialMap constant_map(int n);
// x -> y on a single point of [n].
PartialMap point_inclusion(int x, int n);

PartialMap compose(const PartialMap& g, const PartialMap& f);
PartialMap transpose(const PartialMap& f);

struct Fiber {
    int y = 0;
    std::vector<int> xs;  // ascending; xs[i] is identified with i+1
};

// One entry per y in f(X), ascending in y.
std::vector<Fiber> fiber_shapes(const PartialMap& f);

// Position (1-based) of x inside its fiber.
int fiber_index(const PartialMap& f, int x);

struct PullbackSquare {
    std::vector<std::pair<int, int>> apex;  // (z, x), lexicographic
    PartialMap ft;                          // apex -> Z
    PartialMap gt;                          // apex -> X
};

// Cartesian square of Z -g-> Y <-f- X.
PullbackSquare pullback(const PartialMap& g, const PartialMap& f);

bool leq(const PartialMap& f, const PartialMap& g);
bool has_quotient(const PartialMap& h, const PartialMap& f);
// Minimal q with h <= q o f; throws ShapeError("no quotient").
PartialMap quotient(const PartialMap& h, const PartialMap& f);

// f restricted to sub = sorted subset of [src]; result is [|sub|] -> tgt.
PartialMap restrict_source(const PartialMap& f, const std::vector<int>& sub);

std::string to_string(const PartialMap& f);
PartialMap parse_pmap(std::string_view s);

}  // namespace genring
