#pragma once

// Test-side reference implementations, written without the library's arithmetic.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using i128 = __int128;

inline long long gcd(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// p/q in lowest terms, q > 0.
struct Frac {
    long long p = 0, q = 1;
};

inline Frac reduce(long long p, long long q) {
    if (q < 0) p = -p, q = -q;
    long long g = gcd(p, q);
    if (g > 1) p /= g, q /= g;
    return {p, q};
}

// q divides a power of N.
inline bool divides_power(long long q, long long N) {
    for (long long g = gcd(q, N); g > 1; g = gcd(q, N)) q /= g;
    return q == 1;
}

// Membership in G(Z[1/N]) ∩ unit ball: denominators are N-smooth and Σ (p/q)^2 <= 1.
inline bool in_AN(long long N, const std::vector<Frac>& v) {
    i128 L = 1;
    for (auto& f : v) {
        if (!divides_power(f.q, N)) return false;
        L = L / gcd((long long)(L % f.q), f.q) * f.q;
    }
    i128 sum = 0;
    for (auto& f : v) {
        i128 t = (i128)f.p * (L / f.q);
        sum += t * t;
    }
    return sum <= L * L;
}

struct ANCase {
    long long N;
    std::vector<Frac> v;
};

// Deterministic fixture: square-free N, denominators built from small primes so that
// roughly half the cases fail the denominator test and the rest straddle the unit sphere.
inline std::vector<ANCase> an_fixture(int count, std::uint64_t seed) {
    const long long levels[] = {2, 3, 5, 6, 10, 15, 30, 7, 42, 210};
    const long long primes[] = {2, 3, 5, 7, 11};
    std::mt19937_64 rng(seed);
    std::vector<ANCase> out;
    for (int i = 0; i < count; ++i) {
        ANCase c;
        c.N = levels[rng() % 10];
        int n = 1 + rng() % 3;
        for (int k = 0; k < n; ++k) {
            long long q = 1;
            int factors = rng() % 4;
            for (int j = 0; j < factors; ++j) q *= primes[rng() % 5];
            long long p = (long long)(rng() % (2 * q + 1)) - q;
            if (rng() % 3 == 0) p = p / 2;
            c.v.push_back(reduce(p, q));
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace oracle
