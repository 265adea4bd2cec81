#pragma once

#include <cstdint>
#include <vector>

#include "jetform/jets.hpp"

namespace jetform::testing {

// Deterministic splitmix64; the test suites must not depend on libstdc++
// distribution internals.
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
    int int_in(int lo, int hi) { return lo + int(below(std::uint64_t(hi - lo + 1))); }

    Rational small_rational() {
        int num = int_in(-3, 3);
        int den = int_in(1, 2);
        return rat(num, den);
    }

    Rational nonzero_rational() {
        while (true) {
            Rational r = small_rational();
            if (!is_zero(r)) return r;
        }
    }
};

inline Series random_series(TestRng& rng, int nvars, int order, int terms, int min_degree = 0) {
    Series s(nvars, order);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(size_t(nvars), 0);
        int deg = rng.int_in(min_degree, order);
        for (int d = 0; d < deg; ++d) e[rng.below(std::uint64_t(nvars))]++;
        s += Series::monomial(nvars, order, e, rng.small_rational());
    }
    return s;
}

inline Series random_unit(TestRng& rng, int nvars, int order, int terms) {
    return random_series(rng, nvars, order, terms, 1) + rng.nonzero_rational();
}

// Random origin-preserving map with invertible linear part and a few
// higher-order terms.
inline PointMap random_diffeo(TestRng& rng, int nvars, int order, int extra_terms = 3) {
    QMatrix lin(nvars, nvars);
    do {
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < nvars; ++j) lin.at(i, j) = rng.small_rational();
    } while (!is_invertible(lin));
    std::vector<Series> comps;
    for (int i = 0; i < nvars; ++i) {
        Series c(nvars, order);
        for (int j = 0; j < nvars; ++j) c += lin.at(i, j) * Series::variable(nvars, order, j);
        c += random_series(rng, nvars, order, extra_terms, 2);
        comps.push_back(std::move(c));
    }
    return PointMap(nvars, std::move(comps));
}

}  // namespace jetform::testing
