#ifndef LATCOUNT_TESTS_HELPERS_HPP
#define LATCOUNT_TESTS_HELPERS_HPP

#include <vector>

#include "latcount/latcount.hpp"

namespace latcount::testing {

inline IntVec iv(std::initializer_list<long long> xs) {
    IntVec v;
    for (long long x : xs) v.push_back(Int(x));
    return v;
}

inline RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }

// Random rational with small numerator/denominator, never zero.
inline Rat random_rat(Rng& rng) {
    Int p = rng.uniform(1, 9);
    Int q = rng.uniform(2, 11);
    Rat r = make_rat(p, q);
    if (rng.uniform(0, 3) == 0) r = -r;
    return r;
}

// A point where no denominator factor of the sum vanishes.
inline RatVec random_admissible_z(const RationalTermSum& sum, Rng& rng, int tries = 64) {
    for (int t = 0; t < tries; ++t) {
        RatVec z(sum.nvars);
        for (Rat& zk : z) zk = random_rat(rng);
        try {
            evaluate_at(sum, z);
            return z;
        } catch (const PoleError&) {
            continue;
        }
    }
    throw PoleError("no admissible evaluation point found");
}

// Random instance in the desk-scale family: m rows, up to m+3 columns,
// entries in [0,4], maximal rank, bounded.
inline IntMatrix random_bounded_instance(Rng& rng, int max_m = 3) {
    while (true) {
        int m = static_cast<int>(rng.uniform(1, max_m));
        int n = static_cast<int>(rng.uniform(m, m + 3));
        IntMatrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = rng.uniform(0, 4);
        if (rank(a) < static_cast<std::size_t>(m)) continue;
        if (!is_bounded(a)) continue;
        return a;
    }
}

// Random y = A x with small x, capped sup-norm, so y always lies in the
// column cone.
inline IntVec random_in_cone_y(const IntMatrix& a, Rng& rng, long long cap = 12) {
    while (true) {
        IntVec x(a.cols());
        for (Int& xi : x) xi = rng.uniform(0, 3);
        IntVec y = a.mul(x);
        bool ok = true;
        for (const Int& yi : y)
            if (yi > cap) ok = false;
        if (ok) return y;
    }
}

} // namespace latcount::testing

#endif
