#ifndef LATCOUNT_COUNT_HPP
#define LATCOUNT_COUNT_HPP

#include <cstdint>

#include "latcount/dual.hpp"
#include "latcount/errors.hpp"
#include "latcount/laurent.hpp"
#include "latcount/numeric.hpp"
#include "latcount/primal.hpp"
#include "latcount/univariate.hpp"

namespace latcount {

inline constexpr std::uint64_t kDefaultDirectionSeed = 0x3c0deu;

// Draw a generic direction c in [1,997]^n, retrying on degeneracy, and take
// the exact limit at t = 1. The result is the lattice-point count whenever
// the sum came from a bounded instance.
inline Int count_from_sum(const RationalTermSum& sum,
                          std::uint64_t seed = kDefaultDirectionSeed) {
    if (sum.terms.empty()) return 0;
    Rng rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        IntVec c(sum.nvars);
        for (Int& ck : c) ck = rng.uniform(1, 997);
        try {
            Rat v = limit_at_one(specialize_univariate(sum, c));
            if (denominator(v) != 1 || numerator(v) < 0)
                throw InconsistencyError("limit is not a nonnegative integer: " + format_rat(v));
            return numerator(v);
        } catch (const DegenerateDirectionError&) {
            continue;
        }
    }
    throw DegenerateDirectionError("no admissible specialization direction after 32 attempts");
}

inline Int count_primal(const IntMatrix& a, const IntVec& y, Variant v = Variant::Starred,
                        std::uint64_t direction_seed = kDefaultDirectionSeed,
                        std::uint64_t chamber_seed = kDefaultChamberSeed) {
    return count_from_sum(h_primal(a, y, v, chamber_seed), direction_seed);
}

inline Int count_dual(const IntMatrix& a, const IntVec& y,
                      std::uint64_t budget = kDefaultDualBudget,
                      std::uint64_t direction_seed = kDefaultDirectionSeed) {
    return count_from_sum(h_dual(a, y, budget), direction_seed);
}

inline Int count_from_table(const ChamberTable& table, const IntVec& y,
                            std::uint64_t direction_seed = kDefaultDirectionSeed) {
    return count_from_sum(h_from_table(table, y), direction_seed);
}

// The non-certified numeric shortcut: evaluate at z_k = (1-eps)^{c_k}
// exactly and round to the nearest integer.
inline Int count_approx(const RationalTermSum& sum, const Rat& eps,
                        std::uint64_t seed = kDefaultDirectionSeed) {
    if (sum.terms.empty()) return 0;
    if (eps <= 0 || eps >= 1) throw DomainError("--approx needs 0 < eps < 1");
    Rng rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        RatVec z(sum.nvars);
        Rat base = Rat(1) - eps;
        for (Rat& zk : z) zk = pow_rat(base, Int(rng.uniform(1, 997)));
        try {
            Rat v = evaluate_at(sum, z);
            return floor_rat(v + Rat(1, 2));
        } catch (const PoleError&) {
            continue;
        }
    }
    throw PoleError("no pole-free approximate evaluation point after 32 attempts");
}

} // namespace latcount

#endif
