#ifndef LATCOUNT_ORACLE_HPP
#define LATCOUNT_ORACLE_HPP

#include <vector>

#include "latcount/errors.hpp"
#include "latcount/laurent.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"
#include "latcount/simplex.hpp"
#include "latcount/structure.hpp"

namespace latcount {

namespace detail {

// max x_k over { A x = y, x >= 0 }, or nullopt when infeasible.
inline std::optional<Rat> coordinate_max(const IntMatrix& a, const IntVec& y, std::size_t k) {
    std::size_t m = a.rows(), n = a.cols();
    std::vector<RatVec> rows(m, RatVec(n));
    RatVec rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        rhs[i] = Rat(y[i]);
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = Rat(a.at(i, j));
    }
    RatVec obj(n, Rat(0));
    obj[k] = 1;
    LpResult r = solve_lp(rows, rhs, obj);
    if (r.status == LpResult::Status::Infeasible) return std::nullopt;
    if (r.status == LpResult::Status::Unbounded)
        throw UnboundedOracleError("coordinate is unbounded over the fiber polyhedron");
    return r.value;
}

} // namespace detail

// Exhaustive enumeration of the nonnegative integer solutions of A x = y,
// in lexicographic order. Per-coordinate caps come from exact rational
// maximization; the recursion prunes on the running residual.
inline std::vector<IntVec> enumerate_points(const IntMatrix& a, const IntVec& y) {
    if (!is_bounded(a))
        throw UnboundedOracleError("oracle enumeration requires a bounded instance");
    std::size_t m = a.rows(), n = a.cols();
    if (y.size() != m) throw DimensionError("y arity mismatch");

    std::vector<Int> cap(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto mx = detail::coordinate_max(a, y, k);
        if (!mx) return {};
        cap[k] = floor_rat(*mx);
        if (cap[k] < 0) return {};
    }

    // nonneg_tail[k]: every column from k on is componentwise >= 0, which
    // makes the residual monotone and enables cheap per-level caps.
    std::vector<bool> nonneg_tail(n + 1, true);
    for (std::size_t k = n; k-- > 0;) {
        bool col_ok = true;
        for (std::size_t i = 0; i < m; ++i)
            if (a.at(i, k) < 0) {
                col_ok = false;
                break;
            }
        nonneg_tail[k] = nonneg_tail[k + 1] && col_ok;
    }

    std::vector<IntVec> out;
    IntVec x(n, Int(0));
    IntVec residual = y;

    auto recurse = [&](auto&& self, std::size_t k) -> void {
        if (k == n) {
            for (const Int& ri : residual)
                if (ri != 0) return;
            out.push_back(x);
            return;
        }
        Int hi = cap[k];
        if (nonneg_tail[k]) {
            for (std::size_t i = 0; i < m; ++i) {
                if (residual[i] < 0) return;
                const Int& aik = a.at(i, k);
                if (aik > 0) {
                    Int lim = residual[i] / aik;
                    if (lim < hi) hi = lim;
                }
            }
        }
        for (Int v = 0; v <= hi; ++v) {
            x[k] = v;
            if (v > 0)
                for (std::size_t i = 0; i < m; ++i) residual[i] -= a.at(i, k);
            self(self, k + 1);
        }
        for (std::size_t i = 0; i < m; ++i) residual[i] += a.at(i, k) * x[k];
        x[k] = 0;
    };
    recurse(recurse, 0);
    return out;
}

// Sum of z^x over the enumerated points.
inline Rat h_brute(const IntMatrix& a, const IntVec& y, const RatVec& z) {
    if (z.size() != a.cols()) throw DimensionError("z arity mismatch");
    Rat acc = 0;
    for (const IntVec& x : enumerate_points(a, y)) {
        Rat t = 1;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k] != 0) t *= pow_rat(z[k], x[k]);
        acc += t;
    }
    return acc;
}

// The counting function as a finite Laurent polynomial (all exponents
// nonnegative for points of the fiber).
inline LaurentSum h_brute_symbolic(const IntMatrix& a, const IntVec& y) {
    LaurentSum s(a.cols());
    for (const IntVec& x : enumerate_points(a, y)) s.add_term(x, Rat(1));
    return s;
}

} // namespace latcount

#endif
