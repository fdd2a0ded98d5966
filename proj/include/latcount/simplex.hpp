#ifndef LATCOUNT_SIMPLEX_HPP
#define LATCOUNT_SIMPLEX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

// Exact rational simplex in standard form:
//     maximize c'x  subject to  M x = b, x >= 0.
// Two-phase tableau method with Bland's rule, so it terminates on every
// input without any genericity assumption.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rat value = 0;
    RatVec point; // meaningful for Optimal
};

namespace detail {

class SimplexTableau {
public:
    // rows: m x n constraint matrix (rationals), rhs length m.
    SimplexTableau(std::vector<RatVec> rows, RatVec rhs)
        : rows_(std::move(rows)), rhs_(std::move(rhs)) {}

    // Bland's rule: entering = lowest-index column with positive reduced
    // cost, leaving = lowest-index basic variable among min-ratio ties.
    // Maximizes obj over the current basic feasible solution; only columns
    // below enter_limit may enter. Returns false when unbounded.
    bool run(const RatVec& obj, std::vector<std::size_t>& basis, std::size_t enter_limit) {
        std::size_t m = rows_.size();
        std::size_t n = enter_limit;
        while (true) {
            // reduced costs r_j = obj_j - y' col_j with y from the basis
            RatVec dual(m);
            for (std::size_t i = 0; i < m; ++i) dual[i] = obj[basis[i]];
            std::size_t enter = n;
            for (std::size_t j = 0; j < n; ++j) {
                Rat rc = obj[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (rows_[i][j] != 0 && dual[i] != 0) rc -= dual[i] * rows_[i][j];
                if (rc > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n) return true; // optimal
            std::size_t leave = m;
            Rat best_ratio = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rat ratio = rhs_[i] / rows_[i][enter];
                if (leave == m || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m) return false; // unbounded direction
            pivot(leave, enter);
            basis[leave] = enter;
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rat p = rows_[r][c];
        for (Rat& v : rows_[r]) v /= p;
        rhs_[r] /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            Rat f = rows_[i][c];
            for (std::size_t j = 0; j < rows_[i].size(); ++j)
                rows_[i][j] -= f * rows_[r][j];
            rhs_[i] -= f * rhs_[r];
        }
    }

    const RatVec& rhs() const { return rhs_; }
    const std::vector<RatVec>& rows() const { return rows_; }

private:
    std::vector<RatVec> rows_;
    RatVec rhs_;
};

} // namespace detail

inline LpResult solve_lp(const std::vector<RatVec>& constraints, const RatVec& b,
                         const RatVec& objective) {
    std::size_t m = constraints.size();
    std::size_t n = objective.size();

    // Phase 1 tableau: original columns plus one artificial per row.
    std::vector<RatVec> rows(m, RatVec(n + m, Rat(0)));
    RatVec rhs = b;
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = rhs[i] < 0;
        if (flip) rhs[i] = -rhs[i];
        for (std::size_t j = 0; j < n; ++j)
            rows[i][j] = flip ? -constraints[i][j] : constraints[i][j];
        rows[i][n + i] = 1;
    }

    detail::SimplexTableau tab(std::move(rows), std::move(rhs));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    RatVec phase1(n + m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    if (!tab.run(phase1, basis, n + m))
        throw InconsistencyError("phase-1 objective unbounded");

    Rat art_sum = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) art_sum += tab.rhs()[i];
    if (art_sum != 0) return LpResult{LpResult::Status::Infeasible, Rat(0), {}};

    // Drive leftover zero-level artificials out of the basis when possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.rows()[i][j] != 0) {
                tab.pivot(i, j);
                basis[i] = j;
                break;
            }
        // A fully zero row is a redundant constraint: the artificial stays
        // basic at level zero and can never re-enter with value > 0 because
        // phase 2 forbids artificial columns from entering.
    }

    // Phase 2 restricts entering columns to the original variables, so a
    // zero-level artificial left in the basis can never grow again.
    RatVec phase2(n + m, Rat(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = objective[j];
    if (!tab.run(phase2, basis, n))
        return LpResult{LpResult::Status::Unbounded, Rat(0), {}};

    LpResult out;
    out.status = LpResult::Status::Optimal;
    out.point.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.point[basis[i]] = tab.rhs()[i];
    out.value = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (objective[j] != 0) out.value += objective[j] * out.point[j];
    return out;
}

// Feasibility of { M x = b, x >= 0 }.
inline std::optional<RatVec> lp_feasible_point(const std::vector<RatVec>& constraints,
                                               const RatVec& b) {
    RatVec zero(constraints.empty() ? 0 : constraints[0].size(), Rat(0));
    LpResult r = solve_lp(constraints, b, zero);
    if (r.status == LpResult::Status::Infeasible) return std::nullopt;
    return r.point;
}

} // namespace latcount

#endif
