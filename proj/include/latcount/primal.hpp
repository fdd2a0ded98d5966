#ifndef LATCOUNT_PRIMAL_HPP
#define LATCOUNT_PRIMAL_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/laurent.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"
#include "latcount/structure.hpp"

namespace latcount {

// Full keeps the mu-sized enumeration ranges and exponents; Starred
// shrinks both to the per-column orders nu, which is never larger.
enum class Variant { Full, Starred };

inline const char* variant_name(Variant v) {
    return v == Variant::Full ? "full" : "starred";
}

struct R1Numerator {
    std::vector<int> sigma;
    IntVec y;
    LaurentSum laurent;
    Variant variant = Variant::Starred;
};

struct R2Denominator {
    std::vector<int> sigma;
    std::vector<GeometricFactor> factors;
    Variant variant = Variant::Starred;
};

namespace detail {

inline IntVec grid_ranges(const IntMatrix& a, const Basis& b, Variant v) {
    IntVec ranges(b.complement.size());
    for (std::size_t t = 0; t < b.complement.size(); ++t)
        ranges[t] = (v == Variant::Full) ? b.mu : nu_order(b, b.complement[t], a);
    return ranges;
}

// Enumerate u over prod [0, ranges_t) keeping the residue of A_notsigma u
// and the vector y - A_notsigma u incrementally; fire the callback on every
// u whose residue matches hhat(y), passing the integral sigma-block
// solution x_sigma = A_sigma^{-1}(y - A_notsigma u).
inline void enumerate_admissible(const IntMatrix& a, const Basis& b, const QuotientGroup& g,
                                 const IntVec& y, const IntVec& ranges,
                                 const std::function<void(const IntVec& u, const IntVec& xsig)>& fn) {
    std::size_t m = b.m();
    std::size_t t_count = b.complement.size();
    IntVec target = g.hhat(y);

    std::vector<IntVec> col(t_count);
    std::vector<IntVec> colres(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
        col[t] = a.column(static_cast<std::size_t>(b.complement[t]) - 1);
        colres[t] = g.hhat(col[t]);
    }

    IntVec u(t_count, Int(0));
    IntVec w = y;                    // y - A_notsigma u
    IntVec res(g.s(), Int(0));       // hhat(A_notsigma u)

    auto leaf = [&]() {
        if (res != target) return;
        auto xsig = b.solve_integral(w);
        if (!xsig)
            throw InconsistencyError("residue filter passed but the sigma block is fractional");
        fn(u, *xsig);
    };

    auto recurse = [&](auto&& self, std::size_t t) -> void {
        if (t == t_count) {
            leaf();
            return;
        }
        for (Int v = 0;; ++v) {
            u[t] = v;
            self(self, t + 1);
            if (v + 1 >= ranges[t]) break;
            for (std::size_t i = 0; i < m; ++i) w[i] -= col[t][i];
            for (std::size_t i = 0; i < g.s(); ++i) {
                res[i] += colres[t][i];
                if (res[i] >= g.type_vector[i]) res[i] -= g.type_vector[i];
            }
        }
        // undo the ranges[t]-1 increments
        Int steps = ranges[t] - 1;
        if (steps > 0) {
            for (std::size_t i = 0; i < m; ++i) w[i] += col[t][i] * steps;
            for (std::size_t i = 0; i < g.s(); ++i) {
                res[i] -= (colres[t][i] * steps) % g.type_vector[i];
                if (res[i] < 0) res[i] += g.type_vector[i];
            }
        }
        u[t] = 0;
    };
    recurse(recurse, 0);
}

} // namespace detail

// prod over k outside sigma of (1 - (z_k z_sigma^{-A_sigma^{-1} A_k})^e)
// with e = mu (Full) or e = nu_{k,sigma} (Starred). The scaled exponent
// vectors are integral by construction; the division is checked anyway.
inline R2Denominator r2(const IntMatrix& a, const Basis& b, Variant v = Variant::Starred) {
    R2Denominator out;
    out.sigma = b.sigma;
    out.variant = v;
    std::size_t n = a.cols(), m = b.m();
    for (int k : b.complement) {
        Int e = (v == Variant::Full) ? b.mu : nu_order(b, k, a);
        IntVec w = b.adj.mul(a.column(static_cast<std::size_t>(k) - 1));
        ExpVec exp(n, Int(0));
        exp[static_cast<std::size_t>(k) - 1] = e;
        for (std::size_t j = 0; j < m; ++j) {
            Int num = e * w[j];
            if (num % b.det != 0)
                throw InconsistencyError("scaled inverse column is not integral");
            exp[static_cast<std::size_t>(b.sigma[j]) - 1] = -(num / b.det);
        }
        out.factors.push_back(GeometricFactor{std::move(exp), 1});
    }
    return out;
}

// The numerator sum over the admissible u grid: one monomial
// z_sigma^{A_sigma^{-1}(y - A_notsigma u)} z_notsigma^u per u passing the
// congruence filter hhat(y) = hhat(A_notsigma) u.
inline R1Numerator r1(const IntMatrix& a, const IntVec& y, const Basis& b,
                      Variant v = Variant::Starred) {
    R1Numerator out;
    out.sigma = b.sigma;
    out.y = y;
    out.variant = v;
    out.laurent = LaurentSum(a.cols());

    QuotientGroup g = quotient_group(b);
    IntVec ranges = detail::grid_ranges(a, b, v);
    std::size_t n = a.cols(), m = b.m();
    detail::enumerate_admissible(a, b, g, y, ranges, [&](const IntVec& u, const IntVec& xsig) {
        ExpVec exp(n, Int(0));
        for (std::size_t j = 0; j < m; ++j)
            exp[static_cast<std::size_t>(b.sigma[j]) - 1] = xsig[j];
        for (std::size_t t = 0; t < u.size(); ++t)
            exp[static_cast<std::size_t>(b.complement[t]) - 1] = u[t];
        out.laurent.add_term(exp, Rat(1));
    });
    return out;
}

// Brion sum over the chamber bases of y: sum of R1/R2. Empty when y lies
// outside the column cone, which encodes h = 0.
inline RationalTermSum h_primal(const IntMatrix& a, const IntVec& y,
                                Variant v = Variant::Starred,
                                std::uint64_t chamber_seed = kDefaultChamberSeed) {
    RationalTermSum sum;
    sum.nvars = a.cols();
    ChamberBasisSet cb = chamber_bases(a, y, chamber_seed);
    for (const Basis& b : cb.bases) {
        RationalTerm term;
        term.numerator = r1(a, y, b, v).laurent;
        term.denominator = r2(a, b, v).factors;
        sum.terms.push_back(std::move(term));
    }
    return sum;
}

// floor = floor(A_sigma^{-1} y) and xi = y - A_sigma floor: the minimal
// representative of the class of y and the lattice shift that reaches y.
inline std::pair<IntVec, IntVec> minimal_representative(const IntVec& y, const Basis& b) {
    IntVec fl = floor_vector(b.solve(y));
    IntVec xi = y;
    IntVec shift = b.a_sigma.mul(fl);
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] -= shift[i];
    return {xi, fl};
}

struct ChamberTableEntry {
    IntVec xi;
    LaurentSum r1;
};

struct ChamberTableBasis {
    Basis basis;
    QuotientGroup group;
    std::vector<ChamberTableEntry> entries; // indexed by class, entry 0 is the origin class
    std::vector<GeometricFactor> r2;
};

// Precomputed numerators R1(xi[j,sigma], sigma; .) for every class j of
// every chamber basis. Answering a query is then one class lookup plus a
// monomial shift per basis.
struct ChamberTable {
    IntMatrix a;
    Variant variant = Variant::Starred;
    IntVec y_chamber;
    std::vector<ChamberTableBasis> bases;
};

inline ChamberTable build_chamber_table(const IntMatrix& a, const ChamberBasisSet& cb,
                                        Variant v = Variant::Starred) {
    if (cb.bases.empty())
        throw DomainError("chamber table requested for an empty chamber basis set");
    ChamberTable table;
    table.a = a;
    table.variant = v;
    table.y_chamber = cb.y;
    for (const Basis& b : cb.bases) {
        ChamberTableBasis tb;
        tb.basis = b;
        tb.group = quotient_group(b);
        tb.r2 = r2(a, b, v).factors;
        Int mu = b.mu;
        for (Int j = 0; j < mu; ++j) {
            IntVec residue = tb.group.residue_of_class(j);
            IntVec member = tb.group.class_member(residue);
            auto [xi, fl] = minimal_representative(member, b);
            ChamberTableEntry e;
            e.xi = xi;
            e.r1 = r1(a, xi, b, v).laurent;
            tb.entries.push_back(std::move(e));
        }
        table.bases.push_back(std::move(tb));
    }
    return table;
}

// The table-driven answer: for each basis, locate the class of y, read the
// stored numerator, and shift it by z_sigma^{floor(A_sigma^{-1} y)}.
inline RationalTermSum h_from_table(const ChamberTable& table, const IntVec& y) {
    RationalTermSum sum;
    sum.nvars = table.a.cols();
    std::size_t n = table.a.cols();
    for (const ChamberTableBasis& tb : table.bases) {
        if (!tb.basis.nonnegative_solution(y))
            throw WrongChamberError("y is outside the closure of the table's chamber");
        auto [xi, fl] = minimal_representative(y, tb.basis);
        IntVec residue = tb.group.hhat(y);
        Int idx = tb.group.class_index(residue);
        const ChamberTableEntry& e = tb.entries[idx.convert_to<std::size_t>()];
        if (e.xi != xi)
            throw InconsistencyError("stored minimal representative disagrees with the query");
        ExpVec shift(n, Int(0));
        for (std::size_t j = 0; j < tb.basis.m(); ++j)
            shift[static_cast<std::size_t>(tb.basis.sigma[j]) - 1] = fl[j];
        RationalTerm term;
        term.numerator = e.r1.shifted(shift);
        term.denominator = tb.r2;
        sum.terms.push_back(std::move(term));
    }
    return sum;
}

} // namespace latcount

#endif
