#ifndef LATCOUNT_STRUCTURE_HPP
#define LATCOUNT_STRUCTURE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"
#include "latcount/simplex.hpp"

namespace latcount {

inline constexpr std::uint64_t kDefaultChamberSeed = 0x1a7c0u;
inline constexpr std::uint64_t kDefaultRegularSeed = 0x2e9d1u;

// An m-subset of column indices whose submatrix is invertible, together
// with the exact data every formula keeps reusing: signed determinant,
// adjugate (so mu * inverse is integer by construction) and the exact
// rational inverse.
struct Basis {
    std::vector<int> sigma;      // 1-based, strictly increasing
    std::vector<int> complement; // 1-based, strictly increasing
    IntMatrix a_sigma;
    Int det; // signed
    Int mu;  // |det|
    IntMatrix adj; // adj * a_sigma = det * I
    RatMatrix inv;

    std::size_t m() const { return sigma.size(); }

    // A_sigma^{-1} v as exact rationals.
    RatVec solve(const IntVec& v) const {
        IntVec w = adj.mul(v);
        RatVec out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = make_rat(w[i], det);
        return out;
    }

    // A_sigma^{-1} v when integral, std::nullopt otherwise.
    std::optional<IntVec> solve_integral(const IntVec& v) const {
        IntVec w = adj.mul(v);
        IntVec out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] % det != 0) return std::nullopt;
            out[i] = w[i] / det;
        }
        return out;
    }

    bool nonnegative_solution(const IntVec& v) const {
        IntVec w = adj.mul(v);
        for (const Int& wi : w) {
            if (det > 0 ? wi < 0 : wi > 0) return false;
        }
        return true;
    }
};

// All size-m column subsets with nonzero determinant, in lexicographic
// order of sigma.
inline std::vector<Basis> enumerate_bases(const IntMatrix& a) {
    std::size_t m = a.rows(), n = a.cols();
    if (n < m || rank(a) < m)
        throw RankError("matrix does not have maximal row rank");

    std::vector<Basis> out;
    std::vector<int> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = static_cast<int>(i) + 1;

    auto emit = [&]() {
        IntMatrix sub = a.select_columns(pick);
        Int det = determinant(sub);
        if (det == 0) return;
        Basis b;
        b.sigma = pick;
        for (int k = 1; k <= static_cast<int>(n); ++k)
            if (std::find(pick.begin(), pick.end(), k) == pick.end())
                b.complement.push_back(k);
        b.a_sigma = sub;
        b.det = det;
        b.mu = det < 0 ? Int(-det) : det;
        b.adj = adjugate(sub);
        b.inv = inverse_rational(sub);
        out.push_back(std::move(b));
    };

    // next k-combination of {1..n}
    while (true) {
        emit();
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == static_cast<int>(n - m + i)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// Z^m modulo the lattice spanned by the basis columns, presented through
// the Smith form U * A_sigma * V = diag(d): the residue of y is (U y) mod d
// restricted to the invariant factors d_i > 1.
struct QuotientGroup {
    std::vector<int> sigma;
    SmithDecomposition snf;
    IntVec type_vector;  // invariant factors > 1
    IntMatrix projector; // the matching rows of U (s x m)
    IntMatrix u_inverse; // integer inverse of U
    std::vector<std::size_t> kept; // row indices of the kept invariants

    std::size_t s() const { return type_vector.size(); }

    Int order() const {
        Int p = 1;
        for (const Int& t : type_vector) p *= t;
        return p;
    }

    // The epimorphism residue of y, componentwise mod type_vector.
    IntVec hhat(const IntVec& y) const {
        IntVec r = projector.mul(y);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] %= type_vector[i];
            if (r[i] < 0) r[i] += type_vector[i];
        }
        return r;
    }

    bool is_zero(const IntVec& residue) const {
        for (const Int& v : residue)
            if (v != 0) return false;
        return true;
    }

    // Mixed-radix rank of a residue vector; the class of the origin gets 0.
    Int class_index(const IntVec& residue) const {
        Int idx = 0, radix = 1;
        for (std::size_t i = 0; i < residue.size(); ++i) {
            idx += residue[i] * radix;
            radix *= type_vector[i];
        }
        return idx;
    }

    IntVec residue_of_class(Int idx) const {
        IntVec r(s());
        for (std::size_t i = 0; i < s(); ++i) {
            r[i] = idx % type_vector[i];
            idx /= type_vector[i];
        }
        return r;
    }

    // Some integer vector with the requested residue: U^{-1} applied to the
    // residue padded with zeros on the trivial invariant positions.
    IntVec class_member(const IntVec& residue) const {
        IntVec padded(u_inverse.cols(), Int(0));
        for (std::size_t i = 0; i < kept.size(); ++i) padded[kept[i]] = residue[i];
        return u_inverse.mul(padded);
    }
};

inline QuotientGroup quotient_group(const Basis& b) {
    QuotientGroup g;
    g.sigma = b.sigma;
    g.snf = smith_normal_form(b.a_sigma);
    std::size_t m = b.m();
    for (std::size_t i = 0; i < m; ++i)
        if (g.snf.d[i] > 1) {
            g.kept.push_back(i);
            g.type_vector.push_back(g.snf.d[i]);
        }
    g.projector = IntMatrix(g.kept.size(), m);
    for (std::size_t r = 0; r < g.kept.size(); ++r)
        for (std::size_t j = 0; j < m; ++j)
            g.projector.at(r, j) = g.snf.U.at(g.kept[r], j);
    Int udet = determinant(g.snf.U);
    IntMatrix uadj = adjugate(g.snf.U);
    g.u_inverse = IntMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            // udet is +-1, so the division is exact
            g.u_inverse.at(i, j) = uadj.at(i, j) / udet;
        }
    return g;
}

// Indicator that A_sigma^{-1} y is integral.
inline int delta(const Basis& b, const IntVec& y) {
    return b.solve_integral(y) ? 1 : 0;
}

// Order of a residue vector in Z^s mod eta: the least nu with
// nu * r = 0 mod eta.
inline Int residue_order(const IntVec& r, const IntVec& eta) {
    Int nu = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        Int ri = r[i] % eta[i];
        if (ri < 0) ri += eta[i];
        Int oi = eta[i] / gcd(eta[i], ri == 0 ? eta[i] : ri);
        nu = lcm(nu, oi);
    }
    return nu;
}

// Least positive integer nu with nu * A_sigma^{-1} A_k integral; always a
// divisor of mu.
inline Int nu_order(const Basis& b, int k, const IntMatrix& a) {
    for (int j : b.sigma)
        if (j == k) throw DimensionError("nu order requested for a column inside sigma");
    IntVec w = b.adj.mul(a.column(static_cast<std::size_t>(k) - 1));
    Int nu = 1;
    for (const Int& wi : w) {
        Int g = gcd(b.mu, wi < 0 ? Int(-wi) : wi); // gcd(mu, 0) = mu
        nu = lcm(nu, b.mu / g);
    }
    return nu;
}

// The bases whose cone contains the chamber picked by lexicographic
// perturbation of y toward the interior of the column cone: sigma is kept
// iff for every row j the first nonzero of
//   [A_sigma^{-1} y]_j, [A_sigma^{-1} g_1]_j, ..., [A_sigma^{-1} g_m]_j
// is positive, where g_1 = A * 1 and the remaining g_i are A times random
// positive integer vectors.
struct ChamberBasisSet {
    IntVec y;
    std::vector<Basis> bases;
    std::vector<IntVec> perturbation_certificate;
};

inline ChamberBasisSet chamber_bases(const IntMatrix& a, const IntVec& y,
                                     const std::vector<Basis>& all_bases,
                                     std::uint64_t seed = kDefaultChamberSeed) {
    std::size_t m = a.rows(), n = a.cols();
    if (y.size() != m) throw DimensionError("y arity mismatch");

    Rng rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        // g_1 defaults to the column sum; every retry resamples it too,
        // since the column sum can vanish (non-pointed column cones).
        std::vector<IntVec> g(m);
        for (std::size_t i = 0; i < m; ++i) {
            IntVec w(n, Int(1));
            if (i > 0 || attempt > 0)
                for (std::size_t k = 0; k < n; ++k) w[k] = rng.uniform(1, 997);
            g[i] = a.mul(w);
        }

        ChamberBasisSet out;
        out.y = y;
        out.perturbation_certificate = g;
        bool degenerate = false;

        for (const Basis& b : all_bases) {
            bool keep = true;
            for (std::size_t j = 0; j < m && keep; ++j) {
                int sign = 0;
                {
                    IntVec w = b.adj.mul(y);
                    Int v = b.det > 0 ? w[j] : Int(-w[j]);
                    if (v != 0) sign = v > 0 ? 1 : -1;
                }
                for (std::size_t i = 0; i < m && sign == 0; ++i) {
                    IntVec w = b.adj.mul(g[i]);
                    Int v = b.det > 0 ? w[j] : Int(-w[j]);
                    if (v != 0) sign = v > 0 ? 1 : -1;
                }
                if (sign == 0) {
                    // The whole perturbation curve lies on a wall of this
                    // cone; resample the interior directions.
                    degenerate = true;
                    keep = false;
                } else if (sign < 0) {
                    keep = false;
                }
            }
            if (degenerate) break;
            if (keep) out.bases.push_back(b);
        }
        if (!degenerate) return out;
    }
    throw InconsistencyError("chamber perturbation stayed degenerate after 32 retries");
}

inline ChamberBasisSet chamber_bases(const IntMatrix& a, const IntVec& y,
                                     std::uint64_t seed = kDefaultChamberSeed) {
    return chamber_bases(a, y, enumerate_bases(a), seed);
}

// Nonzero recession direction x >= 0 with A x = 0, when one exists.
// Found by exact feasibility of { A x = 0, sum x = 1, x >= 0 }, then
// scaled to an integer certificate.
inline std::optional<IntVec> recession_certificate(const IntMatrix& a) {
    std::size_t m = a.rows(), n = a.cols();
    std::vector<RatVec> rows(m + 1, RatVec(n));
    RatVec rhs(m + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = Rat(a.at(i, j));
    for (std::size_t j = 0; j < n; ++j) rows[m][j] = 1;
    rhs[m] = 1;
    auto point = lp_feasible_point(rows, rhs);
    if (!point) return std::nullopt;
    Int scale = 1;
    for (const Rat& v : *point) scale = lcm(scale, denominator(v));
    IntVec cert(n);
    for (std::size_t j = 0; j < n; ++j)
        cert[j] = numerator((*point)[j]) * (scale / denominator((*point)[j]));
    return cert;
}

// True iff { x >= 0 : A x = 0 } = { 0 }, i.e. every fiber polyhedron is
// compact.
inline bool is_bounded(const IntMatrix& a) {
    return !recession_certificate(a).has_value();
}

// A nonnegative integer vector for which no entry of A_sigma^{-1} A xhat
// vanishes over any basis, together with the resulting signs.
struct RegularVector {
    IntVec xhat;
    std::vector<std::vector<int>> eps; // aligned with the bases list; +-1 per row
    int attempts = 0;
};

inline RegularVector regular_vector(const IntMatrix& a, const std::vector<Basis>& bases,
                                    std::uint64_t seed = kDefaultRegularSeed,
                                    int max_attempts = 64, bool start_with_ones = true) {
    std::size_t m = a.rows(), n = a.cols();
    Rng rng(seed);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        IntVec xhat(n);
        if (attempt == 1 && start_with_ones) {
            for (std::size_t k = 0; k < n; ++k) xhat[k] = 1;
        } else {
            for (std::size_t k = 0; k < n; ++k) xhat[k] = rng.uniform(1, 1000000);
        }
        IntVec ax = a.mul(xhat);
        RegularVector out;
        out.xhat = xhat;
        out.attempts = attempt;
        bool regular = true;
        for (const Basis& b : bases) {
            IntVec w = b.adj.mul(ax);
            std::vector<int> signs(m);
            for (std::size_t j = 0; j < m; ++j) {
                if (w[j] == 0) {
                    regular = false;
                    break;
                }
                bool pos = (w[j] > 0) == (b.det > 0);
                signs[j] = pos ? 1 : -1;
            }
            if (!regular) break;
            out.eps.push_back(std::move(signs));
        }
        if (regular) return out;
    }
    throw RegularitySearchError("no regular vector found after " +
                                std::to_string(max_attempts) + " attempts");
}

} // namespace latcount

#endif
