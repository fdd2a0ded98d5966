#ifndef LATCOUNT_MATRIX_HPP
#define LATCOUNT_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

// Dense row-major matrix over arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
        if (rows.empty()) throw DimensionError("matrix needs at least one row");
        IntMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec column(std::size_t j) const {
        IntVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    IntVec mul(const IntVec& x) const {
        if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
        IntVec y(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    IntMatrix mul(const IntMatrix& other) const {
        if (cols_ != other.rows_) throw DimensionError("matrix-matrix size mismatch");
        IntMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    out.at(i, j) += at(i, k) * other.at(k, j);
            }
        return out;
    }

    IntMatrix select_columns(const std::vector<int>& idx1based) const {
        IntMatrix out(rows_, idx1based.size());
        for (std::size_t j = 0; j < idx1based.size(); ++j) {
            std::size_t src = static_cast<std::size_t>(idx1based[j]) - 1;
            for (std::size_t i = 0; i < rows_; ++i) out.at(i, j) = at(i, src);
        }
        return out;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Dense matrix over rationals; entries normalized by cpp_rational itself.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVec mul(const IntVec& x) const {
        if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
        RatVec y(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * Rat(x[j]);
        return y;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// Fraction-free Gaussian elimination (Bareiss). Exact and division-safe.
inline Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix w = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = v / prev; // exact by Bareiss
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

inline Int minor_det(const IntMatrix& m, std::size_t drop_row, std::size_t drop_col) {
    std::size_t n = m.rows();
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 0, si = 0; i < n; ++i) {
        if (i == drop_row) continue;
        for (std::size_t j = 0, sj = 0; j < n; ++j) {
            if (j == drop_col) continue;
            sub.at(si, sj) = m.at(i, j);
            ++sj;
        }
        ++si;
    }
    return determinant(sub);
}

// adj(M) with adj(M) * M = det(M) * I, all integer.
inline IntMatrix adjugate(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("adjugate of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return m;
    if (n == 1) {
        IntMatrix a(1, 1);
        a.at(0, 0) = 1;
        return a;
    }
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int c = minor_det(m, i, j);
            if ((i + j) % 2 == 1) c = -c;
            a.at(j, i) = c; // transposed cofactor
        }
    return a;
}

// Exact inverse, represented internally as adjugate over determinant.
inline RatMatrix inverse_rational(const IntMatrix& m) {
    Int det = determinant(m);
    if (det == 0) throw SingularError("matrix is singular");
    IntMatrix adj = adjugate(m);
    std::size_t n = m.rows();
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = make_rat(adj.at(i, j), det);
    return inv;
}

inline std::size_t rank(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    RatMatrix w(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w.at(i, j) = Rat(m.at(i, j));
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && w.at(p, c) == 0) ++p;
        if (p == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(w.at(r, j), w.at(p, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (w.at(i, c) == 0) continue;
            Rat f = w.at(i, c) / w.at(r, c);
            for (std::size_t j = c; j < cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

// U * M * V = diag(d) with U, V unimodular, d_i > 0 and d_i | d_{i+1}.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix V;
    IntVec d;
};

namespace detail {

inline void snf_swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
inline void snf_swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
inline void snf_add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += f * m.at(src, j);
}
inline void snf_add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += f * m.at(i, src);
}
inline void snf_negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

} // namespace detail

// Classic gcd-driven row/column reduction with explicit unimodular
// bookkeeping. Input must be square and nonsingular.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("Smith form of non-square matrix");
    std::size_t n = m.rows();
    if (determinant(m) == 0) throw SingularError("Smith form of singular matrix");

    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(n);
    IntMatrix v = IntMatrix::identity(n);

    auto is_lone = [&](std::size_t s) {
        for (std::size_t i = s + 1; i < n; ++i)
            if (d.at(i, s) != 0) return false;
        for (std::size_t j = s + 1; j < n; ++j)
            if (d.at(s, j) != 0) return false;
        return true;
    };

    for (std::size_t s = 0; s < n; ++s) {
        while (true) {
            // Move the smallest nonzero |entry| of the trailing block to (s,s).
            std::size_t pr = s, pc = s;
            Int best = 0;
            for (std::size_t i = s; i < n; ++i)
                for (std::size_t j = s; j < n; ++j) {
                    const Int& e = d.at(i, j);
                    if (e == 0) continue;
                    Int mag = e < 0 ? Int(-e) : e;
                    if (best == 0 || mag < best) {
                        best = mag;
                        pr = i;
                        pc = j;
                    }
                }
            if (best == 0)
                throw InconsistencyError("Smith reduction hit a zero block on nonsingular input");
            if (pr != s) {
                detail::snf_swap_rows(d, s, pr);
                detail::snf_swap_rows(u, s, pr);
            }
            if (pc != s) {
                detail::snf_swap_cols(d, s, pc);
                detail::snf_swap_cols(v, s, pc);
            }
            // Reduce the pivot row and column.
            for (std::size_t i = s + 1; i < n; ++i) {
                if (d.at(i, s) == 0) continue;
                Int q = floor_div(d.at(i, s), d.at(s, s));
                detail::snf_add_row(d, i, s, -q);
                detail::snf_add_row(u, i, s, -q);
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (d.at(s, j) == 0) continue;
                Int q = floor_div(d.at(s, j), d.at(s, s));
                detail::snf_add_col(d, j, s, -q);
                detail::snf_add_col(v, j, s, -q);
            }
            if (!is_lone(s)) continue;
            // Pivot divides every entry of the trailing block, or fold a
            // violating row in and keep reducing.
            bool divides = true;
            for (std::size_t i = s + 1; i < n && divides; ++i)
                for (std::size_t j = s + 1; j < n; ++j)
                    if (d.at(i, j) % d.at(s, s) != 0) {
                        detail::snf_add_row(d, s, i, Int(1));
                        detail::snf_add_row(u, s, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d.at(s, s) < 0) {
            detail::snf_negate_row(d, s);
            detail::snf_negate_row(u, s);
        }
    }

    SmithDecomposition out;
    out.U = u;
    out.V = v;
    out.d.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.d[i] = d.at(i, i);
    return out;
}

} // namespace latcount

#endif
