#ifndef LATCOUNT_DUAL_HPP
#define LATCOUNT_DUAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/laurent.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"
#include "latcount/oracle.hpp"
#include "latcount/primal.hpp"
#include "latcount/structure.hpp"

namespace latcount {

inline constexpr std::uint64_t kDefaultDualBudget = 1000000;

struct DualShiftEntry {
    IntVec theta; // per sigma row
    IntVec eta;   // length n
};

// theta_j = ceil(-eps_j [A_sigma^{-1} A_notsigma u]_j); eta carries u off
// sigma and theta (eps = +1) or 1 - theta (eps = -1) on sigma. The
// resulting [A_sigma^{-1} A eta]_j always lands in [0, 1]; that bound is
// verified exactly on every construction.
inline DualShiftEntry eta_vector(const IntMatrix& a, const Basis& b, const IntVec& u,
                                 const std::vector<int>& eps) {
    std::size_t m = b.m(), n = a.cols();
    if (u.size() != b.complement.size()) throw DimensionError("u arity mismatch");

    IntVec au(m, Int(0)); // A_notsigma u
    for (std::size_t t = 0; t < u.size(); ++t) {
        if (u[t] == 0) continue;
        for (std::size_t i = 0; i < m; ++i)
            au[i] += a.at(i, static_cast<std::size_t>(b.complement[t]) - 1) * u[t];
    }
    RatVec w = b.solve(au); // A_sigma^{-1} A_notsigma u

    DualShiftEntry e;
    e.theta.resize(m);
    e.eta.assign(n, Int(0));
    for (std::size_t t = 0; t < u.size(); ++t)
        e.eta[static_cast<std::size_t>(b.complement[t]) - 1] = u[t];
    for (std::size_t j = 0; j < m; ++j) {
        Rat scaled = eps[j] > 0 ? -w[j] : w[j];
        e.theta[j] = ceil_rat(scaled);
        Int on_sigma = eps[j] > 0 ? e.theta[j] : Int(1 - e.theta[j]);
        e.eta[static_cast<std::size_t>(b.sigma[j]) - 1] = on_sigma;
        Rat bound = w[j] + Rat(on_sigma);
        if (bound < 0 || bound > 1)
            throw InconsistencyError("dual shift bound violated: [A_sigma^{-1} A eta]_j = " +
                                     format_rat(bound));
    }
    return e;
}

// Lazily built and memoized per basis; entries are created through
// eta_vector, so every stored eta has already passed the exact bound
// check. A basis whose full grid would exceed the budget refuses to build.
class DualShiftTable {
public:
    explicit DualShiftTable(IntMatrix a, std::uint64_t budget = kDefaultDualBudget,
                            std::uint64_t regular_seed = kDefaultRegularSeed,
                            bool start_with_ones = true)
        : a_(std::move(a)),
          budget_(budget),
          bases_(enumerate_bases(a_)),
          regular_(regular_vector(a_, bases_, regular_seed, 64, start_with_ones)) {
        groups_.resize(bases_.size());
        r2_.resize(bases_.size());
        entries_.resize(bases_.size());
    }

    const IntMatrix& matrix() const { return a_; }
    const std::vector<Basis>& bases() const { return bases_; }
    const RegularVector& regular() const { return regular_; }

    Int grid_size(std::size_t idx) const {
        Int g = 1;
        std::size_t k = a_.cols() - bases_[idx].m();
        for (std::size_t t = 0; t < k; ++t) g *= bases_[idx].mu;
        return g;
    }

    const QuotientGroup& group(std::size_t idx) {
        if (!groups_[idx]) groups_[idx] = quotient_group(bases_[idx]);
        return *groups_[idx];
    }

    const std::vector<GeometricFactor>& r2_factors(std::size_t idx) {
        if (!r2_[idx]) r2_[idx] = r2(a_, bases_[idx], Variant::Full).factors;
        return *r2_[idx];
    }

    const DualShiftEntry& entry(std::size_t idx, const IntVec& u) {
        check_budget(idx);
        auto& table = entries_[idx];
        auto it = table.find(u);
        if (it == table.end())
            it = table.emplace(u, eta_vector(a_, bases_[idx], u, regular_.eps[idx])).first;
        return it->second;
    }

    const std::map<IntVec, DualShiftEntry>& built(std::size_t idx) const {
        return entries_[idx];
    }

    // A_sigma^{-1} A eta, whose entries must lie in [0, 1].
    RatVec bound_vector(std::size_t idx, const IntVec& eta) const {
        return bases_[idx].solve(a_.mul(eta));
    }

    void check_budget(std::size_t idx) const {
        if (grid_size(idx) > budget_)
            throw SizeError("dual shift table for basis needs " + grid_size(idx).str() +
                            " entries, over the budget of " + std::to_string(budget_));
    }

private:
    IntMatrix a_;
    std::uint64_t budget_;
    std::vector<Basis> bases_;
    RegularVector regular_;
    std::vector<std::optional<QuotientGroup>> groups_;
    std::vector<std::optional<std::vector<GeometricFactor>>> r2_;
    std::vector<std::map<IntVec, DualShiftEntry>> entries_;
};

// The generating-function counting formula: sum over every basis with
// A_sigma^{-1} y >= 0 and every u in the full mu grid whose shifted
// membership test A_sigma^{-1}(y - A eta[sigma,u]) in N^m passes.
inline RationalTermSum h_dual(DualShiftTable& table, const IntVec& y) {
    const IntMatrix& a = table.matrix();
    RationalTermSum sum;
    sum.nvars = a.cols();
    std::size_t m = a.rows();

    for (std::size_t idx = 0; idx < table.bases().size(); ++idx) {
        const Basis& b = table.bases()[idx];
        if (!b.nonnegative_solution(y)) continue;
        table.check_budget(idx);
        const QuotientGroup& g = table.group(idx);
        IntVec ranges(b.complement.size(), b.mu);
        LaurentSum numerator(a.cols());
        detail::enumerate_admissible(a, b, g, y, ranges, [&](const IntVec& u, const IntVec& xsig) {
            const DualShiftEntry& e = table.entry(idx, u);
            // membership: A_sigma^{-1}(y - A eta) = xsig - eta_sigma in N^m
            for (std::size_t j = 0; j < m; ++j)
                if (xsig[j] < e.eta[static_cast<std::size_t>(b.sigma[j]) - 1]) return;
            ExpVec exp(a.cols(), Int(0));
            for (std::size_t j = 0; j < m; ++j)
                exp[static_cast<std::size_t>(b.sigma[j]) - 1] = xsig[j];
            for (std::size_t t = 0; t < u.size(); ++t)
                exp[static_cast<std::size_t>(b.complement[t]) - 1] = u[t];
            numerator.add_term(exp, Rat(1));
        });
        RationalTerm term;
        term.numerator = std::move(numerator);
        term.denominator = table.r2_factors(idx);
        sum.terms.push_back(std::move(term));
    }
    return sum;
}

inline RationalTermSum h_dual(const IntMatrix& a, const IntVec& y,
                              std::uint64_t budget = kDefaultDualBudget) {
    DualShiftTable table(a, budget);
    return h_dual(table, y);
}

struct ExpansionReport {
    bool ok = true;
    long long checked = 0;
    long long mismatched = 0;
    std::optional<IntVec> first_mismatch;
    std::vector<std::string> lines; // per-y status
};

namespace detail {

struct VecLess {
    bool operator()(const IntVec& a, const IntVec& b) const { return a < b; }
};

using CoeffMap = std::map<IntVec, Rat, VecLess>;

// Coefficients of prod_k 1/(1 - z_k s^{A_k}) on [0,B]^m by truncated
// convolution; exact for componentwise nonnegative A because partial
// exponent sums only grow.
inline CoeffMap expansion_lhs_nonneg(const IntMatrix& a, const RatVec& z, long long box) {
    std::size_t m = a.rows(), n = a.cols();
    CoeffMap cur;
    cur.emplace(IntVec(m, Int(0)), Rat(1));
    for (std::size_t k = 0; k < n; ++k) {
        IntVec col = a.column(k);
        CoeffMap next;
        for (const auto& [y, c] : cur) {
            IntVec point = y;
            Rat coef = c;
            for (Int t = 0;; ++t) {
                if (t > 0) {
                    for (std::size_t i = 0; i < m; ++i) point[i] += col[i];
                    coef *= z[k];
                }
                bool inside = true;
                for (std::size_t i = 0; i < m; ++i)
                    if (point[i] > box) {
                        inside = false;
                        break;
                    }
                if (!inside) break;
                next[point] += coef;
                bool stuck = true; // zero column never escapes the box
                for (std::size_t i = 0; i < m; ++i)
                    if (col[i] != 0) stuck = false;
                if (stuck)
                    throw UnsupportedVerificationError("zero column makes the product divergent");
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Right side of the expansion collected per exponent: for each basis and
// grid point u, walk the q in N^m keeping A eta + A_sigma q inside the box.
inline CoeffMap expansion_rhs_nonneg(const IntMatrix& a, const RatVec& z, long long box,
                                     DualShiftTable& table) {
    std::size_t m = a.rows();
    CoeffMap rhs;
    for (std::size_t idx = 0; idx < table.bases().size(); ++idx) {
        table.check_budget(idx);
        const Basis& b = table.bases()[idx];
        Rat r2val = 1;
        for (const GeometricFactor& f : table.r2_factors(idx)) r2val *= evaluate_factor(f, z);

        std::size_t k = b.complement.size();
        IntVec u(k, Int(0));
        auto process_u = [&]() {
            const DualShiftEntry& e = table.entry(idx, u);
            Rat zeta = 1;
            for (std::size_t j = 0; j < e.eta.size(); ++j)
                if (e.eta[j] != 0) zeta *= pow_rat(z[j], e.eta[j]);
            IntVec w = a.mul(e.eta);
            // Enumerate q >= 0 keeping w + A_sigma q <= box rowwise; with
            // nonnegative columns a row over the box can never come back,
            // so the recursion prunes there and caps each digit by the
            // tightest row with a positive entry.
            IntVec point = w;
            IntVec q(m, Int(0));
            auto walk = [&](auto&& self, std::size_t j) -> void {
                for (std::size_t i = 0; i < m; ++i)
                    if (point[i] > box) return;
                if (j == m) {
                    for (std::size_t i = 0; i < m; ++i)
                        if (point[i] < -box) return;
                    Rat zq = zeta;
                    for (std::size_t jj = 0; jj < m; ++jj)
                        if (q[jj] != 0)
                            zq *= pow_rat(z[static_cast<std::size_t>(b.sigma[jj]) - 1], q[jj]);
                    rhs[point] += zq / r2val;
                    return;
                }
                IntVec colj = b.a_sigma.column(j);
                Int vmax = -1;
                for (std::size_t i = 0; i < m; ++i) {
                    if (colj[i] <= 0) continue;
                    Int lim = (Int(box) - point[i]) / colj[i];
                    if (vmax < 0 || lim < vmax) vmax = lim;
                }
                if (vmax < 0)
                    throw InconsistencyError("basis column without positive entries");
                for (Int v = 0; v <= vmax; ++v) {
                    q[j] = v;
                    if (v > 0)
                        for (std::size_t i = 0; i < m; ++i) point[i] += colj[i];
                    self(self, j + 1);
                }
                for (std::size_t i = 0; i < m; ++i) point[i] -= colj[i] * q[j];
                q[j] = 0;
            };
            walk(walk, 0);
        };
        auto iterate = [&](auto&& self, std::size_t t) -> void {
            if (t == k) {
                process_u();
                return;
            }
            for (Int v = 0; v < b.mu; ++v) {
                u[t] = v;
                self(self, t + 1);
            }
            u[t] = 0;
        };
        iterate(iterate, 0);
    }
    return rhs;
}

} // namespace detail

// Coefficient-level check of the generating-function expansion over the
// box |y|_inf <= B: the truncated-convolution coefficients of the product
// must match the shifted-geometric coefficients basis by basis.
inline ExpansionReport verify_expansion(const IntMatrix& a, const RatVec& z, long long box,
                                        std::uint64_t budget = kDefaultDualBudget,
                                        std::uint64_t regular_seed = kDefaultRegularSeed) {
    if (!is_bounded(a))
        throw UnsupportedVerificationError("expansion verification requires a bounded instance");
    if (z.size() != a.cols()) throw DimensionError("z arity mismatch");
    std::size_t m = a.rows(), n = a.cols();

    bool nonneg = true;
    for (std::size_t i = 0; i < m && nonneg; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a.at(i, j) < 0) {
                nonneg = false;
                break;
            }

    DualShiftTable table(a, budget, regular_seed);
    detail::CoeffMap lhs, rhs;
    if (nonneg) {
        lhs = detail::expansion_lhs_nonneg(a, z, box);
        rhs = detail::expansion_rhs_nonneg(a, z, box, table);
    } else {
        // General integer entries: compare against the enumeration oracle
        // per exponent and the membership form of the inner sum.
        IntVec y(m, Int(0));
        auto fill = [&](auto&& self, std::size_t i) -> void {
            if (i == m) {
                Rat l = h_brute(a, y, z);
                if (l != 0) lhs[y] = l;
                RationalTermSum d = h_dual(table, y);
                Rat r = evaluate_at(d, z);
                if (r != 0) rhs[y] = r;
                return;
            }
            for (long long v = -box; v <= box; ++v) {
                y[i] = v;
                self(self, i + 1);
            }
        };
        fill(fill, 0);
    }

    ExpansionReport report;
    IntVec y(m, Int(0));
    auto visit = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            Rat l = 0, r = 0;
            auto il = lhs.find(y);
            if (il != lhs.end()) l = il->second;
            auto ir = rhs.find(y);
            if (ir != rhs.end()) r = ir->second;
            ++report.checked;
            bool match = l == r;
            std::ostringstream line;
            line << "y=" << format_int_vec(y) << " lhs=" << format_rat(l)
                 << " rhs=" << format_rat(r) << (match ? " ok" : " MISMATCH");
            report.lines.push_back(line.str());
            if (!match) {
                report.ok = false;
                ++report.mismatched;
                if (!report.first_mismatch) report.first_mismatch = y;
            }
            return;
        }
        for (long long v = -box; v <= box; ++v) {
            y[i] = v;
            self(self, i + 1);
        }
    };
    visit(visit, 0);
    return report;
}

inline std::string report_text(const ExpansionReport& r) {
    std::ostringstream os;
    for (const std::string& l : r.lines) os << l << "\n";
    os << "checked " << r.checked << " coefficients, " << r.mismatched << " mismatched";
    if (r.first_mismatch) os << ", first mismatch at y=" << format_int_vec(*r.first_mismatch);
    os << "\n" << (r.ok ? "expansion verified" : "expansion FAILED") << "\n";
    return os.str();
}

} // namespace latcount

#endif
