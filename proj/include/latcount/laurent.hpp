#ifndef LATCOUNT_LAURENT_HPP
#define LATCOUNT_LAURENT_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

// Exponent vector of a Laurent monomial z_1^{e_1} ... z_n^{e_n};
// entries may be negative.
using ExpVec = IntVec;

struct Monomial {
    Rat coeff;
    ExpVec exp;
};

inline std::string format_exp(const ExpVec& e) { return format_int_vec(e); }

// Sparse multivariate Laurent polynomial with rational coefficients.
// Zero coefficients are never stored; keys are unique by construction.
class LaurentSum {
public:
    using Terms = std::map<ExpVec, Rat>;

    explicit LaurentSum(std::size_t nvars = 0) : nvars_(nvars) {}

    static LaurentSum one(std::size_t nvars) {
        LaurentSum s(nvars);
        s.add_term(ExpVec(nvars, Int(0)), Rat(1));
        return s;
    }

    std::size_t nvars() const { return nvars_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    void add_term(const ExpVec& e, const Rat& c) {
        if (c == 0) return;
        if (e.size() != nvars_) throw DimensionError("exponent arity mismatch");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentSum& operator+=(const LaurentSum& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentSum operator*(const LaurentSum& o) const {
        LaurentSum out(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                ExpVec e(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    // Multiply by the monomial scale * z^shift.
    LaurentSum shifted(const ExpVec& shift, const Rat& scale = Rat(1)) const {
        LaurentSum out(nvars_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) ne[i] = e[i] + shift[i];
            out.add_term(ne, c * scale);
        }
        return out;
    }

    Rat evaluate(const RatVec& z) const {
        if (z.size() != nvars_) throw DimensionError("evaluation point arity mismatch");
        for (const Rat& zk : z)
            if (zk == 0) throw DomainError("evaluation requires all z_k nonzero");
        Rat acc = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] != 0) t *= pow_rat(z[i], e[i]);
            acc += t;
        }
        return acc;
    }

    bool operator==(const LaurentSum& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

private:
    std::size_t nvars_;
    Terms terms_;
};

// One factor (1 - z^exponent)^mult of a denominator product.
struct GeometricFactor {
    ExpVec exponent; // nonzero integer vector
    unsigned mult = 1;

    bool operator==(const GeometricFactor& o) const {
        return exponent == o.exponent && mult == o.mult;
    }
};

// Expansion of a single factor as a two-term LaurentSum (mult handled by
// repeated multiplication; used by symbolic identity tests).
inline LaurentSum factor_as_sum(const GeometricFactor& f, std::size_t nvars) {
    LaurentSum s = LaurentSum::one(nvars);
    for (unsigned r = 0; r < f.mult; ++r) {
        LaurentSum lin(nvars);
        lin.add_term(ExpVec(nvars, Int(0)), Rat(1));
        lin.add_term(f.exponent, Rat(-1));
        s = s * lin;
    }
    return s;
}

struct RationalTerm {
    LaurentSum numerator;
    std::vector<GeometricFactor> denominator;
};

// Finite sum of Laurent numerators over products of geometric factors;
// the shape produced by the Brion and generating-function pipelines.
struct RationalTermSum {
    std::size_t nvars = 0;
    std::vector<RationalTerm> terms;
};

inline Rat evaluate_factor(const GeometricFactor& f, const RatVec& z) {
    Rat base = 1;
    for (std::size_t i = 0; i < f.exponent.size(); ++i)
        if (f.exponent[i] != 0) base *= pow_rat(z[i], f.exponent[i]);
    Rat v = Rat(1) - base;
    if (v == 0)
        throw PoleError("denominator factor (1 - z^" + format_exp(f.exponent) +
                        ") vanishes at the evaluation point");
    Rat acc = 1;
    for (unsigned r = 0; r < f.mult; ++r) acc *= v;
    return acc;
}

inline Rat evaluate_at(const RationalTermSum& sum, const RatVec& z) {
    if (z.size() != sum.nvars) throw DimensionError("evaluation point arity mismatch");
    for (const Rat& zk : z)
        if (zk == 0) throw DomainError("evaluation requires all z_k nonzero");
    Rat acc = 0;
    for (const RationalTerm& t : sum.terms) {
        Rat den = 1;
        for (const GeometricFactor& f : t.denominator) den *= evaluate_factor(f, z);
        acc += t.numerator.evaluate(z) / den;
    }
    return acc;
}

// Textual form: one line per numerator monomial,
//   coef * z^[e1,...,en] / (1 - z^[b1,...,bn])^mult ...
// Rationals print as p/q, ordering is deterministic (term order, then the
// numerator's exponent order).
inline std::string to_text(const RationalTermSum& sum) {
    std::ostringstream os;
    bool printed = false;
    for (const RationalTerm& t : sum.terms) {
        for (const auto& [e, c] : t.numerator.terms()) {
            printed = true;
            os << format_rat(c) << " * z^" << format_exp(e);
            for (const GeometricFactor& f : t.denominator) {
                os << " / (1 - z^" << format_exp(f.exponent) << ")";
                if (f.mult != 1) os << "^" << f.mult;
            }
            os << "\n";
        }
    }
    if (!printed) os << "0\n";
    return os.str();
}

} // namespace latcount

#endif
