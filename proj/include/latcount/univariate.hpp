#ifndef LATCOUNT_UNIVARIATE_HPP
#define LATCOUNT_UNIVARIATE_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latcount/errors.hpp"
#include "latcount/laurent.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

// Sparse univariate Laurent polynomial in t.
class UniPoly {
public:
    using Terms = std::map<Int, Rat>;

    bool empty() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    void add_term(const Int& e, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    UniPoly& operator+=(const UniPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    // this * (1 - t^d)
    UniPoly times_factor(const Int& d) const {
        UniPoly out = *this;
        for (const auto& [e, c] : terms_) out.add_term(e + d, -c);
        return out;
    }

    Rat evaluate(const Rat& t) const {
        Rat acc = 0;
        for (const auto& [e, c] : terms_) acc += c * pow_rat(t, e);
        return acc;
    }

    Rat sum_of_coefficients() const {
        Rat acc = 0;
        for (const auto& [e, c] : terms_) acc += c;
        return acc;
    }

    bool operator==(const UniPoly& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

// (1 - t^d)^mult with d > 0.
struct UniFactor {
    Int d;
    unsigned mult = 1;
};

// num / prod (1 - t^d)^mult, the univariate image of a RationalTermSum.
struct UniRational {
    UniPoly num;
    std::vector<UniFactor> den;
};

namespace detail {

// Exact division by (1 - t^d), lowest exponent first. Each step clears the
// current lowest term a*t^e and pushes a*t^{e+d} back in. For a divisible
// input every quotient exponent stays <= maxexp - d, so crossing that line
// with terms still left certifies a nonzero remainder.
inline UniPoly divide_by_factor(const UniPoly& num, const Int& d) {
    UniPoly rem = num;
    UniPoly quo;
    if (rem.empty()) return quo;
    Int maxexp = rem.terms().rbegin()->first;
    while (!rem.empty()) {
        auto low = rem.terms().begin();
        Int e = low->first;
        Rat a = low->second;
        if (e + d > maxexp)
            throw InconsistencyError(
                "univariate numerator is not divisible by (1 - t^" + d.str() +
                "); the pooled sum is not a Laurent polynomial");
        quo.add_term(e, a);
        rem.add_term(e, -a);
        rem.add_term(e + d, a);
    }
    return quo;
}

} // namespace detail

// Specialize z_k = t^{c_k}. Every denominator factor must map to a nonzero
// power of t; negative powers are normalized through
// 1/(1 - t^{-d}) = -t^d/(1 - t^d), so the returned factors all have d > 0.
// The terms are then pooled over a common denominator: for each distinct d
// the largest multiplicity across terms.
inline UniRational specialize_univariate(const RationalTermSum& sum, const IntVec& c) {
    if (!sum.terms.empty() && c.size() != sum.nvars)
        throw DimensionError("direction arity mismatch");

    struct SpecTerm {
        UniPoly num;
        std::map<Int, unsigned> den; // d > 0 -> multiplicity
    };
    std::vector<SpecTerm> spec;
    spec.reserve(sum.terms.size());
    std::map<Int, unsigned> pooled;

    for (const RationalTerm& term : sum.terms) {
        SpecTerm st;
        for (const auto& [e, coef] : term.numerator.terms()) st.num.add_term(dot(c, e), coef);
        for (const GeometricFactor& f : term.denominator) {
            Int d = dot(c, f.exponent);
            if (d == 0)
                throw DegenerateDirectionError(
                    "direction c annihilates denominator exponent z^" +
                    format_exp(f.exponent));
            if (d < 0) {
                d = -d;
                // (1 - t^{-d})^m in the denominator: multiply the numerator
                // by (-t^d)^m and replace the factor by (1 - t^d)^m.
                UniPoly adj;
                Rat sign = (f.mult % 2 == 0) ? Rat(1) : Rat(-1);
                for (const auto& [e, coef] : st.num.terms())
                    adj.add_term(e + d * Int(f.mult), coef * sign);
                st.num = adj;
            }
            st.den[d] += f.mult;
        }
        for (const auto& [d, mult] : st.den) {
            auto it = pooled.find(d);
            if (it == pooled.end())
                pooled.emplace(d, mult);
            else if (it->second < mult)
                it->second = mult;
        }
        spec.push_back(std::move(st));
    }

    UniRational out;
    for (const auto& [d, mult] : pooled) out.den.push_back(UniFactor{d, mult});
    for (const SpecTerm& st : spec) {
        UniPoly padded = st.num;
        for (const auto& [d, mult] : pooled) {
            unsigned own = 0;
            auto it = st.den.find(d);
            if (it != st.den.end()) own = it->second;
            for (unsigned r = own; r < mult; ++r) padded = padded.times_factor(d);
        }
        out.num += padded;
    }
    return out;
}

// Exact value of the pooled sum at t = 1 via exact polynomial division.
// Divisibility certifies that the sum is a Laurent polynomial, which is the
// compact-polyhedron case; a nonzero remainder raises an inconsistency.
inline Rat limit_at_one(const UniRational& ur) {
    UniPoly n = ur.num;
    for (const UniFactor& f : ur.den)
        for (unsigned r = 0; r < f.mult; ++r) n = detail::divide_by_factor(n, f.d);
    return n.sum_of_coefficients();
}

inline Rat evaluate_uni(const UniRational& ur, const Rat& t) {
    Rat den = 1;
    for (const UniFactor& f : ur.den) {
        Rat v = Rat(1) - pow_rat(t, f.d);
        if (v == 0) throw PoleError("univariate denominator vanishes at t");
        for (unsigned r = 0; r < f.mult; ++r) den *= v;
    }
    return ur.num.evaluate(t) / den;
}

} // namespace latcount

#endif
