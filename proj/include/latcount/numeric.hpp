#ifndef LATCOUNT_NUMERIC_HPP
#define LATCOUNT_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latcount/errors.hpp"

namespace latcount {

// All arithmetic in the library is exact: arbitrary-precision integers and
// rationals kept in lowest terms with positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// p/q with the sign normalized into the numerator first: the boost
// rational backend refuses negative denominators outright for unbounded
// integers.
inline Rat make_rat(Int p, Int q) {
    if (q == 0) throw DomainError("rational with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Rat(p, q);
}

// floor(p/q) for q > 0, correct for negative p.
inline Int floor_div(const Int& p, const Int& q) {
    Int quo = p / q;
    if (p % q != 0 && ((p < 0) != (q < 0))) --quo;
    return quo;
}

inline Int ceil_div(const Int& p, const Int& q) { return -floor_div(-p, q); }

inline Int floor_rat(const Rat& r) { return floor_div(numerator(r), denominator(r)); }
inline Int ceil_rat(const Rat& r) { return ceil_div(numerator(r), denominator(r)); }

inline IntVec floor_vector(const RatVec& v) {
    IntVec out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(floor_rat(r));
    return out;
}

inline IntVec ceil_vector(const RatVec& v) {
    IntVec out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(ceil_rat(r));
    return out;
}

inline Int pow_int(const Int& base, unsigned long e) {
    return boost::multiprecision::pow(base, e);
}

// base^e for integer e of either sign; base must be nonzero when e < 0.
inline Rat pow_rat(const Rat& base, const Int& e) {
    if (e == 0) return Rat(1);
    bool neg = e < 0;
    Int mag = neg ? Int(-e) : e;
    if (mag > 0x7fffffff)
        throw InconsistencyError("exponent magnitude out of supported range");
    auto k = mag.convert_to<unsigned long>();
    Int pn = pow_int(numerator(base), k);
    Int pd = pow_int(denominator(base), k);
    if (neg) {
        if (pn == 0) throw DomainError("zero raised to a negative power");
        return make_rat(pd, pn);
    }
    return make_rat(pn, pd);
}

// Text form used everywhere: "p" when the denominator is 1, else "p/q".
inline std::string format_rat(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw ParseError("rational with zero denominator: " + s);
        return make_rat(p, q);
    } catch (const std::runtime_error& e) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

inline std::string format_int_vec(const IntVec& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "]";
    return os.str();
}

inline Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Deterministic RNG wrapper. mt19937_64 has a fully specified output
// sequence, so identical seeds give identical streams on every platform;
// std::uniform_int_distribution does not, hence the hand-rolled draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform integer in [lo, hi]
    long long uniform(long long lo, long long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(eng_() % span);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace latcount

#endif
