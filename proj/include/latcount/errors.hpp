#ifndef LATCOUNT_ERRORS_HPP
#define LATCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latcount {

// Error categories map onto process exit codes in the CLI:
// parse errors -> 2, domain errors -> 3, internal inconsistencies -> 4.
enum class ErrorKind { Parse = 2, Domain = 3, Internal = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct SingularError : Error {
    explicit SingularError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct RankError : Error {
    explicit RankError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

// A denominator factor 1 - z^b vanished at the requested evaluation point.
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

// The chosen specialization direction c annihilates a denominator exponent;
// the caller is expected to retry with a fresh direction.
struct DegenerateDirectionError : Error {
    explicit DegenerateDirectionError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct WrongChamberError : Error {
    explicit WrongChamberError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct UnboundedOracleError : Error {
    explicit UnboundedOracleError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct SizeError : Error {
    explicit SizeError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct UnsupportedVerificationError : Error {
    explicit UnsupportedVerificationError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

// Exact arithmetic produced something that cannot happen for a correct
// pipeline on valid input (nonzero division remainder, violated bound).
struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string& w) : Error(ErrorKind::Internal, w) {}
};

struct RegularitySearchError : Error {
    explicit RegularitySearchError(const std::string& w) : Error(ErrorKind::Internal, w) {}
};

} // namespace latcount

#endif
