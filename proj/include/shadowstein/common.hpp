#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowstein {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind {
    Syntax,
    Reference,
    Structure,
    Branching,
    Parity,
    NotStandard,
    Domain,
    Internal
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Reference: return "reference";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Branching: return "branching";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::NotStandard: return "not-standard";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

// locus is a free-form pointer into the input, e.g. "line 4 col 9" or "edge 3".
class ShadowError : public std::runtime_error {
public:
    ShadowError(ErrorKind kind, std::string locus, const std::string& what)
        : std::runtime_error(what), kind_(kind), locus_(std::move(locus)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& locus() const { return locus_; }

    std::string describe() const {
        std::string s = std::string(kind_name(kind_)) + " error";
        if (!locus_.empty())
            s += " at " + locus_;
        return s + ": " + what();
    }

private:
    ErrorKind kind_;
    std::string locus_;
};

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

[[noreturn]] inline void fail(ErrorKind k, const std::string& locus, const std::string& msg) {
    throw ShadowError(k, locus, msg);
}

inline void require(bool ok, ErrorKind k, const std::string& locus, const std::string& msg) {
    if (!ok)
        fail(k, locus, msg);
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return -floor_div(-a, b);
}

inline int mod2(std::int64_t a) { return static_cast<int>(((a % 2) + 2) % 2); }

} // namespace shadowstein
