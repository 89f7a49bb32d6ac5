#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "expander/errors.hpp"

namespace expander {

// All expansion values and parameters are exact rationals. Floating point
// is never used in comparisons against kappa.
using Rational = boost::rational<long long>;

// Formats canonically: "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p" or "p/q" with optional sign on p; q must be positive.
inline Rational parse_rational(std::string_view text, const std::string& what = "rational") {
    const std::string s(text);
    const auto bad = [&](const std::string& msg) {
        return DomainError("invalid " + what + " '" + s + "': " + msg);
    };
    const auto slash = s.find('/');
    const std::string num_part = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string den_part = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (num_part.empty() || den_part.empty()) throw bad("missing numerator or denominator");
    long long num = 0;
    long long den = 0;
    try {
        std::size_t used = 0;
        num = std::stoll(num_part, &used);
        if (used != num_part.size()) throw bad("trailing characters in numerator");
        den = std::stoll(den_part, &used);
        if (used != den_part.size()) throw bad("trailing characters in denominator");
    } catch (const std::invalid_argument&) {
        throw bad("not a number");
    } catch (const std::out_of_range&) {
        throw bad("out of range");
    }
    if (den <= 0) throw bad("denominator must be positive");
    return Rational(num, den);
}

// Smallest integer >= r.
inline long long ceil_rational(const Rational& r) {
    const long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) return q + 1;
    return q;
}

// Smallest integer strictly greater than r.
inline long long floor_plus_one(const Rational& r) {
    const long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) return q;  // floor(q)+1
    return q + 1;
}

}  // namespace expander
