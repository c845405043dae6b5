#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "pdmom/errors.hpp"

namespace pdmom {

/// Arbitrary-precision integer.
using Int = boost::multiprecision::cpp_int;

/// Exact rational scalar. Kept in lowest terms with a positive denominator
/// by the backing type; all arithmetic is exact.
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline constexpr double to_double(double x) { return x; }

/// n/d normalized to lowest terms with a positive denominator.
inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw RangeError("make_rat: zero denominator");
    return Rat(n) / Rat(d);
}

/// Parses a scalar literal: "p/q", an integer, or a decimal with optional
/// exponent ("-3", "4/15", "0.25", "1.5e-3"). Decimals are exact: 0.25 -> 1/4.
inline Rat parse_rat(std::string_view text) {
    auto fail = [&] { throw ParseError("invalid rational literal: '" + std::string(text) + "'"); };

    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos) fail();
    std::string_view s = text.substr(begin, end - begin + 1);

    // Leading zeros would read as octal in the Int string constructor.
    auto parse_int = [&](std::string_view t) {
        bool neg = false;
        if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
            neg = (t.front() == '-');
            t.remove_prefix(1);
        }
        if (t.empty() || t.find_first_not_of("0123456789") != std::string_view::npos) fail();
        while (t.size() > 1 && t.front() == '0') t.remove_prefix(1);
        Int v{std::string(t)};
        return neg ? Int(-v) : v;
    };

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (num.empty() || den.empty()) fail();
        Int d = parse_int(den);
        if (d == 0) fail();
        return make_rat(parse_int(num), d);
    }

    // Sign, integer part, optional fraction, optional exponent.
    size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = (s[i++] == '-');
    std::string digits;
    long scale = 0;  // result = digits * 10^(-scale) * 10^exponent
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i++];
            ++scale;
        }
    }
    if (digits.empty()) fail();
    long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) exp_neg = (s[i++] == '-');
        if (i == s.size()) fail();
        std::string exp_digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) exp_digits += s[i++];
        if (exp_digits.empty() || exp_digits.size() > 6) fail();
        exponent = std::stol(exp_digits);
        if (exp_neg) exponent = -exponent;
    }
    if (i != s.size()) fail();

    Int mantissa = parse_int(digits);
    if (negative) mantissa = -mantissa;
    long net = exponent - scale;
    Int pow10 = 1;
    for (long t = 0; t < (net < 0 ? -net : net); ++t) pow10 *= 10;
    return net >= 0 ? Rat(mantissa * pow10) : make_rat(mantissa, pow10);
}

/// Renders r as "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Scalar rendering for the text formats: exact for Rat, %.17g for double.
inline std::string scalar_text(const Rat& r) { return to_string(r); }
inline std::string scalar_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Falling factorial (k)_j = k(k-1)...(k-j+1); zero for 0 <= k < j, one for j = 0.
template <class Scalar>
Scalar falling_factorial(long k, int j) {
    Scalar result(1);
    for (int t = 0; t < j; ++t) result *= Scalar(k - t);
    return result;
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int result = 1;
    for (int t = 0; t < k; ++t) {
        result *= n - t;
        result /= t + 1;
    }
    return result;
}

}  // namespace pdmom
