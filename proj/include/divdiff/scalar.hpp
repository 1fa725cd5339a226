#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace divdiff {

/// Exact rational scalar used by the oracle paths and for closed-form weights.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Rational&) { return true; }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return static_cast<double>(v); }

/// Parses plain decimal text ("-12.5e-3", "0.25") into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    BigInt mant = 0;
    int scale = 0;
    bool digits = false, dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            mant = mant * 10 + (c - '0');
            if (dot) ++scale;
            digits = true;
        } else if (c == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw Error("not a decimal number: '" + std::string(text) + "'");
    int exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t used = 0;
        try {
            exp10 = std::stoi(std::string(text.substr(i + 1)), &used);
        } catch (const std::exception&) {
            throw Error("bad exponent in '" + std::string(text) + "'");
        }
        i += 1 + used;
    }
    if (i != text.size()) throw Error("trailing characters in '" + std::string(text) + "'");
    exp10 -= scale;
    BigInt p = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    Rational r = exp10 < 0 ? Rational(mant, p) : Rational(mant * p);
    return neg ? Rational(-r) : r;
}

inline Rational rational_from_double(double v)
{
    if (!std::isfinite(v)) throw Error("non-finite value has no rational form");
    int e = 0;
    double m = std::frexp(v, &e);
    // 53-bit mantissa scaled to an integer
    auto im = static_cast<std::int64_t>(std::ldexp(m, 53));
    e -= 53;
    Rational r(im);
    BigInt p = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(e < 0 ? -e : e));
    return e < 0 ? Rational(r / Rational(p)) : Rational(r * Rational(p));
}

template <class T>
T factorial(int k)
{
    T r(1);
    for (int i = 2; i <= k; ++i) r = r * T(i);
    return r;
}

template <class T>
T binomial(int n, int k)
{
    if (k < 0 || k > n) return T(0);
    T r(1);
    for (int i = 1; i <= k; ++i) r = r * T(n - k + i) / T(i);
    return r;
}

/// s(s-1)...(s-k+1); k = 0 gives 1.
template <class T>
T falling(const T& s, int k)
{
    T r(1);
    for (int i = 0; i < k; ++i) r = r * (s - T(i));
    return r;
}

/// s(s+1)...(s+k-1)
template <class T>
T rising(const T& s, int k)
{
    T r(1);
    for (int i = 0; i < k; ++i) r = r * (s + T(i));
    return r;
}

template <class T>
T int_pow(const T& base, int e)
{
    T r(1);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

} // namespace divdiff
