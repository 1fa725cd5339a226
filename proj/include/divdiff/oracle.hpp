#pragma once

// Brute-force references. Nothing here shares code with the table-based
// paths: interpolation is the naive Lagrange sum and calculus is done on
// exact coefficient vectors.

#include "sample_set.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace divdiff::oracle {

/// Exact polynomial, ascending coefficients, no trailing zeros.
struct RationalPoly {
    std::vector<Rational> c;

    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim()
    {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Rational operator()(const Rational& x) const
    {
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double operator()(double x) const
    {
        double acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<double>(*it);
        return acc;
    }

    RationalPoly derivative(int k = 1) const
    {
        std::vector<Rational> d;
        for (std::size_t i = k; i < c.size(); ++i) {
            Rational f = c[i];
            for (int q = 0; q < k; ++q) f *= Rational(static_cast<long long>(i) - q);
            d.push_back(f);
        }
        return RationalPoly(d);
    }

    RationalPoly antiderivative() const
    {
        std::vector<Rational> d{0};
        for (std::size_t i = 0; i < c.size(); ++i) d.push_back(c[i] / Rational(static_cast<long long>(i) + 1));
        return RationalPoly(d);
    }

    Rational integral(const Rational& lo, const Rational& hi) const
    {
        const auto F = antiderivative();
        return F(hi) - F(lo);
    }

    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;
};

/// Direct Lagrange sum at x, one full product per basis function.
inline Rational oracle_interpolate(const SampleSet<Rational>& s, const Rational& x)
{
    s.validate();
    Rational total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Rational b = 1;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) b *= (x - s.x[j]) / (s.x[i] - s.x[j]);
        total += b * s.f[i];
    }
    return total;
}

/// Divided difference from its symmetric closed form
/// sum_i f_i / prod_{j != i} (x_i - x_j).
inline Rational oracle_divided_difference(const SampleSet<Rational>& s, const std::vector<int>& idx)
{
    Rational total = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        Rational den = 1;
        for (std::size_t b = 0; b < idx.size(); ++b) {
            if (a == b) continue;
            if (s.x[idx[a]] == s.x[idx[b]]) throw Error("coincident nodes");
            den *= s.x[idx[a]] - s.x[idx[b]];
        }
        total += s.f[idx[a]] / den;
    }
    return total;
}

/// Interpolating polynomial in coefficient form (sum of expanded basis polynomials).
inline RationalPoly oracle_interpolating_poly(const SampleSet<Rational>& s)
{
    s.validate();
    std::vector<Rational> acc(s.size(), Rational(0));
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<Rational> b{1};
        Rational den = 1;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j == i) continue;
            std::vector<Rational> nb(b.size() + 1, Rational(0));
            for (std::size_t q = 0; q < b.size(); ++q) {
                nb[q + 1] += b[q];
                nb[q] -= b[q] * s.x[j];
            }
            b = nb;
            den *= s.x[i] - s.x[j];
        }
        for (std::size_t q = 0; q < b.size(); ++q) acc[q] += b[q] * s.f[i] / den;
    }
    return RationalPoly(acc);
}

/// f(x) = e^x (1 + x) + x sin x
inline double table5_function(double x) { return std::exp(x) * (1 + x) + x * std::sin(x); }

struct GoldenStencil {
    std::string name;
    std::vector<int> offsets;
    std::vector<Rational> weights;
    int t = 0; // derivative order; 0 marks a quadrature rule (weights in units of h)
};

namespace detail {

inline GoldenStencil golden(std::string name, std::vector<int> offsets, std::vector<long long> num, long long den,
                            int t)
{
    GoldenStencil g{std::move(name), std::move(offsets), {}, t};
    for (auto v : num) g.weights.push_back(Rational(v, den));
    return g;
}

} // namespace detail

/// Five-point second-derivative stencils and closed Newton-Cotes rules, stored verbatim.
inline std::vector<GoldenStencil> known_stencils()
{
    using detail::golden;
    return {
        golden("backward-5pt-d2", {-4, -3, -2, -1, 0}, {11, -56, 114, -104, 35}, 12, 2),
        golden("skew-back-5pt-d2", {-3, -2, -1, 0, 1}, {-1, 4, 6, -20, 11}, 12, 2),
        golden("central-5pt-d2", {-2, -1, 0, 1, 2}, {-1, 16, -30, 16, -1}, 12, 2),
        golden("skew-fwd-5pt-d2", {-1, 0, 1, 2, 3}, {11, -20, 6, 4, -1}, 12, 2),
        golden("forward-5pt-d2", {0, 1, 2, 3, 4}, {35, -104, 114, -56, 11}, 12, 2),
        golden("simpson", {0, 1, 2}, {1, 4, 1}, 3, 0),
        golden("nc7", {0, 1, 2, 3, 4, 5, 6}, {41, 216, 27, 272, 27, 216, 41}, 140, 0),
    };
}

inline GoldenStencil find_stencil(const std::string& name)
{
    for (auto& g : known_stencils())
        if (g.name == name) return g;
    throw Error("no golden stencil named '" + name + "'");
}

} // namespace divdiff::oracle
