#pragma once

#include <divdiff/divdiff.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

namespace testing_support {

using divdiff::Rational;
using divdiff::SampleSet;
using divdiff::oracle::RationalPoly;

inline Rational random_rational(std::mt19937& rng, int num_span = 40, int den_max = 9)
{
    std::uniform_int_distribution<int> num(-num_span, num_span), den(1, den_max);
    return Rational(num(rng), den(rng));
}

/// Distinct rational nodes in [lo, hi] on a 1/den grid, in random order.
inline std::vector<Rational> random_nodes(std::mt19937& rng, int count, int lo = -3, int hi = 3, int den = 8)
{
    std::set<int> picked;
    std::uniform_int_distribution<int> pick(lo * den, hi * den);
    while (static_cast<int>(picked.size()) < count) picked.insert(pick(rng));
    std::vector<int> v(picked.begin(), picked.end());
    std::shuffle(v.begin(), v.end(), rng);
    std::vector<Rational> out;
    for (int k : v) out.emplace_back(k, den);
    return out;
}

inline RationalPoly random_poly(std::mt19937& rng, int degree)
{
    std::vector<Rational> c;
    for (int i = 0; i <= degree; ++i) c.push_back(random_rational(rng));
    if (c.back() == 0) c.back() = 1;
    return RationalPoly(c);
}

inline SampleSet<Rational> sample_poly(const RationalPoly& p, const std::vector<Rational>& nodes)
{
    std::vector<Rational> f;
    for (const auto& x : nodes) f.push_back(p(x));
    return SampleSet<Rational>(nodes, f);
}

inline SampleSet<double> random_double_set(std::mt19937& rng, int n)
{
    std::uniform_real_distribution<double> ux(0.0, 1.0), uf(-1.0, 1.0);
    std::vector<double> x, f;
    while (static_cast<int>(x.size()) < n + 1) {
        double v = ux(rng);
        if (std::find(x.begin(), x.end(), v) == x.end()) {
            x.push_back(v);
            f.push_back(uf(rng));
        }
    }
    return SampleSet<double>(x, f);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace testing_support
