#include "test_support.hpp"

#include <cmath>
#include <gtest/gtest.h>

#include <numbers>

using namespace divdiff;
using namespace testing_support;

namespace {

std::vector<Rational> over(std::initializer_list<int> num, int den)
{
    std::vector<Rational> out;
    for (int k : num) out.emplace_back(k, den);
    return out;
}

} // namespace

TEST(Uneven, Examples)
{
    SampleSet<double> c({0.1, 0.4, 0.9}, {2.5, 2.5, 2.5});
    EXPECT_NEAR(quad_uneven(c, 0.2, 0.3), 0.75, 1e-15);
    SampleSet<Rational> lin({Rational(1, 10), Rational(7, 10), Rational(13, 10)},
                            {Rational(1, 10), Rational(7, 10), Rational(13, 10)});
    EXPECT_EQ(quad_uneven(lin, Rational(1, 5), Rational(1, 2)), Rational(9, 40));

    std::vector<Rational> nodes{Rational(1, 50), Rational(21, 100), Rational(1, 2), Rational(79, 100),
                                Rational(49, 50)};
    oracle::RationalPoly x4({0, 0, 0, 0, 1});
    auto s = sample_poly(x4, nodes);
    const Rational lo(3, 10), hi(7, 10);
    EXPECT_EQ(quad_uneven(s, lo, hi - lo), x4.integral(lo, hi));
    EXPECT_THROW(quad_uneven(s, Rational(1, 2), Rational(1, 10)), Error);
}

TEST(Uneven, ExactOnPolynomials)
{
    std::mt19937 rng(21);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 1 + trial % 6;
        auto p = random_poly(rng, n);
        auto s = sample_poly(p, random_nodes(rng, n + 1));
        const Rational x = Rational(1, 7) + trial % 3, h = Rational(2, 3 + trial);
        EXPECT_EQ(quad_uneven(s, x, h), p.integral(x, x + h));
        auto plan = uneven_quad_plan(s, x, h);
        Rational sum = 0;
        for (auto& w : plan.node_weights) sum += w;
        EXPECT_EQ(sum, h);
    }
}

TEST(Even, PrintedWeights)
{
    EXPECT_EQ(even_quad_weights(1).node_weights, over({1, 1}, 2));
    EXPECT_EQ(even_quad_weights(2).node_weights, over({1, 4, 1}, 3));
    EXPECT_EQ(even_quad_weights(6).node_weights, over({41, 216, 27, 272, 27, 216, 41}, 140));
}

TEST(Even, Properties)
{
    for (int n = 1; n <= 8; ++n) {
        auto w = even_quad_weights(n).node_weights;
        Rational sum = 0;
        for (int i = 0; i <= n; ++i) {
            EXPECT_EQ(w[i], w[n - i]);
            sum += w[i];
        }
        EXPECT_EQ(sum, n);
        const int dmax = n % 2 == 0 ? n + 1 : n;
        for (int d = 0; d <= dmax + 1; ++d) {
            Rational q = 0;
            for (int i = 0; i <= n; ++i) q += w[i] * int_pow(Rational(i), d);
            const Rational exact = int_pow(Rational(n), d + 1) / (d + 1);
            if (d <= dmax)
                EXPECT_EQ(q, exact) << n << " d=" << d;
            else
                EXPECT_NE(q, exact) << n << " d=" << d;
        }
    }
    EXPECT_THROW(even_quad_weights(0), Error);
}

TEST(Even, Examples)
{
    EXPECT_EQ(quad_even(std::vector<Rational>{0, 1, 4}, Rational(1)), Rational(8, 3));
    EXPECT_NEAR(quad_even(std::vector<double>(5, 1.5), 0.2), 1.5 * 4 * 0.2, 1e-15);
    std::vector<Rational> x6;
    for (int i = 0; i <= 6; ++i) x6.push_back(int_pow(Rational(i), 6));
    EXPECT_EQ(quad_even(x6, Rational(1)), int_pow(Rational(6), 7) / 7);
    EXPECT_THROW(quad_even(std::vector<double>{1.0}, 0.1), Error);
}

TEST(Central, SimpsonAndNewtonCotes)
{
    auto p1 = central_quad_weights(1).node_weights;
    EXPECT_EQ(p1, over({1, 4, 1}, 3));
    for (int n = 1; n <= 3; ++n) {
        auto c = central_quad_weights(n).node_weights;
        auto e = even_quad_weights(2 * n).node_weights;
        ASSERT_EQ(c.size(), e.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            EXPECT_EQ(c[i], c[c.size() - 1 - i]);
            EXPECT_LE(std::abs(to_double(c[i]) / to_double(e[i]) - 1), 1e-12);
        }
    }
}

TEST(Central, Examples)
{
    TwoSided<double> odd;
    odd.m = 3;
    for (int i = -3; i <= 3; ++i) odd.values.push_back(std::sin(0.2 * i));
    EXPECT_NEAR(quad_central(odd, 0.2), 0.0, 1e-15);
    TwoSided<Rational> c;
    c.m = 2;
    c.values.assign(5, Rational(3));
    EXPECT_EQ(quad_central(c, Rational(1, 10)), Rational(6, 5));
    TwoSided<double> bad;
    bad.m = 1;
    bad.values = {1, 2, 3, 4};
    EXPECT_THROW(quad_central(bad, 0.1), Error);

    std::mt19937 rng(9);
    for (int n = 1; n <= 4; ++n) {
        auto p = random_poly(rng, 2 * n + 1);
        const Rational a(1, 3), h(1, 5);
        TwoSided<Rational> v;
        v.m = n;
        for (int i = -n; i <= n; ++i) v.values.push_back(p(a + i * h));
        EXPECT_EQ(quad_central(v, h), p.integral(a - n * h, a + n * h));
    }
}

TEST(Composite, Examples)
{
    auto sinf = [](double x) { return std::sin(x); };
    // 8 Simpson panels, h = pi/16: the error is 1.66e-5, under the classical
    // bound pi h^4/180 = 2.6e-5 but not under 1e-5
    const double hs = std::numbers::pi / 16;
    const double err8 = std::abs(quad_composite(sinf, 0, std::numbers::pi, 8) - 2.0);
    EXPECT_LE(err8, std::numbers::pi * std::pow(hs, 4) / 180);
    EXPECT_NEAR(err8, 1.6591e-5, 1e-9);
    EXPECT_NEAR(quad_composite(sinf, 0, std::numbers::pi, 16), 2.0, 1e-5);
    EXPECT_DOUBLE_EQ(quad_composite([](double) { return 0.5; }, 1.0, 3.0, 5), 1.0);
    const double e1 = std::abs(quad_composite(sinf, 0, 1, 4) - (1 - std::cos(1.0)));
    const double e2 = std::abs(quad_composite(sinf, 0, 1, 8) - (1 - std::cos(1.0)));
    EXPECT_NEAR(e1 / e2, 16.0, 1.0);
    EXPECT_THROW(quad_composite(sinf, 1, 1, 4), Error);
    EXPECT_THROW(quad_composite(sinf, 0, 1, 0), Error);
    std::vector<double> v;
    for (int i = 0; i <= 8; ++i) v.push_back(std::sin(i / 8.0));
    EXPECT_NEAR(quad_composite(v, 1 / 8.0), quad_composite(sinf, 0, 1, 4), 1e-15);
    EXPECT_THROW(quad_composite(std::vector<double>{1, 2, 3, 4}, 0.1), Error);
}
