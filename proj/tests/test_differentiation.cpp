#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace divdiff;
using namespace testing_support;

namespace {

std::vector<Rational> ints(std::initializer_list<int> v)
{
    std::vector<Rational> out;
    for (int k : v) out.emplace_back(k);
    return out;
}

Rational moment(const StencilWeights<Rational>& sw, int j)
{
    Rational acc = 0;
    for (std::size_t i = 0; i < sw.weights.size(); ++i) acc += sw.weights[i] * int_pow(Rational(sw.offsets[i]), j);
    return acc;
}

std::vector<Rational> scaled(const StencilWeights<Rational>& sw, int den)
{
    std::vector<Rational> out;
    for (const auto& w : sw.weights) out.push_back(w * den);
    return out;
}

} // namespace

TEST(Rho, Examples)
{
    const Rational h(1, 4), a(2);
    // nodes a+h, a+2h with x = a off the node set
    SampleSet<Rational> g({a + h, a + 2 * h}, {0, 0});
    EXPECT_EQ(rho_coeffs(g, a, 1)[1], Rational(3, 2) / h);
    EXPECT_EQ(forward_coeffs<Rational>(2, 1).U[1], Rational(3, 2));
    EXPECT_THROW(rho_coeffs(g, a + h, 1), Error);

    SampleSet<Rational> sym({-1, 1}, {0, 0});
    auto r = rho_coeffs(sym, Rational(0), 5);
    EXPECT_EQ(r[1], 0);
    EXPECT_EQ(r[3], 0);
    EXPECT_EQ(r[5], 0);

    SampleSet<Rational> one({Rational(3)}, {Rational(7)});
    auto r1 = rho_coeffs(one, Rational(1), 3);
    EXPECT_EQ(r1[1], Rational(1, 2));
    EXPECT_EQ(r1[2], Rational(1, 4));
    EXPECT_EQ(r1[3], Rational(1, 8));
}

TEST(Rho, EvenGridMatchesU)
{
    for (int n = 1; n <= 6; ++n) {
        const Rational h(1, 3);
        std::vector<Rational> nodes;
        for (int i = 1; i <= n; ++i) nodes.push_back(i * h);
        SampleSet<Rational> s(nodes, std::vector<Rational>(n, Rational(0)));
        auto U = forward_coeffs<Rational>(n, 4).U;
        auto r = rho_coeffs(s, Rational(0), 4);
        for (int m = 1; m <= 4; ++m) EXPECT_EQ(r[m], U[m] / int_pow(h, m)) << n << "," << m;
    }
}

TEST(Rho, RecurrenceHolds)
{
    std::vector<Rational> rho{1, Rational(2, 3), Rational(-1, 5), Rational(7, 2)};
    auto a = recursive_coeffs(rho, 3);
    ASSERT_EQ(a.size(), 4u);
    EXPECT_EQ(a[0], 1);
    for (int k = 1; k <= 3; ++k) {
        Rational acc = 0;
        for (int j = 0; j < k; ++j) acc += rho[k - j] * a[j];
        EXPECT_EQ(a[k], -acc);
    }
}

TEST(Uneven, Examples)
{
    SampleSet<double> s({0.1, 0.9, 1.7, 2.3}, {0.001, 0.729, 4.913, 12.167});
    EXPECT_NEAR(derivative_uneven(s, 1.0, 2), 6.0, 1e-11);
    SampleSet<Rational> q({Rational(-1, 2), Rational(3, 4), Rational(2)}, {Rational(1, 4), Rational(9, 16), 4});
    for (auto x : {Rational(0), Rational(5, 3), Rational(-7)}) EXPECT_EQ(derivative_uneven(q, x, 1), 2 * x);
    EXPECT_THROW(derivative_uneven(q, Rational(2), 1), Error);
    EXPECT_THROW(derivative_uneven(q, Rational(1), 3), Error);
    try {
        derivative_uneven(q, Rational(2), 1);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("rho undefined at node"), std::string::npos);
    }
}

TEST(Uneven, ExactOnPolynomials)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 5;
        auto p = random_poly(rng, n);
        auto s = sample_poly(p, random_nodes(rng, n + 1));
        Rational x = Rational(1, 7) + trial; // off the 1/8 grid
        for (int t = 1; t <= std::min(n, 3); ++t) {
            const Rational want = p.derivative(t)(x);
            EXPECT_EQ(derivative_uneven(s, x, t), want);
            EXPECT_EQ(derivative_uneven(s, x, t, std::optional<Rational>(p(x))), want);
        }
        // with f(x) known the order can reach n+1 and degree n+1 is still exact
        auto p1 = random_poly(rng, n + 1);
        auto s1 = sample_poly(p1, s.x);
        EXPECT_EQ(derivative_uneven(s1, x, n + 1, std::optional<Rational>(p1(x))), p1.derivative(n + 1)(x));
    }
}

TEST(Forward, Examples)
{
    auto sw = forward_stencil(2, 1);
    EXPECT_EQ(sw.weights, (std::vector<Rational>{Rational(-3, 2), 2, Rational(-1, 2)}));
    EXPECT_DOUBLE_EQ(forward_derivative(std::vector<double>{3, 3, 3, 3}, 0.2, 2), 0.0);
    std::vector<double> e;
    for (int i = 0; i <= 4; ++i) e.push_back(std::exp(0.1 * i));
    EXPECT_LE(std::abs(forward_derivative(e, 0.1, 1) - 1.0), 10 * std::pow(0.1, 4));
    EXPECT_THROW(forward_derivative(std::vector<double>{1, 2}, 0.1, 2), Error);
}

TEST(Forward, HarmonicIdentity)
{
    for (int n = 1; n <= 20; ++n) {
        Rational H = 0;
        for (int i = 1; i <= n; ++i) H += Rational(1, i);
        EXPECT_EQ(forward_coeffs<Rational>(n, 1).U[1], H);
        EXPECT_LE(std::abs(forward_coeffs<double>(n, 1).U[1] / to_double(H) - 1), 1e-12);
    }
}

TEST(Stencils, PrintedEq513To517)
{
    EXPECT_EQ(scaled(stencil_weights(4, 0, 2), 12), ints({11, -56, 114, -104, 35}));
    EXPECT_EQ(scaled(stencil_weights(3, 1, 2), 12), ints({-1, 4, 6, -20, 11}));
    EXPECT_EQ(scaled(stencil_weights(2, 2, 2), 12), ints({-1, 16, -30, 16, -1}));
    EXPECT_EQ(scaled(stencil_weights(1, 3, 2), 12), ints({11, -20, 6, 4, -1}));
    EXPECT_EQ(scaled(stencil_weights(0, 4, 2), 12), ints({35, -104, 114, -56, 11}));
    EXPECT_EQ(stencil_weights(3, 1, 2).offsets, (std::vector<int>{-3, -2, -1, 0, 1}));
    EXPECT_EQ(central_stencil(2, 2).weights, stencil_weights(2, 2, 2).weights);
    EXPECT_EQ(central_stencil(1, 1).weights, (std::vector<Rational>{Rational(-1, 2), 0, Rational(1, 2)}));
    EXPECT_THROW(stencil_weights(1, 0, 2), Error);
    EXPECT_THROW(central_stencil(1, 3), Error);
}

TEST(Stencils, MomentConditions)
{
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n)
            for (int t = 1; t <= std::min(m + n, 4); ++t) {
                auto sw = stencil_weights(m, n, t);
                for (int j = 0; j <= m + n; ++j)
                    EXPECT_EQ(moment(sw, j), j == t ? factorial<Rational>(t) : Rational(0))
                        << m << "," << n << "," << t << " j=" << j;
                if (m == 0) {
                    EXPECT_EQ(sw.weights, forward_stencil(n, t).weights);
                }
                if (m == n && m > 0) {
                    EXPECT_EQ(sw.weights, central_stencil(n, t).weights);
                }
            }
}

TEST(Stencils, DoubleModeMatchesRational)
{
    auto r = stencil_weights<Rational>(3, 4, 3);
    auto d = stencil_weights<double>(3, 4, 3);
    for (std::size_t i = 0; i < r.weights.size(); ++i)
        EXPECT_NEAR(d.weights[i], to_double(r.weights[i]), 1e-12 * std::max(1.0, std::abs(to_double(r.weights[i]))));
}

TEST(Grid, ExactOnPolynomials)
{
    std::mt19937 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = trial % 3, n = 2 + trial % 4;
        auto p = random_poly(rng, m + n);
        const Rational a = random_rational(rng), h(1, 3 + trial);
        TwoSided<Rational> v;
        v.m = m;
        std::vector<Rational> fwd;
        for (int i = -m; i <= n; ++i) v.values.push_back(p(a + i * h));
        for (int i = 0; i <= m + n; ++i) fwd.push_back(p(a + i * h));
        for (int t = 1; t <= std::min(3, m + n); ++t) {
            EXPECT_EQ(twosided_derivative(v, h, t), p.derivative(t)(a));
            EXPECT_EQ(forward_derivative(fwd, h, t), p.derivative(t)(a));
        }
    }
}

TEST(Central, ParityAndCoefficients)
{
    for (int n = 1; n <= 6; ++n) {
        auto c = central_coeffs<Rational>(n, 6);
        for (int k = 1; k <= 6; k += 2) EXPECT_EQ(c.a_tilde[k], 0);
        // nodes +-1..+-n about x = 0
        std::vector<Rational> nodes;
        for (int i = 1; i <= n; ++i) {
            nodes.emplace_back(i);
            nodes.emplace_back(-i);
        }
        SampleSet<Rational> sm(nodes, std::vector<Rational>(nodes.size(), Rational(0)));
        auto r = rho_coeffs(sm, Rational(0), 5);
        EXPECT_EQ(r[1], 0);
        EXPECT_EQ(r[3], 0);
        EXPECT_EQ(r[5], 0);
    }
    // odd data about a gives nothing for even t
    TwoSided<double> odd;
    odd.m = 3;
    for (int i = -3; i <= 3; ++i) odd.values.push_back(std::sin(0.3 * i));
    EXPECT_NEAR(central_derivative(odd, 0.3, 2), 0.0, 1e-14);
    EXPECT_NEAR(central_derivative(odd, 0.3, 4), 0.0, 1e-12);
}

TEST(Central, EmpiricalOrder)
{
    auto err = [](double h) {
        TwoSided<double> v;
        v.m = 2;
        for (int i = -2; i <= 2; ++i) v.values.push_back(std::sin(0.5 + i * h));
        return std::abs(central_derivative(v, h, 2) + std::sin(0.5));
    };
    const double e1 = err(0.1), e2 = err(0.05), e3 = err(0.025);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
    EXPECT_NEAR(std::log2(e2 / e3), 4.0, 0.3);
}

TEST(Central, LimitOfA)
{
    auto c = central_coeffs<double>(1000, 2);
    for (int i = 1; i <= 3; ++i) EXPECT_NEAR(c.A[i], (i % 2 == 1) ? 1.0 : -1.0, 1e-2);
    // A_i = (-1)^{i-1} (1 - i^2/n + ...): the approach is slower further out
    EXPECT_NEAR(c.A[10], -1.0, 0.11);
}

TEST(Lincomb, Examples)
{
    SampleSet<Rational> s({0, 1, 2}, {0, 1, 4});
    EXPECT_EQ(derivative_lincomb(s, Rational(5, 3), 2), 2);
    EXPECT_EQ(derivative_lincomb(s, Rational(1), 2), 2); // at a node is fine here
    EXPECT_THROW(derivative_lincomb(s, Rational(1), 3), Error);
    EXPECT_THROW(derivative_lincomb(s, Rational(1), 1, std::optional<Rational>(1)), Error);

    std::vector<Rational> big;
    for (int i = 0; i < 40; ++i) big.emplace_back(i);
    SampleSet<Rational> b(big, big);
    EXPECT_THROW(derivative_lincomb(b, Rational(1, 2), 10), Error);
}

TEST(Lincomb, ExactAndAgreesWithUneven)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + trial % 5;
        auto p = random_poly(rng, n);
        auto s = sample_poly(p, random_nodes(rng, n + 1));
        const Rational x = Rational(1, 7) - trial % 3;
        for (int k = 1; k <= std::min(n, 3); ++k) {
            EXPECT_EQ(derivative_lincomb(s, x, k), p.derivative(k)(x));
            EXPECT_EQ(derivative_lincomb(s, x, k, std::optional<Rational>(p(x))), p.derivative(k)(x));
            EXPECT_EQ(derivative_lincomb(s, s.x[0], k), p.derivative(k)(s.x[0]));
        }
    }
    // smooth data in doubles
    std::uniform_real_distribution<double> u(0, 2);
    for (int n = 3; n <= 8; ++n) {
        std::vector<double> x, f;
        while (static_cast<int>(x.size()) <= n) {
            const double v = u(rng);
            x.push_back(v);
            f.push_back(std::exp(0.5 * v));
        }
        SampleSet<double> s(x, f);
        for (int k = 1; k <= 3 && k < n; ++k) {
            const double a = derivative_uneven(s, 1.01, k), b = derivative_lincomb(s, 1.01, k);
            EXPECT_LE(rel_err(a, b), 1e-8) << n << "," << k;
        }
    }
}

TEST(Lincomb, CoefficientIdentities)
{
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int n = 1; n <= 7; ++n) {
        std::vector<double> nodes;
        for (int i = 0; i <= n; ++i) nodes.push_back(u(rng));
        for (int k = 1; k <= std::min(3, n + 1); ++k) {
            EXPECT_NEAR(lincomb_coefficient_sum(nodes, 0.123, k), 1.0, 1e-10);
            if (k <= n) {
                EXPECT_EQ(grid_coefficient_sum<Rational>(n, k), 1) << n << "," << k;
            }
        }
        auto rn = random_nodes(rng, n + 1);
        EXPECT_EQ(lincomb_coefficient_sum(rn, Rational(1, 7), std::min(3, n + 1)), 1);
    }
}

TEST(Lincomb, GridSpecialisation)
{
    const double h = 0.05;
    std::vector<double> v;
    for (int i = 0; i <= 5; ++i) v.push_back(std::exp(i * h));
    EXPECT_LE(std::abs(lincomb_grid_derivative(v, h, 2) - forward_derivative(v, h, 2)), 100 * h * h * h);
    std::vector<Rational> q;
    auto p = oracle::RationalPoly({1, -2, 3, 0, 1, 5});
    for (int i = 0; i <= 5; ++i) q.push_back(p(Rational(1) + Rational(i, 4)));
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(lincomb_grid_derivative(q, Rational(1, 4), k), p.derivative(k)(Rational(1)));
}

TEST(Series, Eta)
{
    EXPECT_NEAR(eta_constant(2), std::numbers::pi * std::numbers::pi / 12, 1e-14);
    EXPECT_NEAR(zeta(4), std::pow(std::numbers::pi, 4) / 90, 1e-14);
    EXPECT_NEAR(eta_constant(4), 7 * std::pow(std::numbers::pi, 4) / 720, 1e-14);
}

TEST(Series, Examples)
{
    const double a = 0.3, h = 0.3;
    auto f = [](double x) { return std::cos(x); };
    EXPECT_LE(std::abs(series_derivative(f, a, h, 1, 500) / -std::sin(a) - 1), 1e-2);
    // bare truncation is the plain alternating sum, k = 1
    double direct = 0;
    for (int i = 1; i <= 10; ++i) direct += ((i % 2) ? 1 : -1) * (f(a + i * h) - f(a - i * h)) / i;
    EXPECT_NEAR(series_derivative(f, a, h, 1, 10, 0) * h, direct, 1e-14);
    auto odd = [](double x) { return std::sin(x - 0.3); };
    EXPECT_NEAR(detail::series_data_sum(odd, a, h, 2, 50, 0), 0.0, 1e-14);
    EXPECT_THROW(series_derivative(f, a, h, 0, 10), Error);
    EXPECT_THROW(series_derivative(f, a, 1.5, 1, 10), Error);
}

TEST(Series, SecondDerivative)
{
    auto f = [](double x) { return std::cos(x); };
    EXPECT_LE(std::abs(series_derivative(f, 0.3, 0.3, 2, 500) / -std::cos(0.3) - 1), 1e-2);
}

TEST(OpCounts, Table9Examples)
{
    EXPECT_EQ(diff_op_counts(2, 1).divisions, 9);
    EXPECT_EQ(diff_op_counts(2, 1).additions, 7);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(diff_op_counts(n, 1).multiplications, 2LL * n * (n + 1) + 1);
}

TEST(OpCounts, InstrumentedMatchesTable9)
{
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k <= n; ++k) {
            std::vector<double> x, f;
            for (int i = 0; i <= n; ++i) {
                x.push_back(i + 0.1 * i * i);
                f.push_back(std::cos(i));
            }
            EXPECT_EQ(measure_derivative_ops(SampleSet<double>(x, f), 0.37, k), diff_op_counts(n, k)) << n << "," << k;
        }
}
