#pragma once

#include "core_tables.hpp"
#include "interpolation.hpp"
#include "op_counts.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

namespace divdiff {

// ---------------------------------------------------------------------------
// Uneven nodes: rho_m(x), the a_k recurrence and the t-th derivative

/// L_i(x) for every node, numerator and denominator products formed per node.
template <class T>
std::vector<T> lagrange_basis_at(const SampleSet<T>& s, const T& x)
{
    const int n = s.n();
    std::vector<T> L;
    for (int i = 0; i <= n; ++i) {
        if (n == 0) {
            L.push_back(T(1));
            break;
        }
        T num(0), den(0);
        bool started = false;
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            if (!started) {
                num = x - s.x[j];
                den = s.x[i] - s.x[j];
                started = true;
            } else {
                num = num * (x - s.x[j]);
                den = den * (s.x[i] - s.x[j]);
            }
        }
        L.push_back(num / den);
    }
    return L;
}

namespace detail {

// (xi - x)^m from m fresh differences
template <class T>
T gap_power(const T& xi, const T& x, int m)
{
    T p = xi - x;
    for (int q = 1; q < m; ++q) p = p * (xi - x);
    return p;
}

template <class T>
void require_off_node(const SampleSet<T>& s, const T& x)
{
    for (int i = 0; i <= s.n(); ++i)
        if (s.x[i] == x)
            throw Error("rho undefined at node x_" + std::to_string(i) +
                        "; use the grid formulas or derivative_lincomb at nodes");
}

template <class T>
std::vector<T> rho_from_basis(const SampleSet<T>& s, const std::vector<T>& L, const T& x, int kmax)
{
    std::vector<T> rho{T(1)};
    for (int m = 1; m <= kmax; ++m) {
        T sum = L[0] / gap_power(s.x[0], x, m);
        for (int i = 1; i <= s.n(); ++i) sum = sum + L[i] / gap_power(s.x[i], x, m);
        rho.push_back(sum);
    }
    return rho;
}

} // namespace detail

/// rho[0] = 1, rho[m] = sum_i L_i(x) / (x_i - x)^m for m = 1..kmax.
template <class T>
std::vector<T> rho_coeffs(const SampleSet<T>& s, const T& x, int kmax)
{
    s.validate();
    if (kmax < 1) throw Error("kmax must be at least 1");
    detail::require_off_node(s, x);
    return detail::rho_from_basis(s, lagrange_basis_at(s, x), x, kmax);
}

/// a_0 = 1, a_k = -(c_k a_0 + c_{k-1} a_1 + ... + c_1 a_{k-1}); c[0] is ignored.
template <class T>
std::vector<T> recursive_coeffs(const std::vector<T>& c, int kmax)
{
    std::vector<T> a{T(1)};
    for (int k = 1; k <= kmax; ++k) {
        T acc = c.at(k) * a[0];
        for (int j = 1; j < k; ++j) acc = acc + c.at(k - j) * a[j];
        a.push_back(-acc);
    }
    return a;
}

/// f^{(t)}(x)/t! from the recurrence, or from the f(x)-augmented form when f(x) is supplied.
template <class T>
T derivative_uneven_scaled(const SampleSet<T>& s, const T& x, int t, const std::optional<T>& fx = std::nullopt)
{
    s.validate();
    const int n = s.n();
    if (t < 1) throw Error("derivative order must be at least 1");
    if (!fx && t > n) throw Error("order t=" + std::to_string(t) + " exceeds n=" + std::to_string(n));
    if (fx && t > n + 1) throw Error("order t=" + std::to_string(t) + " exceeds n+1 with f(x) known");
    detail::require_off_node(s, x);

    const auto L = lagrange_basis_at(s, x);
    const auto rho = detail::rho_from_basis(s, L, x, t);
    const auto a = recursive_coeffs(rho, t);

    T total(0);
    for (int i = 0; i <= n; ++i) {
        T coef = a[0] / detail::gap_power(s.x[i], x, t);
        for (int j = 1; j < t; ++j) coef = coef + a[j] / detail::gap_power(s.x[i], x, t - j);
        if (!fx) coef = coef + a[t];
        T term = coef * s.f[i] * L[i];
        total = i == 0 ? term : total + term;
    }
    if (fx) total = total + a[t] * *fx;
    return total;
}

template <class T>
T derivative_uneven(const SampleSet<T>& s, const T& x, int t, const std::optional<T>& fx = std::nullopt)
{
    return derivative_uneven_scaled(s, x, t, fx) * factorial<T>(t);
}

/// Table 9, recursive-derivative column, as printed.
inline OpCounts diff_op_counts(int n, int k)
{
    if (k < 1) throw Error("k must be at least 1");
    if (n < 0) throw Error("n must be non-negative");
    const long long N = n, K = k;
    OpCounts c;
    c.additions = N * (2 * K + 1) + K * (K + 1) / 2;
    c.subtractions = (N + 1) * (2 * N + K * K + K);
    c.multiplications = 2 * N * (N + 1) + (N + 1) * K * (K - 1) + K * (K + 1) / 2;
    c.divisions = (N + 1) * (2 * K + 1);
    return c;
}

/// Instrumented run of derivative_uneven_scaled on counting scalars.
template <class T>
OpCounts measure_derivative_ops(const SampleSet<T>& s, const T& x, int k)
{
    OpCounts tally;
    SampleSet<Counted<T>> cs;
    for (std::size_t i = 0; i < s.size(); ++i) {
        cs.x.emplace_back(s.x[i], &tally);
        cs.f.emplace_back(s.f[i], &tally);
    }
    derivative_uneven_scaled(cs, Counted<T>(x, &tally), k);
    return tally;
}

// ---------------------------------------------------------------------------
// Evenly spaced nodes

/// Dimensionless weights: f^{(t)}(a) ~ (sum_i weights[i] f(a + offsets[i] h)) / h^t.
template <class T>
struct StencilWeights {
    std::vector<int> offsets;
    std::vector<T> weights;
    int t = 0;
    int accuracy_order = 0;

    template <class V>
    V apply(const std::vector<V>& values, const V& h) const
    {
        if (values.size() != weights.size()) throw Error("stencil and data sizes differ");
        V acc(0);
        for (std::size_t i = 0; i < weights.size(); ++i) acc = acc + V(weights[i]) * values[i];
        return acc / int_pow(h, t);
    }
};

template <class T>
struct ForwardCoeffs {
    std::vector<T> U;     // U[0] unused, U[1..t]
    std::vector<T> a_hat; // a_hat[0..t]
};

/// U_m = sum_{i=1}^n (-1)^{i-1} C(n,i) / i^m and the a-hat recurrence.
template <class T>
ForwardCoeffs<T> forward_coeffs(int n, int t)
{
    ForwardCoeffs<T> c;
    c.U.push_back(T(0));
    for (int m = 1; m <= t; ++m) {
        T u(0);
        for (int i = 1; i <= n; ++i) {
            const T term = binomial<T>(n, i) / int_pow(T(i), m);
            u = (i % 2 == 1) ? T(u + term) : T(u - term);
        }
        c.U.push_back(u);
    }
    c.a_hat = recursive_coeffs(c.U, t);
    return c;
}

template <class T>
struct TwoSidedCoeffs {
    std::vector<T> A_minus; // A_{-i}, index i = 1..m (slot 0 unused)
    std::vector<T> A_plus;  // A_i, i = 1..n
    std::vector<T> W;       // W[1..t]
    std::vector<T> a_hat;
};

/// Central coefficients with the A's built by running products.
template <class T>
TwoSidedCoeffs<T> twosided_coeffs(int m, int n, int t)
{
    TwoSidedCoeffs<T> c;
    c.A_minus.push_back(T(0));
    c.A_plus.push_back(T(0));
    for (int i = 1; i <= n; ++i) {
        T a(i % 2 == 1 ? 1 : -1);
        for (int q = 1; q <= m; ++q) a = a * T(q) / T(i + q);
        for (int q = 1; q <= n - i; ++q) a = a * T(i + q) / T(q);
        c.A_plus.push_back(a);
    }
    for (int i = 1; i <= m; ++i) {
        T a(i % 2 == 1 ? 1 : -1);
        for (int q = 1; q <= m - i; ++q) a = a * T(i + q) / T(q);
        for (int q = 1; q <= n; ++q) a = a * T(q) / T(i + q);
        c.A_minus.push_back(a);
    }
    c.W.push_back(T(0));
    for (int r = 1; r <= t; ++r) {
        T w(0);
        for (int i = 1; i <= m; ++i) {
            const T term = c.A_minus[i] / int_pow(T(i), r);
            w = (r % 2 == 0) ? T(w + term) : T(w - term);
        }
        for (int i = 1; i <= n; ++i) w = w + c.A_plus[i] / int_pow(T(i), r);
        c.W.push_back(w);
    }
    c.a_hat = recursive_coeffs(c.W, t);
    return c;
}

/// Per-node weights of the two-sided formula over offsets -m..n.
template <class T = Rational>
StencilWeights<T> stencil_weights(int m, int n, int t)
{
    if (m < 0 || n < 0) throw Error("stencil extents must be non-negative");
    if (t < 1) throw Error("derivative order must be at least 1");
    if (m + n < t) throw Error("m+n=" + std::to_string(m + n) + " is less than t=" + std::to_string(t));
    const auto c = twosided_coeffs<T>(m, n, t);
    const T tf = factorial<T>(t);
    StencilWeights<T> sw;
    sw.t = t;
    sw.accuracy_order = m + n + 1 - t + ((m == n && t % 2 == 0) ? 1 : 0);
    for (int i = -m; i <= n; ++i) {
        sw.offsets.push_back(i);
        if (i == 0) {
            sw.weights.push_back(c.a_hat[t] * tf);
            continue;
        }
        const int k = i < 0 ? -i : i;
        T acc(0);
        for (int j = 0; j < t; ++j) {
            T term = c.a_hat[j] / int_pow(T(k), t - j);
            if (i < 0 && (t - j) % 2 == 1) term = -term;
            acc = acc + term;
        }
        sw.weights.push_back((i < 0 ? c.A_minus[k] : c.A_plus[k]) * acc * tf);
    }
    return sw;
}

/// Forward-grid weights over offsets 0..n.
template <class T = Rational>
StencilWeights<T> forward_stencil(int n, int t)
{
    if (t < 1) throw Error("derivative order must be at least 1");
    if (t > n) throw Error("order t=" + std::to_string(t) + " exceeds n=" + std::to_string(n));
    const auto c = forward_coeffs<T>(n, t);
    const T tf = factorial<T>(t);
    StencilWeights<T> sw;
    sw.t = t;
    sw.accuracy_order = n + 1 - t;
    sw.offsets.push_back(0);
    sw.weights.push_back(c.a_hat[t] * tf);
    for (int i = 1; i <= n; ++i) {
        T acc(0);
        for (int j = 0; j < t; ++j) acc = acc + c.a_hat[j] / int_pow(T(i), t - j);
        T w = binomial<T>(n, i) * acc * tf;
        sw.offsets.push_back(i);
        sw.weights.push_back(i % 2 == 1 ? w : T(-w));
    }
    return sw;
}

template <class T>
struct CentralCoeffs {
    std::vector<T> A;       // A[1..n]
    std::vector<T> V;       // V[m] for m = 0..t (odd slots unused)
    std::vector<T> a_tilde; // a_tilde[0..t], odd entries zero
    int psi = 0;
};

/// Symmetric-grid coefficients.
template <class T>
CentralCoeffs<T> central_coeffs(int n, int t)
{
    CentralCoeffs<T> c;
    c.psi = t % 2;
    c.A.push_back(T(0));
    T a(1);
    for (int i = 1; i <= n; ++i) {
        a = a * T(n - i + 1) / T(n + i);
        c.A.push_back(i % 2 == 1 ? a : T(-a));
    }
    for (int m = 0; m <= t; ++m) {
        T v(0);
        if (m > 0 && m % 2 == 0)
            for (int i = 1; i <= n; ++i) v = v + c.A[i] / int_pow(T(i), m);
        c.V.push_back(v);
    }
    c.a_tilde.push_back(T(1));
    for (int k = 1; k <= t; ++k) {
        if (k % 2 == 1) {
            c.a_tilde.push_back(T(0));
            continue;
        }
        T acc(0);
        for (int j = 2; j <= k; j += 2) acc = acc + c.V[j] * c.a_tilde[k - j];
        c.a_tilde.push_back(T(-(T(2) * acc)));
    }
    return c;
}

template <class T = Rational>
StencilWeights<T> central_stencil(int n, int t)
{
    if (n < 1) throw Error("central stencil needs n >= 1");
    if (t < 1) throw Error("derivative order must be at least 1");
    if (2 * n < t) throw Error("2n=" + std::to_string(2 * n) + " is less than t=" + std::to_string(t));
    const auto c = central_coeffs<T>(n, t);
    const T tf = factorial<T>(t);
    std::vector<T> half(n + 1, T(0));
    for (int i = 1; i <= n; ++i) {
        T acc(0);
        for (int j = 0; j < t; j += 2) acc = acc + c.a_tilde[j] / int_pow(T(i), t - j);
        half[i] = c.A[i] * acc * tf;
    }
    StencilWeights<T> sw;
    sw.t = t;
    sw.accuracy_order = 2 * n + 1 - t + (t % 2 == 0 ? 1 : 0);
    for (int i = -n; i <= n; ++i) {
        sw.offsets.push_back(i);
        if (i == 0)
            sw.weights.push_back(c.a_tilde[t] * tf);
        else if (i > 0)
            sw.weights.push_back(half[i]);
        else
            sw.weights.push_back(c.psi ? T(-half[-i]) : half[-i]);
    }
    return sw;
}

namespace detail {

template <class T>
StencilWeights<T> as_scalar(const StencilWeights<Rational>& r)
{
    StencilWeights<T> out;
    out.offsets = r.offsets;
    out.t = r.t;
    out.accuracy_order = r.accuracy_order;
    for (const auto& w : r.weights) {
        if constexpr (std::is_same_v<T, Rational>)
            out.weights.push_back(w);
        else
            out.weights.push_back(T(to_double(w)));
    }
    return out;
}

} // namespace detail

/// f^{(t)}(a) from f(a), f(a+h), ..., f(a+nh).
template <class T>
T forward_derivative(const std::vector<T>& values, const T& h, int t)
{
    const int n = static_cast<int>(values.size()) - 1;
    return detail::as_scalar<T>(forward_stencil<Rational>(n, t)).apply(values, h);
}

/// f^{(t)}(a) from ordinates at a-mh..a+nh.
template <class T>
T twosided_derivative(const TwoSided<T>& v, const T& h, int t)
{
    return detail::as_scalar<T>(stencil_weights<Rational>(v.m, v.n(), t)).apply(v.values, h);
}

/// f^{(t)}(a) from a symmetric set a-nh..a+nh.
template <class T>
T central_derivative(const TwoSided<T>& v, const T& h, int t)
{
    if (v.m != v.n()) throw Error("central derivative needs symmetric data");
    return detail::as_scalar<T>(central_stencil<Rational>(v.n(), t)).apply(v.values, h);
}

// ---------------------------------------------------------------------------
// Linear combinations of divided differences

namespace detail {

inline double subset_count(int N, int K)
{
    double c = 1;
    for (int i = 1; i <= K; ++i) c = c * (N - K + i) / i;
    return c;
}

template <class Fn>
void for_each_subset(int N, int K, Fn&& fn)
{
    std::vector<int> idx(K);
    for (int i = 0; i < K; ++i) idx[i] = i;
    if (K > N) return;
    while (true) {
        fn(idx);
        int p = K - 1;
        while (p >= 0 && idx[p] == N - K + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < K; ++q) idx[q] = idx[q - 1] + 1;
    }
}

// prod over j not in S of (x - x_j)^power / prod_{s in S} (x_s - x_j)
template <class T>
T subset_weight(const std::vector<T>& nodes, const std::vector<int>& S, const T& x, int power)
{
    T c(1);
    std::size_t p = 0;
    for (int j = 0; j < static_cast<int>(nodes.size()); ++j) {
        if (p < S.size() && S[p] == j) {
            ++p;
            continue;
        }
        T den(1);
        for (int s : S) den = den * (nodes[s] - nodes[j]);
        c = c * int_pow(T(x - nodes[j]), power) / den;
    }
    return c;
}

} // namespace detail

/// k-th derivative at x. Without f(x): sum over (k+1)-subsets, valid at
/// nodes too. With f(x): sum over k-subsets augmented by x.
template <class T>
T derivative_lincomb(const SampleSet<T>& s, const T& x, int k, const std::optional<T>& fx = std::nullopt)
{
    s.validate();
    const int n = s.n();
    if (k < 1) throw Error("derivative order must be at least 1");
    const int K = fx ? k : k + 1;
    if (K > n + 1) throw Error("order k=" + std::to_string(k) + " out of range for n=" + std::to_string(n));
    if (detail::subset_count(n + 1, K) > 1e6) throw Error("too many subsets (more than 1e6)");
    if (fx)
        for (int i = 0; i <= n; ++i)
            if (s.x[i] == x) throw Error("with f(x) supplied, x must differ from every node");

    T total(0);
    detail::for_each_subset(n + 1, K, [&](const std::vector<int>& S) {
        T dd(0);
        if (fx) {
            SampleSet<T> sub;
            for (int i : S) {
                sub.x.push_back(s.x[i]);
                sub.f.push_back(s.f[i]);
            }
            sub.x.push_back(x);
            sub.f.push_back(*fx);
            std::vector<int> all(sub.x.size());
            for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<int>(q);
            dd = divided_difference(sub, all);
        } else {
            dd = divided_difference(s, S);
        }
        total = total + dd * detail::subset_weight(s.x, S, x, fx ? k : k + 1);
    });
    return total * factorial<T>(k);
}

/// Sum over k-subsets of prod_{j not in S} (x-x_j)^k / prod_S (x_s-x_j).
template <class T>
T lincomb_coefficient_sum(const std::vector<T>& nodes, const T& x, int k)
{
    T total(0);
    detail::for_each_subset(static_cast<int>(nodes.size()), k,
                            [&](const std::vector<int>& S) { total = total + detail::subset_weight(nodes, S, x, k); });
    return total;
}

namespace detail {

// Grid coefficient for a subset of {1..n} (S holds the integers themselves)
template <class T>
T grid_subset_coefficient(int n, const std::vector<int>& S, int k)
{
    int sum = 0;
    T num(1), prodS(1);
    for (int s : S) {
        sum += s;
        num = num * binomial<T>(n, s);
        prodS = prodS * T(s);
        for (int q : S)
            if (q != s) num = num * T(s - q);
    }
    T c = num / int_pow(prodS, k - 1);
    return ((sum - k) % 2 == 0) ? c : T(-c);
}

} // namespace detail

/// The grid subset coefficients summed over k-subsets of {1..n}.
template <class T>
T grid_coefficient_sum(int n, int k)
{
    T total(0);
    detail::for_each_subset(n, k, [&](std::vector<int> S) {
        for (auto& s : S) ++s;
        total = total + detail::grid_subset_coefficient<T>(n, S, k);
    });
    return total;
}

/// f^{(k)}(a) from f(a), ..., f(a+nh) through f_I[i_1..i_k, 0].
template <class T>
T lincomb_grid_derivative(const std::vector<T>& values, const T& h, int k)
{
    const int n = static_cast<int>(values.size()) - 1;
    if (k < 1 || k > n) throw Error("order k out of range 1..n");
    if (detail::subset_count(n, k) > 1e6) throw Error("too many subsets (more than 1e6)");
    SampleSet<T> pos;
    for (int i = 0; i <= n; ++i) {
        pos.x.push_back(T(i));
        pos.f.push_back(values[i]);
    }
    T total(0);
    detail::for_each_subset(n, k, [&](std::vector<int> S) {
        for (auto& s : S) ++s;
        std::vector<int> args = S;
        args.push_back(0);
        total = total + divided_difference(pos, args) * detail::grid_subset_coefficient<T>(n, S, k);
    });
    return total * factorial<T>(k) / int_pow(h, k);
}

// ---------------------------------------------------------------------------
// The two-sided infinite series

/// zeta(m), m >= 2: 64 terms plus an Euler-Maclaurin tail from 65 on.
inline double zeta(int m)
{
    if (m < 2) throw Error("zeta(m) needs m >= 2");
    double s = 0;
    for (int i = 64; i >= 1; --i) s += std::pow(double(i), -m);
    const double N = 65, M = m;
    s += std::pow(N, 1 - M) / (M - 1) + 0.5 * std::pow(N, -M) + M / 12.0 * std::pow(N, -M - 1) -
         M * (M + 1) * (M + 2) / 720.0 * std::pow(N, -M - 3) +
         M * (M + 1) * (M + 2) * (M + 3) * (M + 4) / 30240.0 * std::pow(N, -M - 5);
    return s;
}

/// sigma_m = 1 - 2^{-m} + 3^{-m} - ... = (1 - 2^{1-m}) zeta(m).
inline double eta_constant(int m) { return (1.0 - std::pow(2.0, 1 - m)) * zeta(m); }

namespace detail {

// partial sums of the alternating data series, smoothed by repeated pairwise
// averaging of the last few partial sums
inline double series_data_sum(const std::function<double(double)>& f, double a, double h, int k, int terms,
                              int smoothing)
{
    const int psi = k % 2;
    const int p = std::min(smoothing, terms - 1);
    std::vector<double> tail;
    double acc = 0;
    for (int i = 1; i <= terms; ++i) {
        const double pair = f(a + i * h) + (psi ? -1.0 : 1.0) * f(a - i * h);
        const double term = pair / std::pow(double(i), k);
        acc += (i % 2 == 1) ? term : -term;
        if (i >= terms - p) tail.push_back(acc);
    }
    for (int round = 0; round < p; ++round)
        for (std::size_t j = 0; j + 1 < tail.size() - round; ++j) tail[j] = 0.5 * (tail[j] + tail[j + 1]);
    return tail[0];
}

// D_k = f^{(k)}(a) h^k / k!
inline double series_scaled(const std::function<double(double)>& f, double a, double h, int k, int terms,
                            int smoothing)
{
    if (k == 0) return f(a);
    double d = series_data_sum(f, a, h, k, terms, smoothing);
    for (int j = 2; j <= k; j += 2) d -= 2 * eta_constant(j) * series_scaled(f, a, h, k - j, terms, smoothing);
    return d;
}

} // namespace detail

/// f^{(k)}(a) from the truncated alternating series. Lower orders on the left
/// side come from the same truncated series. smoothing = 0 is a bare cut.
inline double series_derivative(const std::function<double(double)>& f, double a, double h, int k, int terms,
                                int smoothing = 4)
{
    if (k < 1) throw Error("derivative order must be at least 1");
    if (terms < 1) throw Error("terms must be at least 1");
    if (!(std::abs(h) < 1) || h == 0) throw Error("series derivative needs 0 < |h| < 1");
    if (smoothing < 0) throw Error("smoothing depth must be non-negative");
    double fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    return detail::series_scaled(f, a, h, k, terms, smoothing) * fact / std::pow(h, k);
}

} // namespace divdiff
