#pragma once

#include "differentiation.hpp"

#include <functional>
#include <string>
#include <vector>

namespace divdiff {

/// Uneven nodes: integral over [x, x+h].
template <class T>
struct UnevenQuadPlan {
    std::vector<T> rho;      // rho[0..n]
    std::vector<T> a_coeffs; // a[0..n]
    std::vector<T> gamma;    // gamma[0..n]
    std::vector<T> node_weights;
};

template <class T>
UnevenQuadPlan<T> uneven_quad_plan(const SampleSet<T>& s, const T& x, const T& h)
{
    s.validate();
    const int n = s.n();
    detail::require_off_node(s, x);
    UnevenQuadPlan<T> p;
    const auto L = lagrange_basis_at(s, x);
    p.rho = n >= 1 ? detail::rho_from_basis(s, L, x, n) : std::vector<T>{T(1)};
    p.a_coeffs = recursive_coeffs(p.rho, n);
    for (int k = 0; k <= n; ++k) {
        T g(0);
        for (int j = 0; j <= n - k; ++j) g = g + p.a_coeffs[j] * int_pow(h, k + j + 1) / T(k + j + 1);
        p.gamma.push_back(g);
    }
    for (int i = 0; i <= n; ++i) {
        T acc = p.gamma[0];
        for (int k = 1; k <= n; ++k) acc = acc + p.gamma[k] / detail::gap_power(s.x[i], x, k);
        p.node_weights.push_back(L[i] * acc);
    }
    return p;
}

template <class T>
T quad_uneven(const SampleSet<T>& s, const T& x, const T& h)
{
    const auto p = uneven_quad_plan(s, x, h);
    T total(0);
    for (int i = 0; i <= s.n(); ++i) total = total + p.node_weights[i] * s.f[i];
    return total;
}

/// Forward grid: weights in units of h over offsets 0..n.
template <class T = Rational>
struct EvenQuadPlan {
    int n = 0;
    ForwardCoeffs<T> U;
    std::vector<T> xi; // xi[0..n]
    std::vector<T> node_weights;
};

template <class T = Rational>
EvenQuadPlan<T> even_quad_weights(int n)
{
    if (n < 1) throw Error("even quadrature needs n >= 1");
    EvenQuadPlan<T> p;
    p.n = n;
    p.U = forward_coeffs<T>(n, n);
    const auto& ah = p.U.a_hat;
    for (int k = 0; k <= n; ++k) {
        T v(0);
        for (int j = 0; j <= n - k; ++j) v = v + ah[j] * int_pow(T(n), k + j + 1) / T(k + j + 1);
        p.xi.push_back(v);
    }
    p.node_weights.push_back(p.xi[0]);
    for (int i = 1; i <= n; ++i) {
        T acc(0);
        for (int k = 1; k <= n; ++k) acc = acc + p.xi[k] / int_pow(T(i), k);
        T w = binomial<T>(n, i) * acc;
        p.node_weights.push_back(i % 2 == 1 ? w : T(-w));
    }
    return p;
}

template <class T>
T quad_even(const std::vector<T>& values, const T& h)
{
    if (values.size() < 2) throw Error("even quadrature needs at least two values");
    const int n = static_cast<int>(values.size()) - 1;
    const auto p = even_quad_weights<Rational>(n);
    T total(0);
    for (int i = 0; i <= n; ++i) {
        if constexpr (std::is_same_v<T, Rational>)
            total = total + p.node_weights[i] * values[i];
        else
            total = total + T(to_double(p.node_weights[i])) * values[i];
    }
    return total * h;
}

/// Symmetric grid: weights over -n..n in units of h.
template <class T = Rational>
struct CentralQuadPlan {
    int n = 0;
    CentralCoeffs<T> coeffs; // A, V, a_tilde
    std::vector<T> xi_even;  // xi_even[k] = xi_{2k}, k = 0..n
    std::vector<T> node_weights;
};

template <class T = Rational>
CentralQuadPlan<T> central_quad_weights(int n)
{
    if (n < 1) throw Error("central quadrature needs n >= 1");
    CentralQuadPlan<T> p;
    p.n = n;
    p.coeffs = central_coeffs<T>(n, 2 * n);
    const auto& at = p.coeffs.a_tilde;
    for (int k = 0; k <= n; ++k) {
        T v(0);
        for (int j = 0; 2 * k + j <= 2 * n; j += 2)
            v = v + at[j] * int_pow(T(n), 2 * k + j + 1) / T(2 * k + j + 1);
        p.xi_even.push_back(v);
    }
    std::vector<T> half(n + 1, T(0));
    for (int i = 1; i <= n; ++i) {
        T acc(0);
        for (int k = 1; k <= n; ++k) acc = acc + p.xi_even[k] / int_pow(T(i), 2 * k);
        half[i] = T(2) * p.coeffs.A[i] * acc;
    }
    for (int i = -n; i <= n; ++i)
        p.node_weights.push_back(i == 0 ? T(T(2) * p.xi_even[0]) : half[i < 0 ? -i : i]);
    return p;
}

template <class T>
T quad_central(const TwoSided<T>& v, const T& h)
{
    if (v.m != v.n()) throw Error("central quadrature needs symmetric data");
    const auto p = central_quad_weights<Rational>(v.m);
    T total(0);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        if constexpr (std::is_same_v<T, Rational>)
            total = total + p.node_weights[i] * v.values[i];
        else
            total = total + T(to_double(p.node_weights[i])) * v.values[i];
    }
    return total * h;
}

/// Panel-wise application of the n-point closed rule on [p, q]; each panel is
/// resampled on its own even grid and panels are summed in index order.
inline double quad_composite(const std::function<double(double)>& f, double p, double q, int panels, int n = 2)
{
    if (!(p < q)) throw Error("composite quadrature needs p < q");
    if (panels < 1) throw Error("panels must be at least 1");
    const auto plan = even_quad_weights<Rational>(n);
    std::vector<double> w;
    for (const auto& x : plan.node_weights) w.push_back(to_double(x));
    const double H = (q - p) / panels, h = H / n;
    double total = 0;
    for (int k = 0; k < panels; ++k) {
        const double a = p + k * H;
        double part = 0;
        for (int i = 0; i <= n; ++i) part += w[i] * f(i == n ? a + H : a + i * h);
        total += part * h;
    }
    return total;
}

/// Same over equally spaced samples covering panels*n steps of size h.
inline double quad_composite(const std::vector<double>& values, double h, int n = 2)
{
    if (values.size() < 2 || (values.size() - 1) % n != 0)
        throw Error("sample count must be panels*n + 1");
    const auto plan = even_quad_weights<Rational>(n);
    const int panels = static_cast<int>(values.size() - 1) / n;
    double total = 0;
    for (int k = 0; k < panels; ++k)
        for (int i = 0; i <= n; ++i) total += to_double(plan.node_weights[i]) * values[k * n + i];
    return total * h;
}

} // namespace divdiff
