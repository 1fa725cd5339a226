#pragma once

#include "core_tables.hpp"
#include "op_counts.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace divdiff {

inline void check_split(int r, int n)
{
    if (r < 0 || r > n) throw Error("split r=" + std::to_string(r) + " out of range 0.." + std::to_string(n));
}

/// Without remainder: Newton prefix over x_0..x_{r-1} plus the
/// prefix product times a Lagrange combination of f[x_0..x_{r-1}, x_i], i >= r.
/// Every prefix product is formed afresh, which is the structure whose
/// operation counts Table 8 tabulates.
template <class T>
T interpolate_general(const SampleSet<T>& s, int r, const T& x)
{
    check_split(r, s.n());
    const auto t = build_new_table(s, r);
    const std::vector<T> tail_nodes(s.x.begin() + r, s.x.end());
    T tail = lagrange_value(tail_nodes, t.e[r], x);
    if (r == 0) return tail;

    T prefix = t.e[0][0];
    for (int i = 1; i < r; ++i) {
        T prod = x - s.x[0];
        for (int j = 1; j < i; ++j) prod = prod * (x - s.x[j]);
        prefix = prefix + t.e[i][0] * prod;
    }
    T pp = x - s.x[0];
    for (int j = 1; j < r; ++j) pp = pp * (x - s.x[j]);
    return prefix + pp * tail;
}

/// Same polynomial, tail in barycentric form.
template <class T>
T interpolate_barycentric(const SampleSet<T>& s, int r, const T& x)
{
    check_split(r, s.n());
    const int n = s.n();
    const auto t = build_new_table(s, r);

    T prefix(0), pp(1);
    for (int i = 0; i < r; ++i) {
        prefix = prefix + t.e[i][0] * pp;
        pp = pp * (x - s.x[i]);
    }
    T tail(0);
    int hit = -1;
    for (int i = r; i <= n; ++i)
        if (x == s.x[i]) hit = i;
    if (hit >= 0) {
        tail = t.e[r][hit - r];
    } else {
        T num(0), den(0);
        for (int i = r; i <= n; ++i) {
            T w(1);
            for (int j = r; j <= n; ++j)
                if (j != i) w = w / (s.x[i] - s.x[j]);
            T c = w / (x - s.x[i]);
            num = num + c * t.e[r][i - r];
            den = den + c;
        }
        tail = num / den;
    }
    return prefix + pp * tail;
}

/// Table 8, New-formula column, as printed.
inline OpCounts count_ops(int n, int r)
{
    if (n < 0) throw Error("n must be non-negative");
    check_split(r, n);
    const long long N = n, R = r, D = n - r;
    OpCounts c;
    c.additions = N;
    c.subtractions = N * (N + 1) + D * (D + 1) + R * (R + 1) / 2;
    c.multiplications = (2 * D - 1) * (D + 1) + R * (R + 1) / 2;
    c.divisions = N * (N + 1) / 2 - D * (D + 1) / 2 + D + 1;
    return c;
}

/// Instrumented run of interpolate_general on counting scalars.
template <class T>
OpCounts measure_interpolation_ops(const SampleSet<T>& s, int r, const T& x)
{
    OpCounts tally;
    SampleSet<Counted<T>> cs;
    for (std::size_t i = 0; i < s.size(); ++i) {
        cs.x.emplace_back(s.x[i], &tally);
        cs.f.emplace_back(s.f[i], &tally);
    }
    interpolate_general(cs, r, Counted<T>(x, &tally));
    return tally;
}

// ---------------------------------------------------------------------------
// Evenly spaced data. All of these work in the position variable s.

namespace detail {

template <class T>
std::vector<T> int_nodes(int lo, int hi)
{
    std::vector<T> v;
    for (int i = lo; i <= hi; ++i) v.push_back(T(i));
    return v;
}

} // namespace detail

/// Forward coefficients: newton[i] = Delta^i f_0 / i! for i < r and the
/// order-r divided differences by integer arguments feeding the tail.
template <class T>
struct ForwardEvenCoeffs {
    int r = 0;
    std::vector<T> newton;
    std::vector<T> tail; // f_I[0..r-1, i] for i = r..n
};

template <class T>
ForwardEvenCoeffs<T> forward_even_coefficients(const std::vector<T>& values, int r)
{
    const int n = static_cast<int>(values.size()) - 1;
    if (n < 0) throw Error("no values");
    check_split(r, n);
    const auto t = build_integer_table(values, r);
    ForwardEvenCoeffs<T> c;
    c.r = r;
    for (int i = 0; i < r; ++i) c.newton.push_back(t.column_heads[i]);
    for (int j = 0; j + r <= n; ++j) c.tail.push_back(t.dd(r, j));
    return c;
}

/// Even forward grid; values at positions 0..n.
template <class T>
T interpolate_forward_even(const std::vector<T>& values, int r, const T& s)
{
    const auto c = forward_even_coefficients(values, r);
    const int n = static_cast<int>(values.size()) - 1;
    T tail = lagrange_value(detail::int_nodes<T>(r, n), c.tail, s);
    T sum(0);
    for (int i = 0; i < r; ++i) sum = sum + c.newton[i] * falling(s, i);
    return sum + falling(s, r) * tail;
}

/// Even backward grid; values[k] is the ordinate at position -k.
/// Backward differences nabla^i f_0 / i! are returned in newton[].
template <class T>
ForwardEvenCoeffs<T> backward_even_coefficients(const std::vector<T>& values, int r)
{
    auto c = forward_even_coefficients(values, r);
    for (int i = 1; i < r; i += 2) c.newton[i] = -c.newton[i];
    return c;
}

template <class T>
T interpolate_backward_even(const std::vector<T>& values, int r, const T& s)
{
    // with g(k) = f(-k) the forward form at -s is term-by-term the backward form
    return interpolate_forward_even(values, r, T(-s));
}

/// Ordinates over positions -m..n in ascending order.
template <class T>
struct TwoSided {
    int m = 0;
    std::vector<T> values;

    int n() const { return static_cast<int>(values.size()) - 1 - m; }
    const T& at(int i) const { return values.at(i + m); }
};

enum class CentralVariant { new_forward, new_backward, stirling, bessel, everett, steffensen };

inline const char* variant_name(CentralVariant v)
{
    switch (v) {
    case CentralVariant::new_forward: return "new_forward";
    case CentralVariant::new_backward: return "new_backward";
    case CentralVariant::stirling: return "stirling";
    case CentralVariant::bessel: return "bessel";
    case CentralVariant::everett: return "everett";
    case CentralVariant::steffensen: return "steffensen";
    }
    return "?";
}

inline CentralVariant parse_variant(const std::string& name)
{
    for (auto v : {CentralVariant::new_forward, CentralVariant::new_backward, CentralVariant::stirling,
                   CentralVariant::bessel, CentralVariant::everett, CentralVariant::steffensen})
        if (name == variant_name(v)) return v;
    if (name == "gauss_forward") return CentralVariant::new_forward;
    if (name == "gauss_backward") return CentralVariant::new_backward;
    throw Error("unknown central variant '" + name + "'");
}

namespace detail {

// forward difference Delta^k f_j over a two-sided sequence
template <class T>
struct Diffs {
    const TwoSided<T>& v;
    std::vector<std::vector<T>> d;
    explicit Diffs(const TwoSided<T>& vals) : v(vals), d(forward_differences(vals.values)) {}
    const T& operator()(int k, int j) const
    {
        const int idx = j + v.m;
        if (k >= static_cast<int>(d.size()) || idx < 0 || idx >= static_cast<int>(d[k].size()))
            throw Error("difference Delta^" + std::to_string(k) + " f_" + std::to_string(j) +
                        " needs data outside the supplied range");
        return d[k][idx];
    }
};

} // namespace detail

/// Theta(s) of the central formulas: (s+r)^{(2r+1)} times the Lagrange
/// combination of f_I[i, 0, -1, 1, ..., -r, r] over the remaining positions.
template <class T>
T central_theta(const TwoSided<T>& v, int r, const T& s)
{
    const int m = v.m, n = v.n();
    if (2 * r + 1 == m + n + 1) return T(0);
    const auto t = build_integer_table(v.values, 2 * r, std::make_pair(m, n));
    std::vector<T> nodes, dd;
    for (int j = 0; 2 * r + 1 + j <= m + n; ++j) {
        nodes.push_back(T(t.positions[2 * r + 1 + j]));
        dd.push_back(t.dd(2 * r + 1, j));
    }
    return falling(T(s + T(r)), 2 * r + 1) * lagrange_value(nodes, dd, s);
}

/// Central grid and its variant forms, each followed by Theta(s).
template <class T>
T interpolate_central(const TwoSided<T>& v, int r, const T& s, CentralVariant variant)
{
    const int m = v.m, n = v.n();
    if (m < 0 || n < 0) throw Error("bad two-sided range");
    if (r < 0 || r > m || r > n)
        throw Error("central split r=" + std::to_string(r) + " needs positions -r..r inside -" +
                    std::to_string(m) + ".." + std::to_string(n));
    if (variant == CentralVariant::bessel && n < r + 1)
        throw Error("Bessel form needs position r+1 = " + std::to_string(r + 1));
    if (variant == CentralVariant::everett && r == 0 && n < 1) throw Error("Everett form needs position 1");

    const detail::Diffs<T> D(v);
    auto fact = [](int k) { return factorial<T>(k); };
    const T half = T(1) / T(2);
    T p(0);

    switch (variant) {
    case CentralVariant::new_forward:
        p = v.at(0);
        for (int k = 1; k <= r; ++k) {
            p = p + D(2 * k - 1, -k + 1) / fact(2 * k - 1) * falling(T(s + T(k - 1)), 2 * k - 1);
            p = p + D(2 * k, -k) / fact(2 * k) * falling(T(s + T(k - 1)), 2 * k);
        }
        break;
    case CentralVariant::new_backward:
        p = v.at(0);
        for (int k = 1; k <= r; ++k) {
            p = p + D(2 * k - 1, -k) / fact(2 * k - 1) * falling(T(s + T(k - 1)), 2 * k - 1);
            p = p + D(2 * k, -k) / fact(2 * k) * falling(T(s + T(k)), 2 * k);
        }
        break;
    case CentralVariant::stirling:
        p = v.at(0);
        for (int k = 1; k <= r; ++k) {
            const T odd = (D(2 * k - 1, -k + 1) + D(2 * k - 1, -k)) * half;
            const T fp = falling(T(s + T(k - 1)), 2 * k - 1);
            p = p + odd / fact(2 * k - 1) * fp;
            p = p + D(2 * k, -k) / fact(2 * k) * s * fp;
        }
        break;
    case CentralVariant::bessel:
        p = (v.at(0) + v.at(1)) * half;
        for (int k = 1; k <= r; ++k) {
            p = p + D(2 * k - 1, -k + 1) / fact(2 * k - 1) * (s - half) * falling(T(s + T(k - 2)), 2 * k - 2);
            p = p + (D(2 * k, -k) + D(2 * k, -k + 1)) * half / fact(2 * k) * falling(T(s + T(k - 1)), 2 * k);
        }
        // the printed closing term; it turns the last averaged even
        // difference into Delta^{2r} f_{-r}
        p = p - falling(T(s + T(r - 1)), 2 * r) / fact(2 * r) * D(2 * r + 1, -r) * half;
        break;
    case CentralVariant::everett: {
        const T t = T(1) - s;
        for (int k = 0; k < r; ++k) {
            p = p + D(2 * k, -k) / fact(2 * k + 1) * falling(T(t + T(k)), 2 * k + 1);
            p = p + D(2 * k, -k + 1) / fact(2 * k + 1) * falling(T(s + T(k)), 2 * k + 1);
        }
        p = p + D(2 * r, -r) / fact(2 * r) * falling(T(s + T(r - 1)), 2 * r);
        break;
    }
    case CentralVariant::steffensen:
        p = v.at(0);
        for (int k = 1; k <= r; ++k) {
            p = p + D(2 * k - 1, -k + 1) / fact(2 * k) * falling(T(s + T(k)), 2 * k);
            p = p - D(2 * k - 1, -k) / fact(2 * k) * falling(T(s + T(k - 1)), 2 * k);
        }
        break;
    }
    return p + central_theta(v, r, s);
}

/// Gauss-forward coefficients Delta^k f_{-floor(k/2)} / k!, k = 0..order
/// (the published coefficients).
template <class T>
std::vector<T> gauss_forward_coefficients(const TwoSided<T>& v, int order)
{
    const detail::Diffs<T> D(v);
    std::vector<T> c;
    for (int k = 0; k <= order; ++k) c.push_back(D(k, -(k / 2)) / factorial<T>(k));
    return c;
}

/// Stirling coefficients: averaged odd differences and Delta^{2k} f_{-k}, over k!.
template <class T>
std::vector<T> stirling_coefficients(const TwoSided<T>& v, int order)
{
    const detail::Diffs<T> D(v);
    std::vector<T> c;
    for (int k = 0; k <= order; ++k) {
        if (k % 2 == 0)
            c.push_back(D(k, -k / 2) / factorial<T>(k));
        else
            c.push_back((D(k, -(k - 1) / 2) + D(k, -(k + 1) / 2)) / T(2) / factorial<T>(k));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Tail replacement

enum class TailBasis { argument, position };

/// Pi(x) (argument basis) or theta(s) (position basis, s = (x - origin)/step).
template <class T>
struct TailModel {
    int r = 0;
    TailBasis basis = TailBasis::argument;
    T origin{0};
    T step{1};
    std::vector<T> coeffs; // ascending powers
    T residual{0};         // sum of squared residuals of the fit

    T coordinate(const T& x) const { return basis == TailBasis::position ? T((x - origin) / step) : x; }
    T operator()(const T& u) const
    {
        T acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
        return acc;
    }
};

namespace detail {

template <class T>
SampleSet<T> to_coordinates(const SampleSet<T>& s, const TailModel<T>& m)
{
    SampleSet<T> out = s;
    for (auto& x : out.x) x = m.coordinate(x);
    return out;
}

// solves A c = b by Gaussian elimination with partial pivoting
template <class T>
std::vector<T> solve_dense(std::vector<std::vector<T>> A, std::vector<T> b)
{
    const std::size_t N = b.size();
    using std::abs;
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < N; ++r)
            if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
        if (A[piv][c] == T(0)) throw Error("singular least-squares system");
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < N; ++r) {
            T f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < N; ++k) A[r][k] = A[r][k] - f * A[c][k];
            b[r] = b[r] - f * b[c];
        }
    }
    std::vector<T> x(N);
    for (std::size_t i = N; i-- > 0;) {
        T acc = b[i];
        for (std::size_t k = i + 1; k < N; ++k) acc = acc - A[i][k] * x[k];
        x[i] = acc / A[i][i];
    }
    return x;
}

} // namespace detail

/// Least-squares polynomial fit to the order-r column of the new table,
/// f[x_0..x_{r-1}, x_{r+j}] against the trailing argument x_{r+j}, over every
/// remaining node. In the position basis the table is built on s.
template <class T>
TailModel<T> fit_tail(const SampleSet<T>& s, int r, int degree, TailBasis basis = TailBasis::argument,
                      const T& origin = T(0), const T& step = T(1))
{
    check_split(r, s.n());
    if (degree < 0) throw Error("tail degree must be non-negative");
    TailModel<T> model;
    model.r = r;
    model.basis = basis;
    model.origin = origin;
    model.step = step;
    if (basis == TailBasis::position && step == T(0)) throw Error("position basis needs a nonzero step");

    const auto cs = detail::to_coordinates(s, model);
    const auto t = build_new_table(cs, r);
    const auto& col = t.e[r];
    const int pts = static_cast<int>(col.size());
    if (pts < degree + 1)
        throw Error("underdetermined tail fit: " + std::to_string(pts) + " divided differences for degree " +
                    std::to_string(degree));

    const int K = degree + 1;
    std::vector<std::vector<T>> A(K, std::vector<T>(K, T(0)));
    std::vector<T> b(K, T(0));
    for (int j = 0; j < pts; ++j) {
        const T u = cs.x[r + j];
        std::vector<T> pw(2 * K, T(1));
        for (int q = 1; q < 2 * K; ++q) pw[q] = pw[q - 1] * u;
        for (int a = 0; a < K; ++a) {
            for (int c = 0; c < K; ++c) A[a][c] = A[a][c] + pw[a + c];
            b[a] = b[a] + pw[a] * col[j];
        }
    }
    model.coeffs = detail::solve_dense(A, b);
    for (int j = 0; j < pts; ++j) {
        T e = model(cs.x[r + j]) - col[j];
        model.residual = model.residual + e * e;
    }
    return model;
}

/// Newton prefix over x_0..x_{r-1} plus the prefix product times Pi.
template <class T>
T interpolate_with_tail(const SampleSet<T>& s, int r, const TailModel<T>& tail, const T& x)
{
    check_split(r, s.n());
    const auto cs = detail::to_coordinates(s, tail);
    const T u = tail.coordinate(x);
    const auto t = build_new_table(cs, r);
    T prefix(0), pp(1);
    for (int i = 0; i < r; ++i) {
        prefix = prefix + t.e[i][0] * pp;
        pp = pp * (u - cs.x[i]);
    }
    return prefix + pp * tail(u);
}

} // namespace divdiff
