#pragma once

#include "sample_set.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace divdiff {

/// Divided difference over the selected nodes, by the usual recurrence on the
/// nodes in the order given. The result is symmetric in the indices.
template <class T>
T divided_difference(const SampleSet<T>& s, const std::vector<int>& idx)
{
    if (idx.empty()) throw Error("divided difference needs at least one index");
    for (int k : idx)
        if (k < 0 || k > s.n()) throw Error("index out of range: " + std::to_string(k));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (idx[a] == idx[b] || s.x[idx[a]] == s.x[idx[b]]) throw Error("coincident nodes");
    }
    std::vector<T> d;
    for (int k : idx) d.push_back(s.f[k]);
    const std::size_t k = idx.size();
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 0; j + i < k; ++j)
            d[j] = (d[j + 1] - d[j]) / (s.x[idx[j + i]] - s.x[idx[j]]);
    return d[0];
}

/// d[i][j] = f[x_j, ..., x_{j+i}]
template <class T>
struct TriangularTable {
    std::vector<std::vector<T>> d;

    int order() const { return static_cast<int>(d.size()) - 1; }
    const T& operator()(int i, int j) const { return d.at(i).at(j); }
};

/// e[i][j] = f[x_0, ..., x_{i-1}, x_{i+j}] for 1 <= i <= r; row 0 holds the values.
template <class T>
struct NewDDTable {
    int r = 0;
    std::vector<std::vector<T>> e;

    const T& operator()(int i, int j) const { return e.at(i).at(j); }
};

enum class TablePart { newton, fresh };

/// Entry (i,j) is Newton's f[x_j..x_{j+i}] when j < r-i+1, otherwise the new
/// scheme's f[x_0..x_{i-1}, x_{i+j}].
template <class T>
struct CombinedTable {
    int r = 0;
    std::vector<std::vector<T>> entries;

    static bool in_newton_part(int r, int i, int j) { return j < r - i + 1; }
    TablePart part(int i, int j) const { return in_newton_part(r, i, j) ? TablePart::newton : TablePart::fresh; }
    const T& operator()(int i, int j) const { return entries.at(i).at(j); }
};

template <class T>
TriangularTable<T> build_newton_table(const SampleSet<T>& s)
{
    s.validate();
    const int n = s.n();
    TriangularTable<T> t;
    t.d.push_back(s.f);
    for (int i = 1; i <= n; ++i) {
        std::vector<T> row;
        for (int j = 0; j + i <= n; ++j)
            row.push_back((t.d[i - 1][j + 1] - t.d[i - 1][j]) / (s.x[j + i] - s.x[j]));
        t.d.push_back(std::move(row));
    }
    return t;
}

namespace detail {

// one column of the new scheme from the previous one
template <class T>
std::vector<T> next_new_column(const SampleSet<T>& s, const std::vector<T>& prev, int i)
{
    std::vector<T> col;
    for (int j = 0; j + i <= s.n(); ++j)
        col.push_back((prev[j + 1] - prev[0]) / (s.x[i + j] - s.x[i - 1]));
    return col;
}

} // namespace detail

template <class T>
NewDDTable<T> build_new_table(const SampleSet<T>& s, int r)
{
    s.validate();
    if (r < 0 || r > s.n()) throw Error("split r out of range 0.." + std::to_string(s.n()));
    NewDDTable<T> t;
    t.r = r;
    t.e.push_back(s.f);
    for (int i = 1; i <= r; ++i) t.e.push_back(detail::next_new_column(s, t.e.back(), i));
    return t;
}

template <class T>
CombinedTable<T> build_combined_table(const SampleSet<T>& s, int r)
{
    s.validate();
    const int n = s.n();
    if (r < 0 || r > n) throw Error("split r out of range 0.." + std::to_string(n));
    CombinedTable<T> t;
    t.r = r;
    t.entries.push_back(s.f);
    for (int i = 1; i <= n; ++i) {
        const auto& prev = t.entries[i - 1];
        std::vector<T> row;
        for (int j = 0; j + i <= n; ++j) {
            if (CombinedTable<T>::in_newton_part(r, i, j))
                row.push_back((prev[j + 1] - prev[j]) / (s.x[j + i] - s.x[j]));
            else
                row.push_back((prev[j + 1] - prev[0]) / (s.x[i + j] - s.x[i - 1]));
        }
        t.entries.push_back(std::move(row));
    }
    return t;
}

/// Prefix ordering of integer positions: 0, -1, 1, -2, 2, ... clipped to [-m, n].
inline std::vector<int> signed_prefix_order(int m, int n)
{
    std::vector<int> p{0};
    for (int k = 1; k <= std::max(m, n); ++k) {
        if (k <= m) p.push_back(-k);
        if (k <= n) p.push_back(k);
    }
    return p;
}

/// Differences and divided differences by integer arguments. positions lists
/// the argument order (0,1,2,... or 0,-1,1,...). The Newton part holds plain
/// forward differences over the contiguous block of the first r+1 positions;
/// the new part holds f_I[p_0..p_{i-1}, p_{i+j}].
template <class T>
struct IntegerDDTable {
    int r = 0;
    std::vector<int> positions;
    int block_start = 0; // smallest position of the Newton block
    std::vector<std::vector<T>> entries;
    std::vector<T> column_heads; // Delta^i f_lo / i! = f_I[p_0..p_i]

    bool in_newton_part(int i, int j) const { return CombinedTable<T>::in_newton_part(r, i, j); }

    /// Entry (i,j) as a divided difference by integer arguments.
    T dd(int i, int j) const
    {
        return in_newton_part(i, j) ? T(entries.at(i).at(j) / factorial<T>(i)) : entries.at(i).at(j);
    }
    /// Integer arguments defining entry (i,j).
    std::vector<int> arguments(int i, int j) const
    {
        std::vector<int> a;
        if (in_newton_part(i, j)) {
            for (int q = 0; q <= i; ++q) a.push_back(block_start + j + q);
        } else {
            for (int q = 0; q < i; ++q) a.push_back(positions[q]);
            a.push_back(positions[i + j]);
        }
        return a;
    }
};

/// values are given in ascending position order. Without signed_range the
/// positions are 0..len-1; with (m, n) they are -m..n and the prefix ordering
/// is 0, -1, 1, -2, 2, ...
template <class T>
IntegerDDTable<T> build_integer_table(const std::vector<T>& values, int r,
                                      std::optional<std::pair<int, int>> signed_range = std::nullopt)
{
    const int len = static_cast<int>(values.size());
    if (len < 1) throw Error("integer table needs at least one value");
    if (r < 0 || r > len - 1) throw Error("split r out of range 0.." + std::to_string(len - 1));
    IntegerDDTable<T> t;
    t.r = r;
    int m = 0;
    if (signed_range) {
        m = signed_range->first;
        if (m < 0 || signed_range->second < 0 || m + signed_range->second + 1 != len)
            throw Error("signed range does not match the number of values");
        t.positions = signed_prefix_order(m, signed_range->second);
    } else {
        for (int i = 0; i < len; ++i) t.positions.push_back(i);
    }
    auto value_at = [&](int pos) -> const T& { return values[pos + m]; };
    t.block_start = *std::min_element(t.positions.begin(), t.positions.begin() + r + 1);

    const int n = len - 1;
    std::vector<T> row0;
    for (int j = 0; j <= n; ++j)
        row0.push_back(t.in_newton_part(0, j) ? value_at(t.block_start + j) : value_at(t.positions[j]));
    t.entries.push_back(row0);

    // heads f_I[p_0..p_i]; the prefix set is a contiguous block so these are
    // scaled forward differences from its lowest point
    {
        std::vector<T> diff;
        for (int i = 0; i <= n; ++i) {
            std::vector<int> set(t.positions.begin(), t.positions.begin() + i + 1);
            int newlo = *std::min_element(set.begin(), set.end());
            diff.clear();
            for (int q = 0; q <= i; ++q) diff.push_back(value_at(newlo + q));
            for (int k = 1; k <= i; ++k)
                for (int q = 0; q + k <= i; ++q) diff[q] = diff[q + 1] - diff[q];
            t.column_heads.push_back(diff[0] / factorial<T>(i));
        }
    }

    for (int i = 1; i <= n; ++i) {
        const auto& prev = t.entries[i - 1];
        std::vector<T> row;
        for (int j = 0; j + i <= n; ++j) {
            if (t.in_newton_part(i, j)) {
                row.push_back(prev[j + 1] - prev[j]);
            } else {
                // new-scheme step; the head is d_{i-1,0}/(i-1)! on unsigned tables
                row.push_back((prev[j + 1] - t.column_heads[i - 1]) /
                              T(t.positions[i + j] - t.positions[i - 1]));
            }
        }
        t.entries.push_back(std::move(row));
    }
    return t;
}

/// Plain forward differences: diffs[k][j] = Delta^k f_j.
template <class T>
std::vector<std::vector<T>> forward_differences(const std::vector<T>& values)
{
    std::vector<std::vector<T>> d{values};
    for (std::size_t k = 1; k < values.size(); ++k) {
        std::vector<T> row;
        for (std::size_t j = 0; j + 1 < d[k - 1].size(); ++j) row.push_back(d[k - 1][j + 1] - d[k - 1][j]);
        d.push_back(std::move(row));
    }
    return d;
}

/// Lagrange value of the points (nodes, vals) at x; plain product form.
template <class T>
T lagrange_value(const std::vector<T>& nodes, const std::vector<T>& vals, const T& x)
{
    const std::size_t N = nodes.size();
    if (N == 1) return vals[0];
    T sum(0);
    bool first = true;
    for (std::size_t i = 0; i < N; ++i) {
        T num(1), den(1);
        bool started = false;
        for (std::size_t j = 0; j < N; ++j) {
            if (j == i) continue;
            if (!started) {
                num = x - nodes[j];
                den = nodes[i] - nodes[j];
                started = true;
            } else {
                num = num * (x - nodes[j]);
                den = den * (nodes[i] - nodes[j]);
            }
        }
        T term = vals[i] * num / den;
        sum = first ? term : sum + term;
        first = false;
    }
    return sum;
}

/// Extended divided difference f[x, x_0..x_{r-1}] from the main sum:
/// a Lagrange combination over nodes r..n of the order-r column of the new table.
template <class T>
T extended_dd_eval(const SampleSet<T>& s, int r, const T& x)
{
    auto t = build_new_table(s, r);
    std::vector<T> nodes(s.x.begin() + r, s.x.end());
    return lagrange_value(nodes, t.e[r], x);
}

/// Barycentric form; at a node x_i (i >= r) the nodal value is returned.
template <class T>
T extended_dd_eval_barycentric(const SampleSet<T>& s, int r, const T& x)
{
    auto t = build_new_table(s, r);
    const int n = s.n();
    for (int i = r; i <= n; ++i)
        if (x == s.x[i]) return t.e[r][i - r];
    T num(0), den(0);
    for (int i = r; i <= n; ++i) {
        T w(1);
        for (int j = r; j <= n; ++j)
            if (j != i) w = w / (s.x[i] - s.x[j]);
        T c = w / (x - s.x[i]);
        num = num + c * t.e[r][i - r];
        den = den + c;
    }
    return num / den;
}

} // namespace divdiff
