#pragma once

#include "scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace divdiff {

/// Ordered nodes x_0..x_n with ordinates f_0..f_n. The order is significant:
/// it is the prefix ordering used by the split formulas.
template <class T>
struct SampleSet {
    std::vector<T> x;
    std::vector<T> f;

    SampleSet() = default;
    SampleSet(std::vector<T> nodes, std::vector<T> values) : x(std::move(nodes)), f(std::move(values))
    {
        validate();
    }

    /// Index of the last node (count minus one).
    int n() const { return static_cast<int>(x.size()) - 1; }
    std::size_t size() const { return x.size(); }

    void validate() const
    {
        if (x.size() != f.size()) throw Error("nodes and values differ in length");
        if (x.empty()) throw Error("sample set is empty");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!is_finite(x[i]) || !is_finite(f[i]))
                throw Error("non-finite entry at index " + std::to_string(i));
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (x[i] == x[j])
                    throw Error("coincident nodes at indices " + std::to_string(i) + " and " +
                                std::to_string(j));
    }

    /// Same samples reordered by an index permutation.
    SampleSet permuted(const std::vector<int>& order) const
    {
        SampleSet s;
        for (int k : order) {
            s.x.push_back(x.at(k));
            s.f.push_back(f.at(k));
        }
        return s;
    }
};

/// Evenly spaced nodes a + i h for i in -m..n.
template <class T>
struct GridSpec {
    T origin{0};
    T step{1};
    int forward_count = 0;
    int backward_count = 0;

    GridSpec() = default;
    GridSpec(T a, T h, int n, int m = 0) : origin(a), step(h), forward_count(n), backward_count(m)
    {
        if (!is_finite(h) || h == T(0)) throw Error("grid step must be finite and nonzero");
        if (n < 0 || m < 0) throw Error("grid counts must be non-negative");
    }

    T node(int i) const { return origin + T(i) * step; }

    /// Samples in ascending position order -m..n.
    template <class F>
    SampleSet<T> sample(F&& fn) const
    {
        std::vector<T> xs, fs;
        for (int i = -backward_count; i <= forward_count; ++i) {
            xs.push_back(node(i));
            fs.push_back(T(fn(xs.back())));
        }
        return SampleSet<T>(std::move(xs), std::move(fs));
    }
};

template <class T, class U>
SampleSet<T> convert_samples(const SampleSet<U>& s)
{
    SampleSet<T> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.x.push_back(T(s.x[i]));
        out.f.push_back(T(s.f[i]));
    }
    return out;
}

} // namespace divdiff
