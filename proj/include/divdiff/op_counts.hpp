#pragma once

// Counting scalar for the operation tallies of the reference paths. Every
// binary +, -, *, / between Counted values bumps the tally carried by the
// operands; negation, comparisons and construction from integers are free.

#include "scalar.hpp"

#include <ostream>

namespace divdiff {

struct OpCounts {
    long long additions = 0;
    long long subtractions = 0;
    long long multiplications = 0;
    long long divisions = 0;

    OpCounts& operator+=(const OpCounts& o)
    {
        additions += o.additions;
        subtractions += o.subtractions;
        multiplications += o.multiplications;
        divisions += o.divisions;
        return *this;
    }
    friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
    friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const OpCounts& c)
{
    return os << "{add " << c.additions << ", sub " << c.subtractions << ", mul "
              << c.multiplications << ", div " << c.divisions << "}";
}

template <class T>
class Counted {
public:
    Counted() = default;
    Counted(int v) : v_(v) {}
    Counted(const T& v, OpCounts* tally = nullptr) : v_(v), tally_(tally) {}

    const T& value() const { return v_; }
    OpCounts* tally() const { return tally_; }

    Counted operator-() const { return Counted(-v_, tally_); }

    friend Counted operator+(const Counted& a, const Counted& b)
    {
        auto* t = pick(a, b);
        if (t) ++t->additions;
        return Counted(a.v_ + b.v_, t);
    }
    friend Counted operator-(const Counted& a, const Counted& b)
    {
        auto* t = pick(a, b);
        if (t) ++t->subtractions;
        return Counted(a.v_ - b.v_, t);
    }
    friend Counted operator*(const Counted& a, const Counted& b)
    {
        auto* t = pick(a, b);
        if (t) ++t->multiplications;
        return Counted(a.v_ * b.v_, t);
    }
    friend Counted operator/(const Counted& a, const Counted& b)
    {
        auto* t = pick(a, b);
        if (t) ++t->divisions;
        return Counted(a.v_ / b.v_, t);
    }
    Counted& operator+=(const Counted& o) { return *this = *this + o; }
    Counted& operator-=(const Counted& o) { return *this = *this - o; }
    Counted& operator*=(const Counted& o) { return *this = *this * o; }
    Counted& operator/=(const Counted& o) { return *this = *this / o; }

    friend bool operator==(const Counted& a, const Counted& b) { return a.v_ == b.v_; }
    friend auto operator<=>(const Counted& a, const Counted& b) { return a.v_ <=> b.v_; }

private:
    static OpCounts* pick(const Counted& a, const Counted& b) { return a.tally_ ? a.tally_ : b.tally_; }

    T v_{};
    OpCounts* tally_ = nullptr;
};

template <class T>
bool is_finite(const Counted<T>& v) { return is_finite(v.value()); }
template <class T>
double to_double(const Counted<T>& v) { return to_double(v.value()); }

} // namespace divdiff
