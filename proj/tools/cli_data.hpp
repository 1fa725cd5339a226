#pragma once

// Input loading and number formatting for the command line tool.

#include <divdiff/divdiff.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

using divdiff::Rational;

/// Bad input: reported with file position, exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataFile {
    std::string path;
    std::vector<std::string> x, y; // decimal text, ascending in x after load
    std::vector<int> line;         // source line of each row
    std::vector<int> original;     // row index in file order
};

inline std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& s)
{
    double v = 0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw divdiff::Error("not a decimal number: '" + s + "'");
    return v;
}

template <class T>
T parse_value(const std::string& s)
{
    if constexpr (std::is_same_v<T, Rational>)
        return divdiff::parse_rational(s);
    else
        return parse_double(s);
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline void sort_rows(DataFile& d)
{
    std::vector<int> idx(d.x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Rational> key;
    for (const auto& s : d.x) key.push_back(divdiff::parse_rational(s));
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key[a] < key[b]; });
    DataFile out;
    out.path = d.path;
    for (int i : idx) {
        out.x.push_back(d.x[i]);
        out.y.push_back(d.y[i]);
        out.line.push_back(d.line[i]);
        out.original.push_back(i);
    }
    for (std::size_t i = 1; i < out.x.size(); ++i)
        if (key[idx[i]] == key[idx[i - 1]])
            throw ParseError(d.path + ":" + std::to_string(out.line[i]) + ": duplicate x value " + out.x[i] +
                             " (also on line " + std::to_string(out.line[i - 1]) + ")");
    d = std::move(out);
}

inline std::string json_scalar_text(const nlohmann::json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw divdiff::Error("expected a number or a decimal string");
}

/// CSV (x,y per row, '#' comments, optional header) or JSON with "x" and
/// "f" (or "y") arrays. Rows are sorted ascending in x.
inline DataFile load_data(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    DataFile d;
    d.path = path;
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path + ": " + e.what());
        }
        const auto& ys = j.contains("f") ? j.at("f") : j.at("y");
        if (!j.contains("x") || j.at("x").size() != ys.size())
            throw ParseError(path + ": need \"x\" and \"f\" arrays of equal length");
        for (std::size_t i = 0; i < ys.size(); ++i) {
            try {
                d.x.push_back(json_scalar_text(j.at("x")[i]));
                d.y.push_back(json_scalar_text(ys[i]));
                parse_double(d.x.back());
                parse_double(d.y.back());
            } catch (const divdiff::Error& e) {
                throw ParseError(path + ": entry " + std::to_string(i) + ": " + e.what());
            }
            d.line.push_back(static_cast<int>(i) + 1);
        }
    } else {
        std::string raw;
        int lineno = 0;
        bool header_allowed = true;
        while (std::getline(in, raw)) {
            ++lineno;
            const std::string text = trim(raw);
            if (text.empty() || text[0] == '#') continue;
            const auto cells = split(text, ',');
            if (cells.size() != 2)
                throw ParseError(path + ":" + std::to_string(lineno) + ":1: expected 2 fields, found " +
                                 std::to_string(cells.size()));
            std::size_t col = 1;
            try {
                parse_double(cells[0]);
                col = cells[0].size() + 2;
                parse_double(cells[1]);
            } catch (const divdiff::Error& e) {
                if (header_allowed && d.x.empty()) {
                    header_allowed = false;
                    continue;
                }
                throw ParseError(path + ":" + std::to_string(lineno) + ":" + std::to_string(col) + ": " + e.what());
            }
            const double yv = parse_double(cells[1]);
            if (!std::isfinite(yv) || !std::isfinite(parse_double(cells[0])))
                throw ParseError(path + ":" + std::to_string(lineno) + ": non-finite value");
            header_allowed = false;
            d.x.push_back(cells[0]);
            d.y.push_back(cells[1]);
            d.line.push_back(lineno);
        }
    }
    if (d.x.empty()) throw ParseError(path + ": no data rows");
    sort_rows(d);
    return d;
}

template <class T>
divdiff::SampleSet<T> to_samples(const DataFile& d)
{
    divdiff::SampleSet<T> s;
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        s.x.push_back(parse_value<T>(d.x[i]));
        s.f.push_back(parse_value<T>(d.y[i]));
    }
    s.validate();
    return s;
}

inline std::string fmt(double v, int digits = 12)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string fmt(const Rational& v, int = 0) { return v.str(); }

inline std::string sci(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

template <class T>
nlohmann::json to_json(const T& v)
{
    if constexpr (std::is_same_v<T, Rational>)
        return v.str();
    else
        return v;
}

/// Uniform spacing per |(x_{i+1} - x_i) - h| <= 1e-12 |h|, h from the first gap.
template <class T>
bool is_uniform(const std::vector<T>& x)
{
    if (x.size() < 2) return false;
    const T h = x[1] - x[0];
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const T d = (x[i + 1] - x[i]) - h;
        if constexpr (std::is_same_v<T, Rational>) {
            if (d != 0) return false;
        } else if (std::abs(d) > 1e-12 * std::abs(h)) {
            return false;
        }
    }
    return true;
}

/// h/D(n_0, n_1, ...) with D the least common denominator.
inline std::string weight_display(const std::vector<Rational>& w, const std::string& unit)
{
    divdiff::BigInt den = 1;
    for (const auto& v : w) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
    std::string out = unit;
    if (den != 1) out += "/" + den.str();
    out += "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational scaled = w[i] * Rational(den);
        out += (i ? "," : "") + boost::multiprecision::numerator(scaled).str();
    }
    return out + ")";
}

inline std::pair<std::vector<std::string>, divdiff::BigInt> weight_numerators(const std::vector<Rational>& w)
{
    divdiff::BigInt den = 1;
    for (const auto& v : w) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
    std::vector<std::string> num;
    for (const auto& v : w) num.push_back(boost::multiprecision::numerator(v * Rational(den)).str());
    return {num, den};
}

} // namespace cli
