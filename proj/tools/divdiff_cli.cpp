// divdiff: tables, interpolation, derivatives and quadrature from tabulated
// data, plus the reproduction harness for the published tables.

#include "reproduce.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>

using namespace divdiff;
using cli::DataFile;
using cli::fmt;
using nlohmann::json;

namespace {

struct Globals {
    bool rational = false;
    bool as_json = false;
    std::string reference;
    std::string data_dir = DIVDIFF_DATA_DIR;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::function<double(double)> named_function(const std::string& name)
{
    static const std::map<std::string, std::function<double(double)>> fns{
        {"sin", [](double x) { return std::sin(x); }},
        {"cos", [](double x) { return std::cos(x); }},
        {"exp", [](double x) { return std::exp(x); }},
        {"table5", [](double x) { return oracle::table5_function(x); }},
        {"one", [](double) { return 1.0; }},
    };
    const auto it = fns.find(name);
    if (it == fns.end()) throw UsageError("unknown function '" + name + "' (sin, cos, exp, table5, one)");
    return it->second;
}

struct Grid {
    double a = 0, h = 0;
    int m = 0, n = 0;
};

Grid parse_grid(const std::string& text)
{
    const auto parts = cli::split(text, ',');
    if (parts.size() != 4) throw UsageError("--grid expects a,h,m,n");
    Grid g;
    try {
        g.a = cli::parse_double(parts[0]);
        g.h = cli::parse_double(parts[1]);
        g.m = std::stoi(parts[2]);
        g.n = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("--grid expects a,h,m,n with integer m and n");
    }
    if (g.h == 0 || g.m < 0 || g.n < 0) throw UsageError("--grid needs h != 0 and m, n >= 0");
    return g;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw)
{
    std::vector<std::string> out;
    for (const auto& r : raw)
        for (const auto& p : cli::split(r, ','))
            if (!p.empty()) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// table

struct TableArgs {
    std::string input, scheme = "newton";
    int r = 0;
    std::optional<int> centre; // integer scheme: index of position 0
};

template <class T>
int run_table(const Globals& g, const TableArgs& a)
{
    const DataFile d = cli::load_data(a.input);
    const auto s = cli::to_samples<T>(d);
    std::vector<std::vector<T>> cols;
    std::vector<std::vector<std::string>> tags;
    json extra = json::object();
    if (a.scheme == "newton") {
        cols = build_newton_table(s).d;
    } else if (a.scheme == "new") {
        cols = build_new_table(s, a.r).e;
    } else if (a.scheme == "combined") {
        const auto t = build_combined_table(s, a.r);
        cols = t.entries;
        for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
            tags.emplace_back();
            for (int j = 0; j < static_cast<int>(cols[i].size()); ++j)
                tags.back().push_back(t.part(i, j) == TablePart::newton ? "N" : "*");
        }
    } else if (a.scheme == "integer") {
        if (!cli::is_uniform(s.x)) throw Error("integer scheme needs evenly spaced x");
        std::optional<std::pair<int, int>> range;
        if (a.centre) range = std::make_pair(*a.centre, s.n() - *a.centre);
        const auto t = build_integer_table(s.f, a.r, range);
        cols = t.entries;
        json heads = json::array();
        for (const auto& v : t.column_heads) heads.push_back(cli::to_json(v));
        extra["column_heads"] = heads;
        extra["positions"] = t.positions;
        if (!g.as_json) {
            std::cout << "positions:";
            for (int p : t.positions) std::cout << ' ' << p;
            std::cout << "\ncolumn heads (Delta^i f / i!):";
            for (const auto& v : t.column_heads) std::cout << ' ' << fmt(v);
            std::cout << '\n';
        }
    } else {
        throw UsageError("unknown scheme '" + a.scheme + "' (newton, new, combined, integer)");
    }

    if (g.as_json) {
        json out{{"scheme", a.scheme}, {"r", a.r}, {"x", d.x}, {"f", d.y}};
        json jc = json::array();
        for (const auto& c : cols) {
            json col = json::array();
            for (const auto& v : c) col.push_back(cli::to_json(v));
            jc.push_back(col);
        }
        out["columns"] = jc;
        out.update(extra);
        std::cout << out.dump(1) << '\n';
        return 0;
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::cout << "order " << i << ":";
        for (std::size_t j = 0; j < cols[i].size(); ++j) {
            std::string cell = fmt(cols[i][j]);
            if (!tags.empty()) cell += tags[i][j] == "N" ? "" : "*";
            std::cout << ' ' << std::setw(16) << cell;
        }
        std::cout << '\n';
    }
    if (!tags.empty()) std::cout << "(* marks entries of the new scheme)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// interp

struct InterpArgs {
    std::string input, variant, prefix = "asc", rows;
    int r = 0;
    std::vector<std::string> xs;
    std::optional<int> tail;
    std::vector<std::string> tail_coeffs;
    std::optional<std::string> tail_origin, tail_step, centre;
};

std::optional<double> reference_at(const Globals& g, double x)
{
    if (g.reference.empty()) return std::nullopt;
    if (g.reference == "table5") return oracle::table5_function(x);
    static std::optional<DataFile> ref;
    if (!ref) ref = cli::load_data(g.reference);
    for (std::size_t i = 0; i < ref->x.size(); ++i)
        if (std::abs(cli::parse_double(ref->x[i]) - x) <= 1e-12 * std::max(1.0, std::abs(x)))
            return cli::parse_double(ref->y[i]);
    return std::nullopt;
}

template <class T>
SampleSet<T> select_rows(const SampleSet<T>& s, const std::string& rows)
{
    if (rows.empty()) return s;
    const auto parts = cli::split(rows, ':');
    if (parts.size() != 2) throw UsageError("--rows expects FROM:TO (0-based, TO exclusive)");
    const int lo = std::stoi(parts[0]), hi = std::stoi(parts[1]);
    if (lo < 0 || hi > static_cast<int>(s.size()) || lo >= hi) throw UsageError("--rows out of range");
    std::vector<int> idx;
    for (int i = lo; i < hi; ++i) idx.push_back(i);
    return s.permuted(idx);
}

// asc, desc, or centre=X: 0, 1, -1, 2, -2, ... about the node X
template <class T>
SampleSet<T> apply_prefix(const SampleSet<T>& s, const std::string& prefix)
{
    std::vector<int> idx;
    const int N = static_cast<int>(s.size());
    if (prefix == "asc") return s;
    if (prefix == "desc") {
        for (int i = N - 1; i >= 0; --i) idx.push_back(i);
        return s.permuted(idx);
    }
    if (prefix.rfind("centre=", 0) == 0 || prefix.rfind("center=", 0) == 0) {
        const T c = cli::parse_value<T>(prefix.substr(7));
        int k = -1;
        for (int i = 0; i < N; ++i)
            if (s.x[i] == c) k = i;
        if (k < 0) throw UsageError("centre " + prefix.substr(7) + " is not a node");
        idx.push_back(k);
        for (int d = 1; d < N; ++d)
            for (int q : {k + d, k - d})
                if (q >= 0 && q < N) idx.push_back(q);
        return s.permuted(idx);
    }
    throw UsageError("--prefix expects asc, desc or centre=X");
}

template <class T>
int run_interp(const Globals& g, const InterpArgs& a)
{
    const DataFile d = cli::load_data(a.input);
    const auto s = apply_prefix(select_rows(cli::to_samples<T>(d), a.rows), a.prefix);
    const auto xs = split_list(a.xs);
    if (xs.empty()) throw UsageError("interp needs at least one --x");

    std::optional<TailModel<T>> tail;
    if (a.tail || !a.tail_coeffs.empty()) {
        const T origin = a.tail_origin ? cli::parse_value<T>(*a.tail_origin) : s.x[0];
        const bool position = a.tail_step.has_value();
        const T step = position ? cli::parse_value<T>(*a.tail_step) : T(1);
        const auto basis = position ? TailBasis::position : TailBasis::argument;
        if (!a.tail_coeffs.empty()) {
            TailModel<T> m;
            m.r = a.r;
            m.basis = basis;
            m.origin = origin;
            m.step = step;
            for (const auto& c : split_list(a.tail_coeffs)) m.coeffs.push_back(cli::parse_value<T>(c));
            tail = m;
        } else {
            tail = fit_tail(s, a.r, *a.tail, basis, origin, step);
        }
        std::cerr << "tail:";
        for (const auto& c : tail->coeffs) std::cerr << ' ' << fmt(c);
        std::cerr << " (ascending)\n";
    }

    std::optional<CentralVariant> variant;
    if (!a.variant.empty()) {
        variant = parse_variant(a.variant);
        if (!cli::is_uniform(s.x)) throw Error("central variants need evenly spaced x");
    }

    // extended hull: node range widened by one mean gap
    T lo = s.x[0], hi = s.x[0];
    for (const auto& v : s.x) {
        lo = v < lo ? v : lo;
        hi = v > hi ? v : hi;
    }
    const double pad = s.size() > 1 ? to_double(hi - lo) / s.n() : 0.0;

    json rows = json::array();
    const bool with_ref = !g.reference.empty();
    if (!g.as_json) std::cout << (with_ref ? "x,value,error\n" : "x,value\n");
    for (const auto& xt : xs) {
        const T x = cli::parse_value<T>(xt);
        if (to_double(x) < to_double(lo) - pad || to_double(x) > to_double(hi) + pad)
            std::cerr << "warning: x=" << xt << " lies outside the node hull\n";
        T v;
        if (variant) {
            const T h = s.x[1] - s.x[0];
            const T c = a.centre ? cli::parse_value<T>(*a.centre) : s.x[s.n() / 2];
            TwoSided<T> ts;
            int m = -1;
            for (int i = 0; i <= s.n(); ++i)
                if (s.x[i] == c) m = i;
            if (m < 0) throw UsageError("--centre must be a node");
            ts.m = m;
            ts.values = s.f;
            v = interpolate_central(ts, a.r, T((x - c) / h), *variant);
        } else if (tail) {
            v = interpolate_with_tail(s, a.r, *tail, x);
        } else {
            v = interpolate_general(s, a.r, x);
        }
        const auto ref = reference_at(g, to_double(x));
        if (with_ref && !ref) std::cerr << "warning: no reference value at x=" << xt << '\n';
        if (g.as_json) {
            json row{{"x", xt}, {"value", cli::to_json(v)}};
            if (ref) row["error"] = to_double(v) - *ref;
            rows.push_back(row);
        } else {
            std::cout << xt << ',' << fmt(v);
            if (with_ref) std::cout << ',' << (ref ? cli::sci(to_double(v) - *ref) : "");
            std::cout << '\n';
        }
    }
    if (g.as_json) std::cout << json{{"r", a.r}, {"rows", rows}}.dump(1) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// diff

struct DiffArgs {
    std::string input, grid, func, method = "recursive";
    int t = 1, terms = 500, smoothing = 4;
    std::optional<std::string> at, fx;
    std::optional<double> h;
    bool counts = false;
};

void print_result(const Globals& g, json j)
{
    if (g.as_json) {
        std::cout << j.dump(1) << '\n';
        return;
    }
    for (auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

std::string stencil_text(const StencilWeights<Rational>& sw)
{
    auto [num, den] = cli::weight_numerators(sw.weights);
    std::string hp = sw.t > 1 ? "h^" + std::to_string(sw.t) : "h";
    std::string out = "(";
    for (std::size_t i = 0; i < num.size(); ++i) out += (i ? "," : "") + num[i];
    out += ")/" + (den == 1 ? hp : "(" + den.str() + hp + ")") + " on offsets (";
    for (std::size_t i = 0; i < sw.offsets.size(); ++i) out += (i ? "," : "") + std::to_string(sw.offsets[i]);
    return out + ")";
}

template <class T>
int run_diff_samples(const Globals& g, const DiffArgs& a)
{
    const DataFile d = cli::load_data(a.input);
    const auto s = cli::to_samples<T>(d);
    if (!a.at) throw UsageError("diff on tabulated data needs --at");
    const T x = cli::parse_value<T>(*a.at);
    std::optional<T> fx;
    if (a.fx) fx = cli::parse_value<T>(*a.fx);
    int node = -1;
    for (int i = 0; i <= s.n(); ++i)
        if (s.x[i] == x) node = i;

    json out;
    std::string method = a.method;
    if (method == "series") throw UsageError("series method needs --func (it samples beyond the table)");
    if (method == "recursive" && node >= 0) {
        if (cli::is_uniform(s.x)) {
            const T h = s.x[1] - s.x[0];
            const int m = node, n = s.n() - node;
            TwoSided<T> v;
            v.m = m;
            v.values = s.f;
            const auto sw = stencil_weights(m, n, a.t);
            std::cerr << "note: x is a node of an even grid; using the grid stencil\n";
            out["value"] = cli::to_json(twosided_derivative(v, h, a.t));
            out["method"] = "grid (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")";
            out["stencil"] = stencil_text(sw);
            out["accuracy_order"] = sw.accuracy_order;
            print_result(g, out);
            return 0;
        }
        std::cerr << "note: x is a node; the recursive formula is undefined there, using --method lincomb\n";
        method = "lincomb";
    }
    if (method == "recursive") {
        out["value"] = cli::to_json(derivative_uneven(s, x, a.t, fx));
        out["method"] = fx ? "recursive (f(x) known)" : "recursive";
        out["accuracy_order"] = s.n() + 1 - a.t + (fx ? 1 : 0);
        if (a.counts) {
            std::ostringstream os;
            SampleSet<double> sd;
            for (int i = 0; i <= s.n(); ++i) {
                sd.x.push_back(to_double(s.x[i]));
                sd.f.push_back(to_double(s.f[i]));
            }
            os << measure_derivative_ops(sd, to_double(x), a.t);
            out["op_counts"] = os.str();
        }
    } else if (method == "lincomb") {
        out["value"] = cli::to_json(derivative_lincomb(s, x, a.t, node >= 0 ? std::nullopt : fx));
        out["method"] = "lincomb";
        out["accuracy_order"] = s.n() + 1 - a.t;
    } else {
        throw UsageError("unknown method '" + a.method + "' (recursive, lincomb, series)");
    }
    print_result(g, out);
    return 0;
}

int run_diff_grid(const Globals& g, const DiffArgs& a)
{
    const Grid gr = parse_grid(a.grid);
    const auto f = named_function(a.func.empty() ? "table5" : a.func);
    json out;
    if (a.method == "series") {
        const double at = a.at ? cli::parse_double(*a.at) : gr.a;
        const double h = a.h.value_or(gr.h);
        out["value"] = series_derivative(f, at, h, a.t, a.terms, a.smoothing);
        out["method"] = "series (" + std::to_string(a.terms) + " terms, smoothing " + std::to_string(a.smoothing) + ")";
        print_result(g, out);
        return 0;
    }
    if (a.method == "lincomb") {
        std::vector<double> v;
        for (int i = 0; i <= gr.n; ++i) v.push_back(f(gr.a + i * gr.h));
        if (gr.m != 0) throw UsageError("grid lincomb uses forward data only (m = 0)");
        out["value"] = lincomb_grid_derivative(v, gr.h, a.t);
        out["method"] = "lincomb (even grid)";
        print_result(g, out);
        return 0;
    }
    if (a.method != "recursive") throw UsageError("unknown method '" + a.method + "'");
    TwoSided<double> v;
    v.m = gr.m;
    for (int i = -gr.m; i <= gr.n; ++i) v.values.push_back(f(gr.a + i * gr.h));
    const auto sw = stencil_weights(gr.m, gr.n, a.t);
    out["value"] = twosided_derivative(v, gr.h, a.t);
    out["method"] = "grid (m=" + std::to_string(gr.m) + ", n=" + std::to_string(gr.n) + ")";
    out["stencil"] = stencil_text(sw);
    out["accuracy_order"] = sw.accuracy_order;
    print_result(g, out);
    return 0;
}

// ---------------------------------------------------------------------------
// quad

struct QuadArgs {
    std::string input, grid, func;
    std::optional<std::string> at, h;
    bool central = false;
    int panels = 0, rule = 2;
};

template <class T>
int run_quad_samples(const Globals& g, const QuadArgs& a)
{
    const DataFile d = cli::load_data(a.input);
    const auto s = cli::to_samples<T>(d);
    json out;
    if (a.at) {
        const T x = cli::parse_value<T>(*a.at);
        T h;
        if (a.h) {
            h = cli::parse_value<T>(*a.h);
        } else {
            // local node gap: the interval holding x, or the nearest end interval
            int k = 0;
            while (k + 1 < s.n() && s.x[k + 1] < x) ++k;
            h = s.n() >= 1 ? T(s.x[k + 1] - s.x[k]) : T(1);
        }
        const auto plan = uneven_quad_plan(s, x, h);
        T v(0);
        json w = json::array();
        for (int i = 0; i <= s.n(); ++i) {
            v = v + plan.node_weights[i] * s.f[i];
            w.push_back(cli::to_json(plan.node_weights[i]));
        }
        out["value"] = cli::to_json(v);
        out["interval"] = {cli::to_json(x), cli::to_json(T(x + h))};
        out["weights"] = w;
        print_result(g, out);
        return 0;
    }
    if (!cli::is_uniform(s.x)) throw Error("quadrature without --at needs evenly spaced x");
    const T h = s.x[1] - s.x[0];
    if (a.central) {
        if (s.size() % 2 == 0) throw Error("central quadrature needs an odd number of points");
        TwoSided<T> v;
        v.m = s.n() / 2;
        v.values = s.f;
        out["value"] = cli::to_json(quad_central(v, h));
        out["weights"] = cli::weight_display(central_quad_weights(v.m).node_weights, "h");
    } else {
        out["value"] = cli::to_json(quad_even(s.f, h));
        out["weights"] = cli::weight_display(even_quad_weights(s.n()).node_weights, "h");
    }
    print_result(g, out);
    return 0;
}

int run_quad_grid(const Globals& g, const QuadArgs& a)
{
    const Grid gr = parse_grid(a.grid);
    const auto f = named_function(a.func.empty() ? "table5" : a.func);
    json out;
    if (a.panels > 0) {
        const double p = gr.a - gr.m * gr.h, q = gr.a + gr.n * gr.h;
        out["value"] = quad_composite(f, p, q, a.panels, a.rule);
        out["weights"] = cli::weight_display(even_quad_weights(a.rule).node_weights, "h");
        out["panels"] = a.panels;
        print_result(g, out);
        return 0;
    }
    if (a.central) {
        if (gr.m != gr.n) throw UsageError("--central needs m = n");
        TwoSided<double> v;
        v.m = gr.m;
        for (int i = -gr.m; i <= gr.n; ++i) v.values.push_back(f(gr.a + i * gr.h));
        out["value"] = quad_central(v, gr.h);
        out["weights"] = cli::weight_display(central_quad_weights(gr.n).node_weights, "h");
    } else {
        if (gr.m != 0) throw UsageError("forward quadrature grid needs m = 0 (use --central)");
        std::vector<double> v;
        for (int i = 0; i <= gr.n; ++i) v.push_back(f(gr.a + i * gr.h));
        out["value"] = quad_even(v, gr.h);
        out["weights"] = cli::weight_display(even_quad_weights(gr.n).node_weights, "h");
    }
    print_result(g, out);
    return 0;
}

// ---------------------------------------------------------------------------
// stencil

int run_stencil(const Globals& g, int m, int n, int t, bool central)
{
    const auto sw = central ? central_stencil(n, t) : stencil_weights(m, n, t);
    auto [num, den] = cli::weight_numerators(sw.weights);
    if (g.as_json) {
        json j{{"offsets", sw.offsets}, {"t", sw.t}, {"order", sw.accuracy_order}};
        json nj = json::array();
        for (const auto& v : num) nj.push_back(std::stoll(v));
        j["num"] = nj;
        j["den"] = std::stoll(den.str());
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "f^(" << t << ")(a) ~ " << stencil_text(sw) << "\naccuracy_order: " << sw.accuracy_order << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce

int run_reproduce(const Globals& g, const std::string& which)
{
    const auto reports = cli::reproduce(which, g.data_dir);
    int failures = 0;
    json all = json::array();
    for (const auto& r : reports) {
        failures += r.failures();
        if (g.as_json) {
            json cases = json::array();
            for (const auto& c : r.cases) {
                json jc{{"id", c.id}, {"ref", c.ref}, {"pass", c.pass}};
                if (c.expected_text.empty()) {
                    jc["expected"] = c.expected;
                    jc["computed"] = c.computed;
                    jc["abs_dev"] = std::abs(c.computed - c.expected);
                    jc["rel_dev"] = c.expected != 0 ? std::abs(c.computed - c.expected) / std::abs(c.expected) : 0.0;
                    jc["tolerance"] = c.tolerance;
                } else {
                    jc["expected"] = c.expected_text;
                    jc["computed"] = c.computed_text;
                }
                cases.push_back(jc);
            }
            all.push_back({{"which", r.which},
                           {"cases", cases},
                           {"passed", static_cast<int>(r.cases.size()) - r.failures()},
                           {"failed", r.failures()},
                           {"notes", r.notes}});
            continue;
        }
        for (const auto& c : r.cases) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << "  [" << c.ref << "]  ";
            if (c.expected_text.empty())
                std::cout << "expected " << cli::sci(c.expected) << " computed " << cli::sci(c.computed) << " |dev| "
                          << cli::sci(std::abs(c.computed - c.expected)) << " tol " << cli::sci(c.tolerance);
            else
                std::cout << "expected " << c.expected_text << " computed " << c.computed_text;
            std::cout << '\n';
        }
        for (const auto& note : r.notes) std::cout << "note: " << note << '\n';
        std::cout << r.which << ": " << r.cases.size() - r.failures() << "/" << r.cases.size() << " passed\n";
    }
    if (g.as_json) std::cout << json{{"reports", all}, {"ok", failures == 0}}.dump(1) << '\n';
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"divdiff: divided-difference interpolation, differentiation and quadrature"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--rational", g.rational, "exact rational arithmetic (tabulated input only)");
    app.add_flag("--json", g.as_json, "machine-readable output");
    app.add_option("--reference", g.reference, "reference values: table5 or a CSV file of x,y");
    app.add_option("--data-dir", g.data_dir, "fixture directory for reproduce");
    app.fallthrough();

    TableArgs ta;
    auto* table = app.add_subcommand("table", "build a divided-difference table");
    table->add_option("input", ta.input, "CSV or JSON data")->required();
    table->add_option("--scheme", ta.scheme, "newton, new, combined or integer");
    table->add_option("--r", ta.r, "split parameter");
    table->add_option("--centre,--center", ta.centre, "integer scheme: row index of position 0 (signed order)");

    InterpArgs ia;
    auto* interp = app.add_subcommand("interp", "interpolate at the given x values");
    interp->add_option("input", ia.input)->required();
    interp->add_option("--r", ia.r, "split parameter");
    interp->add_option("--x", ia.xs, "evaluation points (repeat or comma-separate)")->required();
    interp->add_option("--rows", ia.rows, "use rows FROM:TO after sorting");
    interp->add_option("--prefix", ia.prefix, "node order: asc, desc or centre=X");
    interp->add_option("--tail", ia.tail, "fit a tail polynomial of this degree");
    interp->add_option("--tail-coeffs", ia.tail_coeffs, "tail coefficients, ascending");
    interp->add_option("--tail-origin", ia.tail_origin);
    interp->add_option("--tail-step", ia.tail_step, "use the position coordinate (x - origin)/step");
    interp->add_option("--variant", ia.variant, "central variant on an even grid");
    interp->add_option("--centre,--center", ia.centre, "central variant: x of position 0");

    DiffArgs da;
    auto* diff = app.add_subcommand("diff", "derivative estimate");
    diff->add_option("input", da.input);
    diff->add_option("--grid", da.grid, "a,h,m,n: sample --func at a-mh..a+nh");
    diff->add_option("--func", da.func, "sin, cos, exp, table5 or one");
    diff->add_option("--t", da.t, "derivative order");
    diff->add_option("--at", da.at, "evaluation point");
    diff->add_option("--fx", da.fx, "known f at the evaluation point");
    diff->add_option("--method", da.method, "recursive, lincomb or series");
    diff->add_option("--terms", da.terms, "series terms");
    diff->add_option("--smoothing", da.smoothing, "series tail averaging depth");
    diff->add_option("--step", da.h, "series step h");
    diff->add_flag("--counts", da.counts, "report operation counts");

    QuadArgs qa;
    auto* quad = app.add_subcommand("quad", "integral estimate");
    quad->add_option("input", qa.input);
    quad->add_option("--grid", qa.grid, "a,h,m,n");
    quad->add_option("--func", qa.func);
    quad->add_option("--at", qa.at, "uneven rule: integrate over [at, at+h]");
    quad->add_option("--step", qa.h, "step h");
    quad->add_flag("--central", qa.central, "symmetric rule");
    quad->add_option("--panels", qa.panels, "composite rule over the grid span");
    quad->add_option("--rule", qa.rule, "points-1 of the composite panel rule");

    int sm = 0, sn = 0, st = 1;
    bool scentral = false;
    auto* stencil = app.add_subcommand("stencil", "derivative stencil weights");
    stencil->add_option("--m", sm);
    stencil->add_option("--n", sn);
    stencil->add_option("--t", st);
    stencil->add_flag("--central", scentral, "symmetric stencil over -n..n");

    std::string which = "all";
    auto* repro = app.add_subcommand("reproduce", "check the published tables and formulas");
    repro->add_option("which", which)
        ->check(CLI::IsMember({"table5", "table6", "table7", "table8", "table9", "stencils", "quadweights", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*table) return g.rational ? run_table<Rational>(g, ta) : run_table<double>(g, ta);
        if (*interp) return g.rational ? run_interp<Rational>(g, ia) : run_interp<double>(g, ia);
        if (*diff) {
            if (!da.grid.empty()) {
                if (g.rational) throw UsageError("--rational needs tabulated input");
                return run_diff_grid(g, da);
            }
            if (da.input.empty()) throw UsageError("diff needs an input file or --grid");
            return g.rational ? run_diff_samples<Rational>(g, da) : run_diff_samples<double>(g, da);
        }
        if (*quad) {
            if (!qa.grid.empty()) {
                if (g.rational) throw UsageError("--rational needs tabulated input");
                return run_quad_grid(g, qa);
            }
            if (qa.input.empty()) throw UsageError("quad needs an input file or --grid");
            return g.rational ? run_quad_samples<Rational>(g, qa) : run_quad_samples<double>(g, qa);
        }
        if (*stencil) return run_stencil(g, sm, sn, st, scentral);
        if (*repro) return run_reproduce(g, which);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const cli::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
