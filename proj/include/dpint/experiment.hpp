#pragma once

// Configuration-driven experiments: a small key = value spec format, a
// dispatcher onto the confinement, degree and height analyzers, and CSV /
// JSON report writers.
//
// Spec format: one `key = value` per line; `#` starts a comment; blank lines
// are ignored; keys may appear in any order and at most once. Unknown keys
// are rejected. See ExperimentSpec for the keys and their defaults.

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "confinement.hpp"
#include "degree_analyzer.hpp"
#include "expr.hpp"
#include "height_analyzer.hpp"

namespace dpint {

inline constexpr const char* kEngineName = "dpint";
inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

/// A spec that parsed but names an invalid experiment; `field` is the key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class ExperimentKind { confine, degrees, heights, decompose };
enum class OutputFormat { csv, json };

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::confine: return "confine";
        case ExperimentKind::degrees: return "degrees";
        case ExperimentKind::heights: return "heights";
        default: return "decompose";
    }
}
inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline ExperimentKind parse_kind(const std::string& s) {
    if (s == "confine") return ExperimentKind::confine;
    if (s == "degrees") return ExperimentKind::degrees;
    if (s == "heights") return ExperimentKind::heights;
    if (s == "decompose") return ExperimentKind::decompose;
    throw ValidationError("kind", "expected confine|degrees|heights|decompose, got '" + s + "'");
}
inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ValidationError("format", "expected csv|json, got '" + s + "'");
}

namespace detail {

inline std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline std::string join_list(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

/// Shortest decimal that reads back to the same double.
inline std::string format_double_exact(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::stod(buf) == x) break;
    }
    return buf;
}

inline long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ValidationError(key, "expected an integer, got '" + v + "'");
    }
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ValidationError(key, "expected a real number, got '" + v + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError(key, "expected true|false, got '" + v + "'");
}

}  // namespace detail

/// A complete experiment description. Keys of the text form in brackets.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::confine;  // [kind]
    std::string a = "0", b = "j", c = "1";          // [a] [b] [c], rational functions of j
    std::string seed0 = "1", seed1 = "z";           // [seed0] [seed1]: in z (degrees) or rational literals (heights)
    long j_lo = 2, j_hi = 50;                       // [j_lo] [j_hi]: confinement scan range
    long start = 0;                                 // [start]: index of seed0 (r0 for heights)
    long steps = 30;                                // [steps]
    double delta = kDefaultDelta;                   // [delta]
    std::vector<std::string> places{"inf"};         // [places]
    double tail_fraction = kDefaultTailFraction;    // [tail_fraction]
    long window = static_cast<long>(kDefaultLaurentWindow);  // [window]
    bool fast_degrees = false;                      // [fast_degrees]
    std::vector<std::string> values{"12/35"};       // [values]: decompose inputs
    std::string out;                                // [out]: empty means stdout
    OutputFormat format = OutputFormat::json;       // [format]

    /// Defaults for a given kind (kind-specific seeds and step counts).
    static ExperimentSpec defaults(ExperimentKind k) {
        ExperimentSpec s;
        s.kind = k;
        if (k == ExperimentKind::heights) {
            s.seed0 = "1";
            s.seed1 = "2";
            s.start = 1;
            s.steps = 200;
        }
        return s;
    }

    void set(const std::string& key, const std::string& value) {
        if (key == "kind") kind = parse_kind(value);
        else if (key == "a") a = value;
        else if (key == "b") b = value;
        else if (key == "c") c = value;
        else if (key == "seed0") seed0 = value;
        else if (key == "seed1") seed1 = value;
        else if (key == "j_lo") j_lo = detail::parse_long(key, value);
        else if (key == "j_hi") j_hi = detail::parse_long(key, value);
        else if (key == "start") start = detail::parse_long(key, value);
        else if (key == "steps") steps = detail::parse_long(key, value);
        else if (key == "delta") delta = detail::parse_double(key, value);
        else if (key == "places") places = detail::split_list(value);
        else if (key == "tail_fraction") tail_fraction = detail::parse_double(key, value);
        else if (key == "window") window = detail::parse_long(key, value);
        else if (key == "fast_degrees") fast_degrees = detail::parse_bool(key, value);
        else if (key == "values") values = detail::split_list(value);
        else if (key == "out") out = value;
        else if (key == "format") format = parse_format(value);
        else throw ValidationError(key, "unknown key");
    }

    /// Ordered key/value pairs; the text and JSON echoes are built from these.
    std::vector<std::pair<std::string, std::string>> pairs() const {
        return {{"kind", to_string(kind)},
                {"a", a},
                {"b", b},
                {"c", c},
                {"seed0", seed0},
                {"seed1", seed1},
                {"j_lo", std::to_string(j_lo)},
                {"j_hi", std::to_string(j_hi)},
                {"start", std::to_string(start)},
                {"steps", std::to_string(steps)},
                {"delta", detail::format_double_exact(delta)},
                {"places", detail::join_list(places)},
                {"tail_fraction", detail::format_double_exact(tail_fraction)},
                {"window", std::to_string(window)},
                {"fast_degrees", fast_degrees ? "true" : "false"},
                {"values", detail::join_list(values)},
                {"out", out},
                {"format", to_string(format)}};
    }

    /// Canonical text form; parse(echo()) reproduces the spec.
    std::string echo() const {
        std::string s;
        for (const auto& [k, v] : pairs()) s += k + " = " + v + "\n";
        return s;
    }

    std::vector<Place> parsed_places() const {
        std::vector<Place> out;
        for (const auto& p : places) {
            try {
                out.push_back(Place::parse(p));
            } catch (const std::exception& e) {
                throw ValidationError("places", e.what());
            }
        }
        return out;
    }

    CoefficientFamily family() const {
        QFunc fa = field_expr("a", a, "j"), fb = field_expr("b", b, "j"), fc = field_expr("c", c, "j");
        if (fc.is_zero()) throw ValidationError("c", "c must not vanish identically (c ≢ 0)");
        return {std::move(fa), std::move(fb), std::move(fc)};
    }

    QFunc seed_function(int which) const {
        return field_expr(which ? "seed1" : "seed0", which ? seed1 : seed0, "z");
    }

    BigRational seed_rational(int which) const { return rational_literal(which ? "seed1" : "seed0", which ? seed1 : seed0); }

    std::vector<BigRational> parsed_values() const {
        std::vector<BigRational> out;
        for (const auto& v : values) out.push_back(rational_literal("values", v));
        return out;
    }

    /// Throws ValidationError naming the first offending field.
    void validate() const {
        (void)family();
        if (!(delta > 0 && delta < 0.5)) throw ValidationError("delta", "must lie in (0, 1/2)");
        if (!(tail_fraction > 0 && tail_fraction <= 1)) throw ValidationError("tail_fraction", "must lie in (0, 1]");
        if (window < 1) throw ValidationError("window", "must be positive");
        if (steps < 0) throw ValidationError("steps", "must be non-negative");
        switch (kind) {
            case ExperimentKind::confine:
                if (j_lo > j_hi) throw ValidationError("j_lo", "empty range [j_lo, j_hi]");
                break;
            case ExperimentKind::degrees:
                (void)seed_function(0);
                (void)seed_function(1);
                break;
            case ExperimentKind::heights:
                (void)seed_rational(0);
                (void)seed_rational(1);
                if (places.empty()) throw ValidationError("places", "at least one place is required");
                (void)parsed_places();
                break;
            case ExperimentKind::decompose:
                if (values.empty()) throw ValidationError("values", "at least one value is required");
                for (const auto& v : parsed_values()) {
                    if (v.is_zero()) throw ValidationError("values", "zero has no height decomposition");
                }
                break;
        }
    }

    friend bool operator==(const ExperimentSpec& x, const ExperimentSpec& y) { return x.pairs() == y.pairs(); }

private:
    static QFunc field_expr(const std::string& key, const std::string& text, const std::string& var) {
        try {
            return parse_expression(text, var);
        } catch (const ParseError& e) {
            throw ValidationError(key, e.what());
        } catch (const DomainError& e) {
            throw ValidationError(key, e.what());
        }
    }
    static BigRational rational_literal(const std::string& key, const std::string& text) {
        try {
            return BigRational::parse(text);
        } catch (const std::exception& e) {
            throw ValidationError(key, std::string("expected a rational literal: ") + e.what());
        }
    }
};

/// Parses and validates spec text. Syntax problems raise ParseError with the
/// line number as position; semantic problems raise ValidationError.
inline ExperimentSpec parse_spec(std::string_view text) {
    std::map<std::string, std::pair<std::string, std::size_t>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value' on line");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "missing key on line");
        if (!entries.emplace(key, std::make_pair(value, lineno)).second) {
            throw ParseError(lineno, "duplicate key '" + key + "' on line");
        }
    }
    auto k = entries.find("kind");
    if (k == entries.end()) throw ValidationError("kind", "missing");
    ExperimentSpec spec = ExperimentSpec::defaults(parse_kind(k->second.first));
    for (const auto& [key, v] : entries) spec.set(key, v.first);
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Reports

/// Exact "num/den" text (an integer when den = 1) up to kMaxExactDigits
/// total digits; beyond that a scientific summary "~m.mmmmmmmmmmmE<exp>".
inline constexpr std::size_t kMaxExactDigits = 4096;

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string value_summary(const BigRational& x) {
    const std::size_t dn = mpz_sizeinbase(x.num_ref().get_mpz_t(), 10);
    const std::size_t dd = mpz_sizeinbase(x.den_ref().get_mpz_t(), 10);
    if (dn + dd <= kMaxExactDigits) return x.to_string();
    // log10 |x| from the exact height machinery
    const double l10 = log_abs_at_place(x, Place::infinity()) / std::log(10.0);
    const double e = std::floor(l10);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s~%.11fE%+.0f", sgn(x.num_ref()) < 0 ? "-" : "", std::pow(10.0, l10 - e), e);
    return buf;
}

struct RunReport {
    ExperimentSpec spec;
    nlohmann::json result;                  // analyzer output
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    double elapsed_seconds = 0;

    /// The full JSON document; `timing_seconds` is the only run-dependent field.
    nlohmann::json to_json() const {
        nlohmann::json spec_obj = nlohmann::json::object();
        for (const auto& [k, v] : spec.pairs()) spec_obj[k] = v;
        return {{"schema", kSchemaVersion},
                {"engine", {{"name", kEngineName}, {"version", kEngineVersion}}},
                {"kind", to_string(spec.kind)},
                {"spec", spec_obj},
                {"result", result},
                {"timing_seconds", elapsed_seconds}};
    }

    std::string to_csv() const {
        auto esc = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string o = "\"";
            for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return o + "\"";
        };
        std::string out;
        auto row = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + esc(r[i]);
            out += "\n";
        };
        row(csv_header);
        for (const auto& r : csv_rows) row(r);
        return out;
    }

    std::string render(OutputFormat f) const { return f == OutputFormat::csv ? to_csv() : to_json().dump(2) + "\n"; }
};

namespace detail {

inline nlohmann::json optional_json(const std::optional<long>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); }
inline nlohmann::json optional_json(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); }

inline void run_confine(const ExperimentSpec& spec, RunReport& rep) {
    CoefficientFamily fam = spec.family();
    ConfinementScan scan = confinement_scan(fam, spec.j_lo, spec.j_hi, static_cast<std::size_t>(spec.window));
    nlohmann::json per = nlohmann::json::array();
    rep.csv_header = {"j", "laurent_verdict", "residual_a", "residual_c", "residual_b", "cross_check"};
    for (const auto& r : scan.reports) {
        if (r.laurent_verdict == LaurentVerdict::indeterminate) {
            throw PrecisionExhausted("series verdict at j = " + std::to_string(r.base_index) +
                                     " is indeterminate at window " + std::to_string(r.window_used) +
                                     "; increase the window");
        }
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : r.orbit_valuations) vals.push_back(optional_json(v));
        per.push_back({{"j", r.base_index},
                       {"laurent_verdict", to_string(r.laurent_verdict)},
                       {"residuals", {r.residuals[0].to_string(), r.residuals[1].to_string(), r.residuals[2].to_string()}},
                       {"orbit_valuations", vals},
                       {"window", r.window_used},
                       {"cross_check", r.cross_check_ok()}});
        rep.csv_rows.push_back({std::to_string(r.base_index), to_string(r.laurent_verdict), value_summary(r.residuals[0]),
                                value_summary(r.residuals[1]), value_summary(r.residuals[2]),
                                r.cross_check_ok() ? "ok" : "mismatch"});
    }
    nlohmann::json verdict = {{"form", to_string(scan.verdict.form)}};
    if (scan.verdict.parameters) {
        const auto& p = *scan.verdict.parameters;
        verdict["parameters"] = {{"A", p.A.to_string()}, {"B", p.B.to_string()}, {"C", p.C.to_string()}};
    }
    rep.result = {{"verdict", verdict},
                  {"identities",
                   {{"a_vanishes", scan.identities.a_vanishes},
                    {"c_two_periodic", scan.identities.c_two_periodic},
                    {"b_second_difference_vanishes", scan.identities.b_second_difference_vanishes}}},
                  {"reports", per},
                  {"skipped", scan.skipped}};
}

inline void run_degrees(const ExperimentSpec& spec, RunReport& rep) {
    CoefficientFamily fam = spec.family();
    QFunc y0 = spec.seed_function(0), y1 = spec.seed_function(1);
    std::vector<long> degrees;
    nlohmann::json extra = nlohmann::json::object();
    if (spec.fast_degrees) {
        degrees = degrees_modular(fam, y0, y1, spec.steps, spec.start);
        extra["method"] = "modular";
    } else {
        FieldOrbit orbit = iterate_field(fam, y0, y1, spec.steps, spec.start);
        degrees = orbit.degrees;
        extra["method"] = "exact";
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& o : local_order_trace(orbit, ProjectivePoint<BigRational>::at(BigRational(0)))) {
            trace.push_back(optional_json(o));
        }
        extra["local_orders_at_0"] = trace;
    }
    std::vector<long> cum = cumulative_degree(degrees);
    rep.csv_header = {"j", "degree", "cumulative_degree"};
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        rep.csv_rows.push_back({std::to_string(spec.start + static_cast<long>(i)), std::to_string(degrees[i]),
                                std::to_string(cum[i])});
    }
    rep.result = extra;
    rep.result["degrees"] = degrees;
    rep.result["cumulative_degrees"] = cum;
    try {
        EntropyEstimate e = entropy_estimate(spec.start, degrees, spec.tail_fraction);
        rep.result["entropy"] = {{"slope", e.slope},
                                 {"endpoint_slope", e.endpoint_slope},
                                 {"window", {e.tail_first, e.tail_last}}};
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            xs.push_back(static_cast<double>(spec.start + static_cast<long>(i)));
            ys.push_back(static_cast<double>(degrees[i]));
        }
        QuadraticFit q = quadratic_fit(xs, ys);
        rep.result["quadratic_fit"] = {{"c0", q.c0}, {"c1", q.c1}, {"c2", q.c2}, {"relative_residual", q.relative_residual}};
    } catch (const DomainError& e) {
        rep.result["entropy"] = nullptr;
        rep.result["entropy_note"] = e.what();
    }
}

inline nlohmann::json lemma_json(const std::vector<LemmaCheckRecord>& recs, bool with_parts) {
    nlohmann::json list = nlohmann::json::array();
    long premises = 0, held = 0;
    for (const auto& r : recs) {
        if (r.premise_held) {
            ++premises;
            if (r.conclusion_held) ++held;
        }
        nlohmann::json j = {{"index", r.index},
                            {"premise_held", r.premise_held},
                            {"conclusion_held", r.premise_held ? nlohmann::json(r.conclusion_held) : nlohmann::json()},
                            {"branch", to_string(r.which_branch)},
                            {"details", r.details}};
        if (with_parts) {
            nlohmann::json parts = nlohmann::json::array();
            for (const auto& p : r.parts) parts.push_back(p ? nlohmann::json(*p) : nlohmann::json());
            j["parts"] = parts;
        }
        list.push_back(std::move(j));
    }
    return {{"premise_count", premises}, {"conclusion_count", held}, {"records", list}};
}

inline void run_heights(const ExperimentSpec& spec, RunReport& rep) {
    CoefficientFamily fam = spec.family();
    RationalOrbit orbit = iterate_rationals(fam, spec.start, spec.seed_rational(0), spec.seed_rational(1), spec.steps);
    std::vector<double> cum = cumulative_height(orbit);
    auto ratio = admissibility_ratio(orbit);
    rep.csv_header = {"n", "value", "height", "cumulative_height", "coefficient_height", "admissibility_ratio"};
    nlohmann::json heights = nlohmann::json::array();
    for (std::size_t i = 0; i < orbit.iterates.size(); ++i) {
        rep.csv_rows.push_back({std::to_string(orbit.start_index + static_cast<long>(i)), value_summary(orbit.iterates[i]),
                                format_real(orbit.heights[i]), format_real(cum[i]), format_real(orbit.coeff_heights[i]),
                                ratio[i] ? format_real(*ratio[i]) : std::string()});
        heights.push_back(orbit.heights[i]);
    }
    rep.result = {{"start_index", orbit.start_index}, {"heights", heights}};
    nlohmann::json ratios = nlohmann::json::array();
    for (const auto& r : ratio) ratios.push_back(optional_json(r));
    rep.result["admissibility_ratio"] = ratios;
    try {
        GrowthReport g = classify_growth(orbit);
        rep.result["growth"] = {{"model", to_string(g.model)},
                                {"poly_exponent", g.poly_exponent},
                                {"exp_rate", g.exp_rate},
                                {"residuals", {{"polynomial", g.poly_residual}, {"exponential", g.exp_residual}}},
                                {"window", {g.window_first, g.window_last}}};
    } catch (const DomainError& e) {
        rep.result["growth"] = nullptr;
        rep.result["growth_note"] = e.what();
    }
    const bool a_zero = fam.a().is_zero();
    nlohmann::json lemmas = nlohmann::json::object();
    for (const Place& v : spec.parsed_places()) {
        lemmas[v.to_string()] = a_zero ? lemma_json(verify_confinement_lemma(orbit, fam, v, spec.delta), true)
                                       : lemma_json(verify_blowup_lemma(orbit, fam, v, spec.delta), false);
    }
    rep.result["lemma"] = a_zero ? "confinement" : "blowup";
    rep.result["lemma_checks"] = lemmas;
}

inline void run_decompose(const ExperimentSpec& spec, RunReport& rep) {
    rep.csv_header = {"value", "place", "log_plus_contribution", "total", "log_height"};
    nlohmann::json list = nlohmann::json::array();
    for (const auto& x : spec.parsed_values()) {
        HeightDecomposition d = height_decomposition(x);
        const double lh = log_height(x);
        nlohmann::json contrib = nlohmann::json::object();
        for (const auto& [v, c] : d.contributions) {
            contrib[v.to_string()] = c;
            rep.csv_rows.push_back({value_summary(x), v.to_string(), format_real(c), format_real(d.total), format_real(lh)});
        }
        rep.csv_rows.push_back({value_summary(x), "total", "", format_real(d.total), format_real(lh)});
        list.push_back({{"value", value_summary(x)},
                        {"contributions", contrib},
                        {"total", d.total},
                        {"exact_height", d.exact_total.get_str()},
                        {"log_height", lh}});
    }
    rep.result = {{"decompositions", list}};
}

}  // namespace detail

/// Validates and runs the experiment. Analyzer errors propagate unchanged
/// (SingularOrbitError, PrecisionExhausted, PoleError, DomainError).
inline RunReport run(const ExperimentSpec& spec) {
    spec.validate();
    RunReport rep;
    rep.spec = spec;
    auto t0 = std::chrono::steady_clock::now();
    switch (spec.kind) {
        case ExperimentKind::confine: detail::run_confine(spec, rep); break;
        case ExperimentKind::degrees: detail::run_degrees(spec, rep); break;
        case ExperimentKind::heights: detail::run_heights(spec, rep); break;
        case ExperimentKind::decompose: detail::run_decompose(spec, rep); break;
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace dpint
