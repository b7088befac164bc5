#include "initrec/harness.hpp"

#include "initrec/error.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

namespace initrec {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// 1-based line of the first occurrence of "key" in the text, or 0.
std::size_t locate_key(const std::string& text, const std::string& key)
{
    const auto pos = text.find('"' + key + '"');
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
}

class Reader {
public:
    Reader(const json& obj, std::string path, const std::string& text)
        : obj_(obj), path_(std::move(path)), text_(text)
    {
        if (!obj_.is_object()) error(path_, "expected an object");
    }

    [[noreturn]] void error(const std::string& field, const std::string& msg) const
    {
        const auto dot = field.find_last_of('.');
        const std::size_t line = locate_key(text_, dot == std::string::npos ? field
                                                                         : field.substr(dot + 1));
        std::string where = line ? "line " + std::to_string(line) + ": " : "";
        fail(ErrorKind::ConfigError, where + "field '" + field + "': " + msg);
    }

    std::string field(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json* find(const std::string& key)
    {
        used_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    double number(const std::string& key, std::optional<double> fallback = {})
    {
        const json* v = find(key);
        if (!v) {
            if (!fallback) error(field(key), "missing required number");
            return *fallback;
        }
        if (!v->is_number()) error(field(key), "expected a number");
        return v->get<double>();
    }

    std::optional<double> optional_number(const std::string& key)
    {
        const json* v = find(key);
        if (!v || v->is_null()) return std::nullopt;
        if (!v->is_number()) error(field(key), "expected a number");
        return v->get<double>();
    }

    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_number_unsigned()) error(field(key), "expected a nonnegative integer");
        return v->get<std::uint64_t>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) error(field(key), "expected true or false");
        return v->get<bool>();
    }

    std::string string(const std::string& key, std::optional<std::string> fallback = {})
    {
        const json* v = find(key);
        if (!v) {
            if (!fallback) error(field(key), "missing required string");
            return *fallback;
        }
        if (!v->is_string()) error(field(key), "expected a string");
        return v->get<std::string>();
    }

    std::vector<double> numbers(const std::string& key)
    {
        const json* v = find(key);
        if (!v) error(field(key), "missing required array");
        if (!v->is_array()) error(field(key), "expected an array of numbers");
        std::vector<double> out;
        for (const auto& x : *v) {
            if (!x.is_number()) error(field(key), "expected an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    Reader child(const std::string& key)
    {
        const json* v = find(key);
        if (!v) error(field(key), "missing required object");
        return Reader(*v, field(key), text_);
    }

    void finish() const
    {
        for (const auto& [key, value] : obj_.items())
            if (!used_.count(key)) error(field(key), "unknown key \"" + key + "\"");
    }

private:
    const json& obj_;
    std::string path_;
    const std::string& text_;
    std::set<std::string> used_;
};

void parse_operator(Reader r, OperatorConfig& op)
{
    const std::string tag = r.string("family", "dirichlet2");
    try {
        op.family = parse_family(tag);
    } catch (const Error&) {
        r.error(r.field("family"), "unknown operator family \"" + tag + "\"");
    }
    op.modes = r.unsigned_integer("modes", op.modes);
    if (op.modes < 1) r.error(r.field("modes"), "must be at least 1");
    op.grid_size = r.unsigned_integer("grid_size", 0);
    if (op.family == OperatorFamily::Pinned4) {
        for (const char* k : {"d", "c0", "allow_zero_mode"})
            if (r.has(k)) r.error(r.field(k), "not a parameter of the pinned4 family");
        op.d1 = r.number("d1", op.d1);
        op.d2 = r.number("d2", op.d2);
    } else {
        for (const char* k : {"d1", "d2"})
            if (r.has(k)) r.error(r.field(k), "not a parameter of second-order families");
        op.d = r.number("d", op.d);
        op.c0 = r.number("c0", op.c0);
        op.allow_zero_mode = r.boolean("allow_zero_mode", false);
    }
    r.finish();
}

WeightFunction parse_weight(const json& j, const std::string& path, const std::string& text)
{
    if (j.is_number()) return WeightFunction::constant(j.get<double>());
    Reader r(j, path, text);
    const std::string type = r.string("type");
    try {
        if (type == "constant") {
            const double v = r.number("value");
            r.finish();
            return WeightFunction::constant(v);
        }
        if (type == "poly") {
            auto c = r.numbers("coeffs");
            r.finish();
            return WeightFunction::polynomial(std::move(c));
        }
        if (type == "table") {
            auto t = r.numbers("t");
            auto b = r.numbers("b");
            r.finish();
            return WeightFunction::tabulated(std::move(t), std::move(b));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        r.error(path, e.what());
    }
    r.error(r.field("type"), "unknown weight type \"" + type + "\"");
}

StateSource parse_state(Reader r)
{
    StateSource s;
    if (r.has("coefficients")) {
        if (r.has("profile") || r.has("amplitude"))
            r.error(r.field("coefficients"), "give either coefficients or a profile");
        s.coefficients = r.numbers("coefficients");
    } else {
        s.profile = r.string("profile");
        s.amplitude = r.number("amplitude", 1.0);
        const bool known = s.profile == "gauss-bump" || s.profile.rfind("mode:", 0) == 0;
        if (!known) r.error(r.field("profile"), "unknown profile \"" + s.profile + "\"");
    }
    r.finish();
    return s;
}

void parse_condition(Reader r, const std::string& text, ConditionConfig& c)
{
    c.problem = r.string("problem", "E");
    if (c.problem != "E" && c.problem != "E100" && c.problem != "E200")
        r.error(r.field("problem"), "must be one of E, E100, E200");
    if (c.problem == "E") {
        c.a = r.number("a", 0.0);
    } else if (r.has("a")) {
        r.error(r.field("a"), "only problem E takes a");
    }
    if (const json* b = r.find("b")) {
        c.b = parse_weight(*b, r.field("b"), text);
        if (c.problem == "E100" && !c.b.constant_value())
            r.error(r.field("b"), "E100 requires scalar b");
    }
    if (r.has("M")) c.M = parse_state(r.child("M"));
    r.finish();
}

Nonlinearity parse_nonlinearity(Reader r)
{
    const std::string type = r.string("type");
    Nonlinearity f = ZeroNonlinearity{};
    if (type == "zero") {
    } else if (type == "power") {
        f = PowerLaw{r.number("kappa"), r.number("ell")};
    } else if (type == "memory") {
        f = MemoryKernel{r.number("c"), r.number("lambda"), r.number("ell"), std::nullopt};
    } else {
        r.error(r.field("type"), "unknown nonlinearity \"" + type + "\"");
    }
    r.finish();
    try {
        validate(f);
    } catch (const Error& e) {
        r.error(r.field("type"), e.what());
    }
    return f;
}

void parse_grid(Reader r, GridConfig& g)
{
    g.final_time = r.number("T", g.final_time);
    g.intervals = r.unsigned_integer("n", g.intervals);
    g.grading = r.optional_number("r");
    if (!(g.final_time > 0.0)) r.error(r.field("T"), "must be positive");
    if (g.intervals < 2) r.error(r.field("n"), "must be at least 2");
    if (g.grading && !(*g.grading >= 1.0)) r.error(r.field("r"), "must be at least 1");
    r.finish();
}

void parse_solver(Reader r, SolverConfig& s)
{
    s.tol = r.number("tol", s.tol);
    s.max_iter = r.unsigned_integer("max_iter", s.max_iter);
    s.theta = r.number("theta", s.theta);
    s.gamma = r.number("gamma", s.gamma);
    s.nu = r.optional_number("nu");
    s.delta0 = r.optional_number("delta0");
    s.small_time = r.boolean("small_time", false);
    if (!(s.tol > 0.0)) r.error(r.field("tol"), "must be positive");
    if (s.max_iter < 1) r.error(r.field("max_iter"), "must be at least 1");
    if (!(s.theta >= 0.0 && s.theta <= 1.0)) r.error(r.field("theta"), "must lie in [0, 1]");
    if (!(s.gamma >= 0.0 && s.gamma <= 1.0)) r.error(r.field("gamma"), "must lie in [0, 1]");
    r.finish();
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json numbers_json(std::span<const double> v)
{
    json out = json::array();
    for (double x : v) out.push_back(std::isfinite(x) ? json(x) : json(nullptr));
    return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

ExperimentConfig parse_config_text(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const auto line =
            1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
        fail(ErrorKind::ConfigError,
             "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
    ExperimentConfig cfg;
    Reader r(root, "", text);
    if (r.has("operator")) parse_operator(r.child("operator"), cfg.op);
    if (r.has("condition")) parse_condition(r.child("condition"), text, cfg.condition);
    if (r.has("nonlinearity")) cfg.nonlinearity = parse_nonlinearity(r.child("nonlinearity"));
    if (r.has("grid")) parse_grid(r.child("grid"), cfg.grid);
    if (r.has("solver")) parse_solver(r.child("solver"), cfg.solver);
    if (r.has("u0")) cfg.u0 = parse_state(r.child("u0"));
    if (r.has("roundtrip")) {
        Reader rt = r.child("roundtrip");
        cfg.observation_refinement = rt.unsigned_integer("observation_refinement", 4);
        if (cfg.observation_refinement < 1)
            rt.error(rt.field("observation_refinement"), "must be at least 1");
        rt.finish();
    }
    if (r.has("sweep")) {
        Reader sw = r.child("sweep");
        cfg.sweep_scales = sw.numbers("scales");
        sw.finish();
    }
    cfg.seed = r.unsigned_integer("seed", 0);
    r.finish();
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ConfigError, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

SpectralOperator build_operator(const ExperimentConfig& cfg)
{
    const auto& o = cfg.op;
    switch (o.family) {
    case OperatorFamily::Dirichlet2:
        return build_second_order(o.modes, o.d, o.c0, BoundaryCondition::Dirichlet, o.grid_size);
    case OperatorFamily::Neumann2:
        return build_second_order(o.modes, o.d, o.c0, BoundaryCondition::Neumann, o.grid_size,
                                  o.allow_zero_mode);
    case OperatorFamily::Pinned4:
        return build_fourth_order(o.modes, o.d1, o.d2, o.grid_size);
    }
    fail(ErrorKind::ConfigError, "unknown operator family");
}

TimeGrid build_grid(const ExperimentConfig& cfg)
{
    const double r = cfg.grid.grading.value_or(default_grading(cfg.solver.theta));
    return make_graded_grid(cfg.grid.final_time, cfg.grid.intervals, r);
}

TimeGrid build_observation_grid(const ExperimentConfig& cfg)
{
    const TimeGrid g = build_grid(cfg);
    return make_graded_grid(g.final_time(), g.intervals() * cfg.observation_refinement,
                            g.grading());
}

FractionalNormSpec build_norm_spec(const ExperimentConfig& cfg, const SpectralOperator& op)
{
    auto spec = default_norm_spec(op, cfg.solver.theta);
    if (cfg.solver.delta0) spec.delta0 = *cfg.solver.delta0;
    spec.validate(op);
    return spec;
}

std::vector<double> resolve_state(const StateSource& src, const SpectralOperator& op)
{
    const std::size_t n = op.mode_count();
    if (src.coefficients) {
        require(src.coefficients->size() == n, ErrorKind::ConfigError,
                "field 'coefficients': expected " + std::to_string(n) + " entries, got " +
                    std::to_string(src.coefficients->size()));
        return *src.coefficients;
    }
    std::vector<double> c(n, 0.0);
    if (src.profile.rfind("mode:", 0) == 0) {
        std::size_t k = 0;
        const auto digits = std::string_view(src.profile).substr(5);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        require(ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1 && k <= n,
                ErrorKind::ConfigError,
                "field 'profile': \"" + src.profile + "\" needs a mode in 1.." +
                    std::to_string(n));
        c[k - 1] = src.amplitude;
        return c;
    }
    require(src.profile == "gauss-bump", ErrorKind::ConfigError,
            "field 'profile': unknown profile \"" + src.profile + "\"");
    const auto x = op.grid_points();
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double y = (x[i] - 0.5 * std::numbers::pi) / 0.25;
        v[i] = std::exp(-0.5 * y * y);
    }
    c = analyze(op, v);
    const double norm = euclidean_norm(c);
    for (double& cj : c) cj *= src.amplitude / norm;
    return c;
}

NonlocalCondition build_condition(const ExperimentConfig& cfg)
{
    const auto& c = cfg.condition;
    if (c.problem == "E100") {
        const auto b = c.b.constant_value();
        require(b.has_value(), ErrorKind::ConfigError, "field 'condition.b': E100 requires scalar b");
        return ConditionE100{*b, {}};
    }
    if (c.problem == "E200") return ConditionE200{c.b, {}};
    return ConditionE{c.a, c.b, {}};
}

std::vector<double> synthesize_observation(const ExperimentConfig& cfg,
                                           const SpectralOperator& op,
                                           std::span<const double> u0)
{
    const TimeGrid fine = build_observation_grid(cfg);
    const Trajectory u = forward_solve(op, u0, cfg.nonlinearity, fine);
    return observe_condition(u, build_condition(cfg));
}

std::vector<double> resolve_observation(const ExperimentConfig& cfg, const SpectralOperator& op)
{
    require(cfg.condition.M.has_value(), ErrorKind::ConfigError,
            "field 'condition.M': required for this command");
    const auto& src = *cfg.condition.M;
    if (src.coefficients) return resolve_state(src, op);
    return synthesize_observation(cfg, op, resolve_state(src, op));
}

PicardOptions build_picard_options(const ExperimentConfig& cfg)
{
    PicardOptions o;
    o.tol = cfg.solver.tol;
    o.max_iter = cfg.solver.max_iter;
    o.small_time = cfg.solver.small_time;
    return o;
}

RoundTripResult roundtrip(const ExperimentConfig& cfg, std::span<const double> u0_true)
{
    const SpectralOperator op = build_operator(cfg);
    const FractionalNormSpec spec = build_norm_spec(cfg, op);
    RoundTripResult res;
    res.u0_true.assign(u0_true.begin(), u0_true.end());
    require(res.u0_true.size() == op.mode_count(), ErrorKind::InvalidInput,
            "u0 needs one coefficient per mode");

    auto start = std::chrono::steady_clock::now();
    try {
        res.M = synthesize_observation(cfg, op, u0_true);
    } catch (const Error& e) {
        res.failure_stage = "forward";
        res.failure_message = e.what();
        res.forward_seconds = seconds_since(start);
        return res;
    }
    res.forward_seconds = seconds_since(start);

    start = std::chrono::steady_clock::now();
    try {
        const NonlocalCondition cond = with_observation(build_condition(cfg), res.M);
        res.report = picard_recover(op, cond, cfg.nonlinearity, build_grid(cfg), spec,
                                    build_picard_options(cfg));
    } catch (const Error& e) {
        res.failure_stage = "recover";
        res.failure_message = e.what();
        res.backward_seconds = seconds_since(start);
        if (e.kind() == ErrorKind::IllPosedMode) throw;
        return res;
    }
    res.backward_seconds = seconds_since(start);
    res.u0_recovered = res.report->u0_recovered;
    std::vector<double> diff(op.mode_count());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = res.u0_recovered[j] - u0_true[j];
    res.error_e0 = euclidean_norm(diff);
    res.error_theta = fractional_norm(op, diff, spec);
    if (!res.report->converged) {
        res.failure_stage = "recover";
        res.failure_message = "fixed point iteration did not converge";
    }
    return res;
}

std::vector<SweepRow> sweep_threshold(const ExperimentConfig& cfg,
                                      std::span<const double> scales)
{
    const SpectralOperator op = build_operator(cfg);
    const FractionalNormSpec spec = build_norm_spec(cfg, op);
    const TimeGrid grid = build_grid(cfg);
    const auto M_base = resolve_observation(cfg, op);
    const NonlocalCondition base = with_observation(build_condition(cfg), M_base);

    double m_T = std::numeric_limits<double>::quiet_NaN();
    std::string threshold_error;
    try {
        ThresholdInputs in;
        in.seed = cfg.seed;
        m_T = estimate_threshold(op, base, cfg.nonlinearity, grid, spec, cfg.solver.gamma,
                                 cfg.solver.nu, in)
                  .m_T;
    } catch (const Error& e) {
        threshold_error = e.what();
    }

    std::vector<SweepRow> rows;
    for (double s : scales) {
        SweepRow row;
        row.scale = s;
        row.m_T = m_T;
        row.error = threshold_error;
        try {
            std::vector<double> M(M_base);
            for (double& m : M) m *= s;
            const auto rep = picard_recover(op, with_observation(base, std::move(M)),
                                            cfg.nonlinearity, grid, spec,
                                            build_picard_options(cfg));
            row.converged = rep.converged;
            row.iterations = rep.iterations;
            row.final_ratio = rep.contraction_ratios.empty()
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : rep.contraction_ratios.back();
            row.sigma_T0_norm = rep.sigma_T0_norm;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

CsvTable trajectory_table(const Trajectory& u)
{
    CsvTable t;
    t.header.emplace_back("t");
    for (std::size_t j = 0; j < u.mode_count(); ++j) t.header.push_back("c" + std::to_string(j + 1));
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        if (i == 0 && !u.includes_t0()) continue;
        std::vector<std::string> row{format_number(u.time(i))};
        for (double c : u.at(i)) row.push_back(format_number(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows)
{
    CsvTable t;
    t.header = {"scale", "converged", "iterations", "final_ratio", "sigma_T0_norm", "m_T", "error"};
    for (const auto& r : rows) {
        t.rows.push_back({format_number(r.scale), r.converged ? "1" : "0",
                          std::to_string(r.iterations), format_number(r.final_ratio),
                          format_number(r.sigma_T0_norm), format_number(r.m_T), r.error});
    }
    return t;
}

CsvTable spectral_table(const SpectralReport& report, const SpectralOperator& op)
{
    CsvTable t;
    t.header = {"mode", "lambda", "denominator", "scale", "margin", "pass"};
    for (std::size_t j = 0; j < report.margin.size(); ++j) {
        const bool ok = report.margin[j] > report.tolerance;
        t.rows.push_back({std::to_string(j + 1), format_number(op.eigenvalue(j)),
                          format_number(report.denominator[j]), format_number(report.scale[j]),
                          format_number(report.margin[j]), ok ? "1" : "0"});
    }
    return t;
}

std::string to_csv(const CsvTable& table)
{
    const auto cell = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    std::string out;
    const auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + cell(row[k]);
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    return out;
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path)
{
    const std::string text = to_csv(table);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::InvalidInput, "cannot write " + path.string());
    out << text;
}

json to_json(const FixedPointReport& r)
{
    json j;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["residual_weighted"] = numbers_json(r.residual_weighted);
    j["residual_sup"] = numbers_json(r.residual_sup);
    j["contraction_ratios"] = numbers_json(r.contraction_ratios);
    j["u0_recovered"] = numbers_json(r.u0_recovered);
    j["sigma_T0_norm"] = finite_or_null(r.sigma_T0_norm);
    j["threshold_m"] = r.threshold_m ? finite_or_null(*r.threshold_m) : json(nullptr);
    if (r.small_time_constant) j["small_time_constant"] = finite_or_null(*r.small_time_constant);
    j["warnings"] = r.warnings;
    return j;
}

json to_json(const RoundTripResult& r)
{
    json j;
    j["u0_true"] = numbers_json(r.u0_true);
    j["M"] = numbers_json(r.M);
    j["u0_recovered"] = numbers_json(r.u0_recovered);
    j["error_e0"] = finite_or_null(r.error_e0);
    j["error_theta"] = finite_or_null(r.error_theta);
    j["forward_seconds"] = r.forward_seconds;
    j["backward_seconds"] = r.backward_seconds;
    j["report"] = r.report ? to_json(*r.report) : json(nullptr);
    j["failure_stage"] = r.failure_stage.empty() ? json(nullptr) : json(r.failure_stage);
    if (!r.failure_message.empty()) j["failure_message"] = r.failure_message;
    return j;
}

json to_json(const SpectralReport& r)
{
    json j;
    j["problem"] = r.problem;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["denominator"] = numbers_json(r.denominator);
    j["scale"] = numbers_json(r.scale);
    j["margin"] = numbers_json(r.margin);
    j["violating_modes"] = r.violating;
    return j;
}

json to_json(const WellPosednessEstimate& e)
{
    json j;
    j["omega_T"] = e.omega_T;
    j["gamma0"] = e.gamma0;
    j["beta_value"] = e.beta_value;
    j["c_hat"] = e.c_hat;
    j["L_star"] = e.L_star;
    j["m_T"] = finite_or_null(e.m_T);
    j["unbounded"] = e.unbounded;
    j["exponents"] = {{"gamma", e.exponents.gamma},
                      {"theta", e.exponents.theta},
                      {"nu", e.exponents.nu},
                      {"ell", e.exponents.ell}};
    return j;
}

void emit_json(const json& j, const std::filesystem::path& path)
{
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::InvalidInput, "cannot write " + path.string());
    out << text;
}

}  // namespace initrec
