#include <fracgreen/config.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include <fracgreen/errors.hpp>
#include <fracgreen/symbol.hpp>

namespace fracgreen {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string joined(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config field \"" + path + "\": " + what);
}

// Reject unknown keys so typos surface as errors instead of silent defaults.
void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known) fail(joined(path, item.key().c_str()), "unknown field");
    }
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(joined(path, key), "required");
    return *it;
}

double as_num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

long as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        fail(path, "expected an integer");
    return j.get<long>();
}

std::string as_str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

const json& as_obj(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const json& as_arr(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::vector<double> as_num_vec(const json& j, const std::string& path) {
    as_arr(j, path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_num(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<double> gaussian_samples(const Grid1D& grid, double center,
                                     double width, double amplitude) {
    std::vector<double> v(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double u = (grid.x(i) - center) / width;
        v[i] = amplitude * std::exp(-u * u);
    }
    return v;
}

InitialData parse_data(const json& j, const Grid1D& grid,
                       const std::string& path) {
    as_obj(j, path);
    const std::string shape = as_str(require(j, path, "shape"),
                                     joined(path, "shape"));
    if (shape == "zero") {
        check_keys(j, path, {"shape"});
        return InitialData::zero_data();
    }
    if (shape == "delta") {
        check_keys(j, path, {"shape"});
        return InitialData::delta_data();
    }
    if (shape == "gaussian") {
        check_keys(j, path, {"shape", "center", "width", "amplitude"});
        const double center =
            j.contains("center") ? as_num(j["center"], joined(path, "center"))
                                 : 0.0;
        const double width =
            j.contains("width") ? as_num(j["width"], joined(path, "width"))
                                : 1.0;
        const double amplitude = j.contains("amplitude")
                                     ? as_num(j["amplitude"],
                                              joined(path, "amplitude"))
                                     : 1.0;
        if (!(width > 0.0)) fail(joined(path, "width"), "must be > 0");
        return InitialData::sampled_data(
            gaussian_samples(grid, center, width, amplitude));
    }
    if (shape == "samples") {
        check_keys(j, path, {"shape", "values"});
        std::vector<double> v = as_num_vec(require(j, path, "values"),
                                           joined(path, "values"));
        if (v.size() != grid.n())
            fail(joined(path, "values"),
                 "expected " + std::to_string(grid.n()) +
                     " values to match the grid, got " +
                     std::to_string(v.size()));
        return InitialData::sampled_data(std::move(v));
    }
    fail(joined(path, "shape"),
         "unknown shape \"" + shape +
             "\" (zero, delta, gaussian, samples)");
}

std::function<double(double)> parse_profile(const json& j,
                                            const std::string& path) {
    as_obj(j, path);
    const std::string kind =
        as_str(require(j, path, "kind"), joined(path, "kind"));
    if (kind == "constant") {
        check_keys(j, path, {"kind", "value"});
        const double v = j.contains("value")
                             ? as_num(j["value"], joined(path, "value"))
                             : 1.0;
        return [v](double) { return v; };
    }
    if (kind == "exp") {
        check_keys(j, path, {"kind", "value", "rate"});
        const double v = j.contains("value")
                             ? as_num(j["value"], joined(path, "value"))
                             : 1.0;
        const double rate =
            as_num(require(j, path, "rate"), joined(path, "rate"));
        return [v, rate](double t) { return v * std::exp(-rate * t); };
    }
    fail(joined(path, "kind"),
         "unknown time profile \"" + kind + "\" (constant, exp)");
}

SourceTerm parse_source(const json& j, const Grid1D& grid,
                        const std::string& path) {
    as_obj(j, path);
    const std::string shape =
        as_str(require(j, path, "shape"), joined(path, "shape"));
    SourceTerm src;
    if (shape == "none") {
        check_keys(j, path, {"shape"});
        return src;
    }
    if (shape == "separable") {
        check_keys(j, path, {"shape", "spatial", "time_profile"});
        const InitialData spatial = parse_data(require(j, path, "spatial"),
                                               grid, joined(path, "spatial"));
        if (spatial.kind == InitialData::Kind::delta)
            fail(joined(path, "spatial"),
                 "a delta source is not supported; use samples");
        src.kind = SourceTerm::Kind::separable;
        src.spatial = spatial.kind == InitialData::Kind::zero
                          ? std::vector<double>(grid.n(), 0.0)
                          : spatial.samples;
        src.time_profile = parse_profile(require(j, path, "time_profile"),
                                         joined(path, "time_profile"));
        return src;
    }
    if (shape == "sampled") {
        check_keys(j, path, {"shape", "time_mesh", "slices"});
        src.kind = SourceTerm::Kind::sampled;
        src.time_mesh = as_num_vec(require(j, path, "time_mesh"),
                                   joined(path, "time_mesh"));
        const json& slices =
            as_arr(require(j, path, "slices"), joined(path, "slices"));
        if (src.time_mesh.empty() || slices.size() != src.time_mesh.size())
            fail(joined(path, "slices"),
                 "expected one slice per time_mesh entry");
        for (std::size_t i = 0; i + 1 < src.time_mesh.size(); ++i)
            if (!(src.time_mesh[i] < src.time_mesh[i + 1]))
                fail(joined(path, "time_mesh"), "must be strictly increasing");
        for (std::size_t i = 0; i < slices.size(); ++i) {
            const std::string spath =
                joined(path, "slices") + "[" + std::to_string(i) + "]";
            std::vector<double> v = as_num_vec(slices[i], spath);
            if (v.size() != grid.n())
                fail(spath, "expected " + std::to_string(grid.n()) +
                                " values to match the grid");
            src.slices.push_back(std::move(v));
        }
        return src;
    }
    fail(joined(path, "shape"),
         "unknown source shape \"" + shape + "\" (none, separable, sampled)");
}

} // namespace

const char* to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::theorem1: return "theorem1";
        case SolveMode::corollary1: return "corollary1";
        case SolveMode::corollary2: return "corollary2";
        case SolveMode::theorem2: return "theorem2";
    }
    return "unknown";
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root: expected an object");
    check_keys(j, "",
               {"mode", "alpha", "beta", "lambda", "operator", "grid",
                "times", "tol", "r_max", "output_path", "f", "g", "f2", "g2",
                "source"});

    RunConfig cfg;

    const std::string mode = as_str(require(j, "", "mode"), "mode");
    if (mode == "theorem1") cfg.mode = SolveMode::theorem1;
    else if (mode == "corollary1") cfg.mode = SolveMode::corollary1;
    else if (mode == "corollary2") cfg.mode = SolveMode::corollary2;
    else if (mode == "theorem2") cfg.mode = SolveMode::theorem2;
    else
        fail("mode", "unknown mode \"" + mode +
                         "\" (theorem1, corollary1, corollary2, theorem2)");

    const json& jg = as_obj(require(j, "", "grid"), "grid");
    check_keys(jg, "grid", {"x_min", "x_max", "n"});
    const double gx0 = as_num(require(jg, "grid", "x_min"), "grid.x_min");
    const double gx1 = as_num(require(jg, "grid", "x_max"), "grid.x_max");
    const long gn = as_int(require(jg, "grid", "n"), "grid.n");
    if (gn < 8 || gn > (1L << 26)) fail("grid.n", "expected 8 <= n <= 2^26");
    try {
        cfg.grid = Grid1D(gx0, gx1, static_cast<std::size_t>(gn));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    cfg.problem.alpha = as_num(require(j, "", "alpha"), "alpha");
    cfg.problem.lambda =
        j.contains("lambda") ? as_num(j["lambda"], "lambda") : 0.0;
    cfg.problem.beta = j.contains("beta") ? as_num(j["beta"], "beta") : 0.0;

    const json& jop = as_obj(require(j, "", "operator"), "operator");
    check_keys(jop, "operator", {"terms"});
    const json& jterms =
        as_arr(require(jop, "operator", "terms"), "operator.terms");
    if (jterms.empty()) fail("operator.terms", "expected at least one term");
    for (std::size_t i = 0; i < jterms.size(); ++i) {
        const std::string tpath =
            "operator.terms[" + std::to_string(i) + "]";
        const json& jt = as_obj(jterms[i], tpath);
        check_keys(jt, tpath, {"mu", "gamma", "theta"});
        RieszFellerTerm term;
        term.mu = as_num(require(jt, tpath, "mu"), tpath + ".mu");
        term.gamma = as_num(require(jt, tpath, "gamma"), tpath + ".gamma");
        term.theta = jt.contains("theta")
                         ? as_num(jt["theta"], tpath + ".theta")
                         : 0.0;
        cfg.problem.op.terms.push_back(term);
    }

    cfg.times = as_num_vec(require(j, "", "times"), "times");

    if (j.contains("tol")) cfg.tol = as_num(j["tol"], "tol");
    if (j.contains("r_max")) {
        const long r = as_int(j["r_max"], "r_max");
        if (r < 1 || r > 100000) fail("r_max", "expected 1 <= r_max <= 1e5");
        cfg.r_max = static_cast<int>(r);
    }
    if (j.contains("output_path"))
        cfg.output_path = as_str(j["output_path"], "output_path");

    cfg.problem.f = j.contains("f") ? parse_data(j["f"], cfg.grid, "f")
                                    : InitialData::zero_data();
    cfg.problem.g = j.contains("g") ? parse_data(j["g"], cfg.grid, "g")
                                    : InitialData::zero_data();
    cfg.problem.f2 = j.contains("f2") ? parse_data(j["f2"], cfg.grid, "f2")
                                      : InitialData::zero_data();
    cfg.problem.g2 = j.contains("g2") ? parse_data(j["g2"], cfg.grid, "g2")
                                      : InitialData::zero_data();
    cfg.problem.source = j.contains("source")
                             ? parse_source(j["source"], cfg.grid, "source")
                             : SourceTerm::none_term();

    cfg.config_echo = j.dump();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const RunConfig& config) {
    try {
        validate_operator(config.problem.op);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    if (config.times.empty())
        throw ConfigError("constraint violated: at least one output time");
    for (double t : config.times)
        if (!(t > 0.0) || !std::isfinite(t))
            throw ConfigError("constraint violated: every output time > 0");
    if (!(config.tol > 0.0) || !(config.tol <= 1e-2))
        throw ConfigError("constraint violated: 0 < tol <= 1e-2");
    if (config.r_max < 1)
        throw ConfigError("constraint violated: r_max >= 1");
    if (config.output_path.empty())
        throw ConfigError("constraint violated: output_path must not be empty");

    const ProblemSpec& p = config.problem;
    const double a = p.alpha;

    if (config.mode != SolveMode::theorem2) {
        if (p.lambda != 0.0)
            throw ConfigError(
                "constraint violated: lambda = 0 outside theorem2 mode");
        if (!p.f2.is_zero() || !p.g2.is_zero())
            throw ConfigError(
                "constraint violated: f2 and g2 are theorem2-only data");
    }

    switch (config.mode) {
        case SolveMode::theorem1:
            if (!(a > 1.0 && a <= 2.0))
                throw ConfigError("constraint violated: 1 < alpha <= 2");
            break;
        case SolveMode::corollary1:
            if (!(a > 1.0 && a <= 2.0))
                throw ConfigError("constraint violated: 1 < alpha <= 2");
            for (const auto& term : p.op.terms)
                if (term.theta != 0.0)
                    throw ConfigError(
                        "constraint violated: theta = 0 in corollary1 mode");
            break;
        case SolveMode::corollary2:
            if (!(a > 0.0 && a <= 1.0))
                throw ConfigError("constraint violated: 0 < alpha <= 1");
            if (p.f.kind != InitialData::Kind::delta)
                throw ConfigError(
                    "constraint violated: f = delta in corollary2 mode");
            if (!p.g.is_zero())
                throw ConfigError(
                    "constraint violated: g = 0 in corollary2 mode");
            break;
        case SolveMode::theorem2:
            if (!(a > 1.0 && a <= 2.0))
                throw ConfigError("constraint violated: 1 < alpha <= 2");
            if (p.lambda != 0.0) {
                if (!(p.beta > 1.0 && p.beta <= 2.0))
                    throw ConfigError(
                        "constraint violated: 1 < beta <= 2");
                if (!(p.beta < a))
                    throw ConfigError("constraint violated: beta < alpha");
            }
            break;
    }

    if (p.source.kind == SourceTerm::Kind::sampled) {
        const double tmax =
            *std::max_element(config.times.begin(), config.times.end());
        if (p.source.time_mesh.front() > 1e-12 ||
            p.source.time_mesh.back() < tmax * (1.0 - 1e-12))
            throw ConfigError(
                "constraint violated: source time_mesh must cover "
                "[0, max(times)]");
    }
}

std::string manifest_json(const RunConfig& config,
                          const std::vector<std::string>& outputs,
                          const std::vector<double>& imag_residuals,
                          int threads_used) {
    json m;

    json original = json::object();
    if (!config.config_echo.empty()) {
        try {
            original = json::parse(config.config_echo);
        } catch (const json::exception&) {
            original = json::object();
        }
    }
    m["config"] = original;

    json r;
    r["mode"] = to_string(config.mode);
    r["alpha"] = config.problem.alpha;
    r["beta"] = config.problem.beta;
    r["lambda"] = config.problem.lambda;
    json terms = json::array();
    for (const auto& term : config.problem.op.terms)
        terms.push_back({{"mu", term.mu},
                         {"gamma", term.gamma},
                         {"theta", term.theta}});
    r["operator"] = {{"terms", terms}};
    r["grid"] = {{"x_min", config.grid.x_min()},
                 {"x_max", config.grid.x_max()},
                 {"n", config.grid.n()}};
    r["times"] = config.times;
    r["tol"] = config.tol;
    r["r_max"] = config.r_max;
    r["output_path"] = config.output_path;
    m["resolved"] = r;

    m["outputs"] = outputs;
    m["imag_residuals"] = imag_residuals;
    m["threads"] = threads_used;
    m["version"] = kVersion;
    return m.dump(2) + "\n";
}

}
