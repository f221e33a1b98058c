#include "hyperdecay_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "hyperdecay/error.hpp"
#include "hyperdecay/grad.hpp"
#include "hyperdecay/symbol_json.hpp"

namespace hyperdecay::cli {

namespace {

const double inf = std::numeric_limits<double>::infinity();

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T>
T get_or(const Json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

GridSpec parse_grid(const Json& j, const std::string& where) {
    only_keys(j, {"extent", "points"}, where);
    GridSpec g;
    g.extent = get_or(j, "extent", 0.0);
    g.points = get_or(j, "points", 0);
    if (g.extent < 0 || g.points < 0 || (g.points > 0 && g.points < 3))
        throw ConfigError(where + ": extent must be > 0 and points >= 3");
    return g;
}

DataProfile parse_profile(const Json& j, int& component) {
    only_keys(j, {"profile", "width", "r_inner", "r_outer", "smoothing", "radius", "radii", "values", "component"},
              "data");
    component = get_or(j, "component", -1);
    const auto kind = get_or<std::string>(j, "profile", "gaussian");
    try {
        if (kind == "gaussian") return DataProfile::gaussian(get_or(j, "width", 1.0));
        if (kind == "annulus")
            return DataProfile::annulus(get_or(j, "r_inner", 0.0), get_or(j, "r_outer", 1.0),
                                        get_or(j, "smoothing", 0.0));
        if (kind == "ball") return DataProfile::ball(get_or(j, "radius", 1.0));
        if (kind == "table")
            return DataProfile::table(get_or(j, "radii", std::vector<double>{}),
                                      get_or(j, "values", std::vector<double>{}));
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("data: ") + e.what());
    }
    throw ConfigError("unknown data profile '" + kind + "'");
}

Json profile_json(const DataProfile& p) {
    Json j;
    switch (p.kind()) {
        case DataProfile::Kind::gaussian:
            j["profile"] = "gaussian";
            j["width"] = p.width();
            break;
        case DataProfile::Kind::annulus:
            j["profile"] = "annulus";
            j["r_inner"] = p.r_inner();
            j["r_outer"] = p.r_outer();
            j["smoothing"] = p.smoothing();
            break;
        case DataProfile::Kind::ball:
            j["profile"] = "ball";
            j["radius"] = p.radius();
            break;
        case DataProfile::Kind::table:
            j["profile"] = "table";
            j["radii"] = p.table_radii();
            j["values"] = p.table_values();
            break;
    }
    return j;
}

// data supported outside the ball |xi| < sqrt|mu|/c, as the negative-mass case requires
DataProfile negative_mass_profile(const WaveFamilyParams& p) {
    const double r = std::sqrt(-p.mu) / p.c + 0.05;
    return DataProfile::annulus(r, r + 1.5, 0.2);
}

void load_operator(RunConfig& cfg, const Json& op, const std::filesystem::path& base_dir) {
    if (!op.is_object()) throw ConfigError("operator must be an object");
    cfg.operator_source = op;
    if (op.contains("generator")) {
        const auto gen = get_or<std::string>(op, "generator", "");
        if (gen == "wave") {
            only_keys(op, {"generator", "c", "delta", "mu", "n"}, "operator");
            WaveFamilyParams p{get_or(op, "c", 1.0), get_or(op, "delta", 0.0), get_or(op, "mu", 0.0)};
            const int n = get_or(op, "n", 1);
            if (n < 1 || !(p.c > 0)) throw ConfigError("wave generator needs n >= 1 and c > 0");
            cfg.symbol = wave_family_symbol(p, n);
            cfg.wave = p;
        } else if (gen == "grad") {
            only_keys(op, {"generator", "n", "N"}, "operator");
            const int n = get_or(op, "n", 1), N = get_or(op, "N", 1);
            if (n < 1 || N < 1) throw ConfigError("grad generator needs n >= 1 and N >= 1");
            cfg.symbol = grad_symbol(grad_system(n, N));
        } else {
            throw ConfigError("unknown generator '" + gen + "'");
        }
        return;
    }
    if (op.contains("symbol")) {
        only_keys(op, {"symbol"}, "operator");
        cfg.symbol = symbol_from_json(op.at("symbol"));
        return;
    }
    if (op.contains("file")) {
        only_keys(op, {"file"}, "operator");
        std::filesystem::path p = get_or<std::string>(op, "file", "");
        if (p.is_relative()) p = base_dir / p;
        std::ifstream in(p);
        if (!in) throw ConfigError("cannot open operator file " + p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        cfg.symbol = parse_symbol(ss.str());
        return;
    }
    throw ConfigError("operator needs one of generator, symbol, file");
}

}  // namespace

PqPair parse_pq(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("(p,q) must look like '1,inf': " + s);
    auto num = [&](const std::string& t) {
        if (t == "inf" || t == "Inf" || t == "infinity") return inf;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size()) throw ConfigError("bad number in (p,q): " + t);
        return v;
    };
    PqPair pq{num(s.substr(0, comma)), num(s.substr(comma + 1))};
    try {
        lp_theta(pq.first, pq.second);
    } catch (const ContractViolation& e) {
        throw ConfigError("(p,q) = " + s + ": " + e.what());
    }
    return pq;
}

RunConfig parse_config(const Json& doc, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    try {
        if (doc.is_object() && doc.contains("terms")) {
            load_operator(cfg, Json{{"symbol", doc}}, base_dir);
            return cfg;
        }
        only_keys(doc,
                  {"schema_version", "operator", "grid", "quadrature", "data", "pq", "derivatives", "fit", "tolerance",
                   "classify", "solve", "output", "threads"},
                  "config");
        const int version = get_or(doc, "schema_version", config_schema_version);
        if (version != config_schema_version)
            throw ConfigError("unsupported schema_version " + std::to_string(version));
        if (!doc.contains("operator")) throw ConfigError("config has no operator");
        load_operator(cfg, doc.at("operator"), base_dir);

        if (doc.contains("grid")) cfg.classify_grid = parse_grid(doc.at("grid"), "grid");
        if (doc.contains("quadrature")) cfg.quadrature_grid = parse_grid(doc.at("quadrature"), "quadrature");

        if (doc.contains("data")) {
            cfg.profile = parse_profile(doc.at("data"), cfg.component);
        } else if (cfg.wave && cfg.wave->mu < 0) {
            cfg.profile = negative_mass_profile(*cfg.wave);
        }
        if (cfg.component >= cfg.symbol.order()) throw ConfigError("data component out of range");

        if (doc.contains("pq")) {
            cfg.pq.clear();
            for (const auto& s : doc.at("pq")) {
                if (!s.is_string()) throw ConfigError("pq entries are strings like \"1,inf\"");
                cfg.pq.push_back(parse_pq(s.get<std::string>()));
            }
        }
        if (doc.contains("derivatives")) {
            cfg.derivs.clear();
            for (const auto& d : doc.at("derivatives")) {
                only_keys(d, {"r", "alpha"}, "derivatives");
                DerivativeOrder o{get_or(d, "r", 0), get_or(d, "alpha", 0)};
                if (o.r < 0 || o.alpha < 0) throw ConfigError("derivative orders must be >= 0");
                cfg.derivs.push_back(o);
            }
            if (cfg.derivs.empty()) throw ConfigError("derivatives list is empty");
        }
        if (doc.contains("fit")) {
            const auto& f = doc.at("fit");
            only_keys(f, {"t_lo", "t_hi", "samples", "early_samples"}, "fit");
            cfg.window.t_lo = get_or(f, "t_lo", cfg.window.t_lo);
            cfg.window.t_hi = get_or(f, "t_hi", cfg.window.t_hi);
            cfg.fit_samples = get_or(f, "samples", cfg.fit_samples);
            cfg.early_samples = get_or(f, "early_samples", cfg.early_samples);
            if (!(cfg.window.t_lo > 0) || !(cfg.window.t_hi > cfg.window.t_lo))
                throw ConfigError("fit window must satisfy 0 < t_lo < t_hi");
            if (cfg.fit_samples < 8 || cfg.early_samples < 0) throw ConfigError("fit needs at least 8 samples");
        }
        cfg.tol = get_or(doc, "tolerance", cfg.tol);
        if (!(cfg.tol > 0)) throw ConfigError("tolerance must be > 0");
        if (doc.contains("classify")) {
            const auto& c = doc.at("classify");
            only_keys(c, {"disc_threshold", "min_radius", "strong_eps", "on_axis_tol", "large_fraction"}, "classify");
            auto& o = cfg.classify;
            o.disc_threshold = get_or(c, "disc_threshold", o.disc_threshold);
            o.stability.strong_eps = get_or(c, "strong_eps", o.stability.strong_eps);
            o.stability.on_axis_tol = get_or(c, "on_axis_tol", o.stability.on_axis_tol);
            o.large_fraction = get_or(c, "large_fraction", o.large_fraction);
            if (c.contains("min_radius")) {
                o.stability.min_radius = get_or(c, "min_radius", 0.0);
                cfg.min_radius_set = true;
            }
        }
        if (doc.contains("solve")) {
            const auto& s = doc.at("solve");
            only_keys(s, {"points", "snapshots"}, "solve");
            cfg.solve.points = get_or(s, "points", cfg.solve.points);
            cfg.solve.snapshots = get_or(s, "snapshots", cfg.solve.snapshots);
            if (cfg.solve.points < 8) throw ConfigError("solve needs at least 8 points per axis");
        }
        cfg.out = get_or<std::string>(doc, "output", cfg.out.string());
        cfg.threads = get_or(doc, "threads", 0);
    } catch (const ConfigError&) {
        throw;
    } catch (const Json::exception& e) {
        throw ConfigError(e.what());
    } catch (const ContractViolation& e) {
        throw ConfigError(e.what());
    }
    // data kept away from a ball: scan stability only where it lives
    if (!cfg.min_radius_set && cfg.profile.kind() == DataProfile::Kind::annulus)
        cfg.classify.stability.min_radius = cfg.profile.r_inner();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
    if (const char* e = std::getenv("HYPERDECAY_OUT"); e && *e) cfg.out = e;
    if (const char* e = std::getenv("HYPERDECAY_THREADS"); e && *e) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (*end || v < 0) throw ConfigError("HYPERDECAY_THREADS must be a non-negative integer");
        cfg.threads = static_cast<int>(v);
    }
    if (ov.out) cfg.out = *ov.out;
    if (ov.threads) cfg.threads = *ov.threads;
    if (!ov.pq.empty()) cfg.pq = ov.pq;
    if (ov.tol) {
        if (!(*ov.tol > 0)) throw ConfigError("--tol must be > 0");
        cfg.tol = *ov.tol;
    }
}

FrequencyGrid RunConfig::classification_grid() const {
    const int n = dim();
    double R = classify_grid.extent;
    int P = classify_grid.points;
    if (R <= 0) R = n == 1 ? 20.0 : n == 2 ? 6.0 : 3.0;
    if (P <= 0) P = n == 1 ? 801 : n == 2 ? 121 : 25;
    return FrequencyGrid(n, R, P);
}

FrequencyGrid RunConfig::quadrature() const {
    const int n = dim();
    double R = quadrature_grid.extent;
    int P = quadrature_grid.points;
    if (R <= 0) R = profile.support_radius();
    if (P <= 0) P = n == 1 ? 2049 : n == 2 ? 257 : 41;
    return FrequencyGrid(n, R, P);
}

Json RunConfig::canonical() const {
    Json j;
    j["schema_version"] = config_schema_version;
    j["symbol"] = symbol_to_json(symbol);
    auto g = classification_grid();
    j["grid"] = {{"extent", g.extent()}, {"points", g.points_per_axis()}};
    auto q = quadrature();
    j["quadrature"] = {{"extent", q.extent()}, {"points", q.points_per_axis()}};
    Json d = profile_json(profile);
    d["component"] = component < 0 ? symbol.order() - 1 : component;
    j["data"] = d;
    Json pqs = Json::array();
    for (const auto& [p, qq] : pq) pqs.push_back(format_pq(p, qq));
    j["pq"] = pqs;
    Json ds = Json::array();
    for (const auto& o : derivs) ds.push_back({{"r", o.r}, {"alpha", o.alpha}});
    j["derivatives"] = ds;
    j["fit"] = {{"t_lo", window.t_lo}, {"t_hi", window.t_hi}, {"samples", fit_samples}, {"early_samples", early_samples}};
    j["tolerance"] = tol;
    j["classify"] = {{"disc_threshold", classify.disc_threshold},
                     {"min_radius", classify.stability.min_radius},
                     {"strong_eps", classify.stability.strong_eps},
                     {"on_axis_tol", classify.stability.on_axis_tol},
                     {"large_fraction", classify.large_fraction}};
    j["solve"] = {{"points", solve.points}, {"snapshots", solve.snapshots}};
    return j;
}

RunConfig wave_config(const WaveFamilyParams& p, int n) {
    Json doc = {{"schema_version", config_schema_version},
                {"operator", {{"generator", "wave"}, {"c", p.c}, {"delta", p.delta}, {"mu", p.mu}, {"n", n}}}};
    return parse_config(doc);
}

RunConfig grad_config(int n, int N) {
    Json doc = {{"schema_version", config_schema_version}, {"operator", {{"generator", "grad"}, {"n", n}, {"N", N}}}};
    return parse_config(doc);
}

}  // namespace hyperdecay::cli
