#include "hyperdecay_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <ostream>

#include "hyperdecay/error.hpp"
#include "hyperdecay/grad.hpp"
#include "hyperdecay/parallel.hpp"
#include "hyperdecay/roots.hpp"
#include "hyperdecay_cli/svg.hpp"

#ifndef HYPERDECAY_VERSION
#define HYPERDECAY_VERSION "unknown"
#endif

namespace hyperdecay::cli {

namespace fs = std::filesystem;

namespace {

bool on_axis_row(const std::string& row) {
    return row == "det_hess" || row == "rank_n_minus_1" || row == "convexity_gamma" || row == "gamma0";
}

void prepare_out(const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out)) throw ConfigError("output directory not writable: " + out.string());
}

void write_text(Outcome& o, const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw ConfigError("cannot write " + path.string());
    o.files.push_back(path);
}

Json header(const RunConfig& cfg, const char* command) {
    Json r;
    r["tool"] = "hyperdecay";
    r["version"] = HYPERDECAY_VERSION;
    r["command"] = command;
    Json canon = cfg.canonical();
    r["config_hash"] = hex64(fnv1a(canon.dump()));
    r["config"] = canon;
    r["operator_source"] = cfg.operator_source.is_null() ? Json("inline") : cfg.operator_source;
    return r;
}

std::vector<double> run_times(const RunConfig& cfg) {
    auto late = log_spaced(cfg.window.t_lo, cfg.window.t_hi, cfg.fit_samples);
    std::vector<double> t;
    if (cfg.early_samples > 0 && 0.5 < cfg.window.t_lo) {
        auto early = log_spaced(0.5, cfg.window.t_lo, cfg.early_samples + 1);
        t.assign(early.begin(), early.end() - 1);
    }
    t.insert(t.end(), late.begin(), late.end());
    return t;
}

CauchyData cauchy_data(const RunConfig& cfg) {
    const int j = cfg.component < 0 ? cfg.symbol.order() - 1 : cfg.component;
    return CauchyData::single(j, cfg.profile);
}

std::string series_stem(const char* kind, DerivativeOrder d) {
    return std::string("series_r") + std::to_string(d.r) + "_a" + std::to_string(d.alpha) + "_" + kind;
}

// classification and the files every command shares
struct Analysis {
    Classification cls;
    bool geometry_ok = true;
    std::string geometry_error;
};

Analysis analyze_into(const RunConfig& cfg, Outcome& o, Json& notes) {
    Analysis a;
    a.cls = classify_symbol(cfg.symbol, cfg.classification_grid(), cfg.classify);
    std::ofstream rc(cfg.out / "roots.csv", std::ios::binary);
    write_root_field_csv(a.cls.field, rc);
    if (!rc) throw ConfigError("cannot write roots.csv");
    o.files.push_back(cfg.out / "roots.csv");

    try {
        o.report["classification"] = classification_json(a.cls, cfg.pq, cfg.derivs);
    } catch (const MissingGeometryError& e) {
        a.geometry_ok = false;
        a.geometry_error = e.what();
        o.report["classification"] = classification_json(a.cls, cfg.pq, {});
        notes.push_back(std::string("no prediction: ") + e.what());
        o.exit_code = exit_inconclusive;
    }
    if (a.cls.stability.kind == StabilityKind::inconclusive) o.exit_code = exit_inconclusive;

    if (cfg.wave) {
        Json w;
        w["closed_form"] = to_string(wave_family_case(*cfg.wave));
        try {
            w["classified"] = to_string(wave_case_from_classification(a.cls));
        } catch (const NumericalError& e) {
            w["classified"] = "undetermined";
            notes.push_back(std::string("wave case: ") + e.what());
        }
        o.report["wave_case"] = w;
    }
    return a;
}

void finish(const RunConfig& cfg, Outcome& o, Json notes) {
    o.report["notes"] = std::move(notes);
    o.report["exit_code"] = o.exit_code;
    write_text(o, cfg.out / "report.json", o.report.dump(2) + "\n");
}

void chart(Outcome& o, const fs::path& path, const std::string& title, const NormSeries& s, const DecayFit* fit) {
    std::vector<ChartSeries> cs{{to_string(s.meaning), s.times, s.values, false}};
    if (fit) {
        ChartSeries f{std::string("fit: ") + to_string(fit->model), {}, {}, true};
        for (double t : s.times) {
            if (t < fit->window.t_lo || t > fit->window.t_hi) continue;
            f.x.push_back(t);
            f.y.push_back(std::exp(fit->offset + fit->exponent * std::log1p(t) - fit->rate * t));
        }
        cs.push_back(std::move(f));
    }
    write_text(o, path, loglog_chart_svg(title, cs));
}

void write_series(Outcome& o, const fs::path& path, const NormSeries& s) {
    std::ofstream f(path, std::ios::binary);
    write_series_csv(s, f);
    if (!f) throw ConfigError("cannot write " + path.string());
    o.files.push_back(path);
}

}  // namespace

Outcome cmd_analyze(const RunConfig& cfg) {
    prepare_out(cfg.out);
    set_max_threads(cfg.threads);
    Outcome o;
    o.report = header(cfg, "analyze");
    Json notes = Json::array();
    analyze_into(cfg, o, notes);
    finish(cfg, o, std::move(notes));
    return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
    prepare_out(cfg.out);
    set_max_threads(cfg.threads);
    Outcome o;
    o.report = header(cfg, "verify");
    Json notes = Json::array();
    Analysis a = analyze_into(cfg, o, notes);
    Json rows = Json::array();
    Json bounds = Json::array();
    int n_pass = 0, n_fail = 0, n_na = 0, n_err = 0;

    if (!a.cls.predicts()) {
        notes.push_back("verification skipped: " +
                        (a.cls.notes.empty() ? std::string("no prediction") : a.cls.notes.front()));
    } else if (a.geometry_ok) {
        const auto times = run_times(cfg);
        const auto data = cauchy_data(cfg);
        const auto grid = cfg.quadrature();
        std::map<std::tuple<int, int, int>, NormSeries> cache;
        std::map<std::tuple<int, int, int>, std::string> stems;

        for (const auto& d : cfg.derivs) {
            const DecayPrediction pred = a.cls.prediction(d);
            for (const auto& [p, q] : cfg.pq) {
                const PredictionAt at = pred.at(p, q);
                Json row;
                row["pq"] = format_pq(p, q);
                row["r"] = d.r;
                row["alpha"] = d.alpha;
                row["prediction_row"] = at.row;
                row["predicted_exponent"] = json_number(at.exponent);
                row["predicted_rate"] = json_number(at.rate);

                NormKind kind;
                if (on_axis_row(at.row)) {
                    row["status"] = "not applicable";
                    row["reason"] = not_verifiable_reason;
                    rows.push_back(row);
                    ++n_na;
                    continue;
                }
                if (p == 1.0 && std::isinf(q)) {
                    kind = NormKind::linf_upper;
                } else if (p == 2.0 && q == 2.0) {
                    kind = NormKind::l2_exact;
                } else {
                    row["status"] = "not applicable";
                    row["reason"] = "no surrogate norm for this (p,q)";
                    rows.push_back(row);
                    ++n_na;
                    continue;
                }
                const auto key = std::make_tuple(d.r, d.alpha, static_cast<int>(kind));
                auto it = cache.find(key);
                if (it == cache.end()) {
                    NormSeries s = norm_series(cfg.symbol, data, d, grid, times, kind);
                    const char* tag = kind == NormKind::l2_exact ? "L2" : "Linf";
                    const std::string stem = series_stem(tag, d);
                    write_series(o, cfg.out / (stem + ".csv"), s);
                    stems[key] = stem;
                    it = cache.emplace(key, std::move(s)).first;
                }
                const NormSeries& s = it->second;
                row["norm"] = to_string(kind);
                row["series"] = stems[key] + ".csv";
                if (s.under_resolved) {
                    row["under_resolved"] = true;
                    row["boundary_ratio"] = json_number(s.boundary_ratio);
                }
                const std::string title =
                    stems[key] + " (r=" + std::to_string(d.r) + ", |alpha|=" + std::to_string(d.alpha) + ")";
                try {
                    DecayFit fit = fit_decay(s, cfg.window, at.rate);
                    Verification v = verify_prediction(pred, fit, p, q, cfg.tol);
                    row["fit"] = to_json(fit);
                    row["verification"] = to_json(v);
                    row["status"] = v.pass ? "pass" : "fail";
                    (v.pass ? n_pass : n_fail)++;
                    chart(o, cfg.out / ("chart_" + stems[key].substr(7) + ".svg"), title, s, &fit);
                } catch (const DegenerateFitError& e) {
                    row["status"] = "fit_failed";
                    row["reason"] = e.what();
                    ++n_err;
                    o.exit_code = exit_fit;
                    chart(o, cfg.out / ("chart_" + stems[key].substr(7) + ".svg"), title, s, nullptr);
                }
                rows.push_back(row);
            }
        }

        // coincident roots: envelope check of the top propagator entry
        const int j = cfg.symbol.order() - 1;
        const auto bt = log_spaced(0.5, std::max(1.0, cfg.window.t_hi / 4), 30);
        std::size_t done = 0;
        for (const auto& c : a.cls.clusters) {
            if (done++ >= 8) {
                notes.push_back("bound checks limited to the first 8 multiplicity clusters");
                break;
            }
            try {
                Json b = to_json(multiplicity_bound_check(cfg.symbol, a.cls.field, c, j, bt));
                b["representative"] = c.representative;
                bounds.push_back(b);
            } catch (const NumericalError& e) {
                notes.push_back(std::string("bound check skipped: ") + e.what());
            }
        }
    }
    o.report["verification"] = rows;
    o.report["bound_checks"] = bounds;
    o.report["summary"] = {{"rows", rows.size()}, {"pass", n_pass}, {"fail", n_fail}, {"not_applicable", n_na},
                           {"fit_failed", n_err}};
    finish(cfg, o, std::move(notes));
    return o;
}

Outcome cmd_solve(const RunConfig& cfg) {
    prepare_out(cfg.out);
    set_max_threads(cfg.threads);
    if (cfg.dim() > 2) throw ConfigError("solve supports n <= 2");
    Outcome o;
    o.report = header(cfg, "solve");
    Json notes = Json::array();
    const auto data = cauchy_data(cfg);
    const double R = cfg.quadrature().extent();
    const int P = cfg.solve.points;
    Json rows = Json::array();
    for (const auto& d : cfg.derivs) {
        const auto times = run_times(cfg);
        NormSeries s = grid_sample_series(cfg.symbol, data, d, R, P, times);
        const std::string stem = series_stem("grid", d);
        write_series(o, cfg.out / (stem + ".csv"), s);
        Json row;
        row["r"] = d.r;
        row["alpha"] = d.alpha;
        row["norm"] = to_string(NormKind::grid_sample);
        row["series"] = stem + ".csv";
        const DecayFit* fp = nullptr;
        DecayFit fit;
        try {
            fit = fit_decay(s, cfg.window);
            fp = &fit;
            row["fit"] = to_json(fit);
        } catch (const DegenerateFitError& e) {
            row["fit_error"] = e.what();
            o.exit_code = exit_fit;
        }
        chart(o, cfg.out / ("chart_" + stem.substr(7) + ".svg"), stem, s, fp);
        rows.push_back(row);
    }

    // snapshots of u itself for the first derivative entry
    const DerivativeOrder d0 = cfg.derivs.front();
    for (double t : cfg.solve.snapshots) {
        const auto field = grid_sample_field(cfg.symbol, data, d0, R, P, t);
        const double dx = std::numbers::pi / R;
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_t%g.csv", t);
        std::ostringstream os;
        os.precision(12);
        const int n = cfg.dim();
        os << (n == 1 ? "x,re,im\n" : "x,y,re,im\n");
        const std::size_t N = static_cast<std::size_t>(P);
        for (std::size_t i = 0; i < field.size(); ++i) {
            const std::size_t ix = n == 1 ? i : i / N, iy = i % N;
            auto pos = [&](std::size_t k) { return (static_cast<double>(k) - P / 2) * dx; };
            if (n == 1)
                os << pos(ix) << ',' << field[i].real() << ',' << field[i].imag() << '\n';
            else
                os << pos(ix) << ',' << pos(iy) << ',' << field[i].real() << ',' << field[i].imag() << '\n';
        }
        write_text(o, cfg.out / name, os.str());
    }
    o.report["grid_samples"] = rows;
    finish(cfg, o, std::move(notes));
    return o;
}

Outcome cmd_grad(int n, int N, const fs::path& out) {
    prepare_out(out);
    Outcome o;
    GradSystem sys = grad_system(n, N);
    OperatorSymbol sym = grad_symbol(sys);
    write_text(o, out / "symbol.json", symbol_to_json(sym).dump(2) + "\n");

    std::ostringstream os;
    os << "# Grad system n=" << n << " N=" << N << " M=" << sys.size() << "\n# basis";
    for (const auto& a : sys.basis) {
        os << " (";
        for (int k = 0; k < n; ++k) os << (k ? "," : "") << a[k];
        os << ')';
    }
    os << '\n';
    Eigen::IOFormat fmt(Eigen::StreamPrecision, Eigen::DontAlignCols, " ", "\n");
    for (int j = 0; j < n; ++j) os << "A_" << j + 1 << '\n' << sys.A[static_cast<std::size_t>(j)].format(fmt) << '\n';
    os << "B\n" << Eigen::MatrixXd(sys.B.asDiagonal()).format(fmt) << '\n';
    write_text(o, out / "matrices.txt", os.str());

    o.report["tool"] = "hyperdecay";
    o.report["command"] = "grad";
    o.report["n"] = n;
    o.report["N"] = N;
    o.report["moments"] = sys.size();
    o.report["symbol"] = sym.to_string();
    return o;
}

int run_command(const std::string& name, RunConfig cfg, std::ostream& log, std::ostream& err) {
    try {
        Outcome o = name == "analyze" ? cmd_analyze(cfg) : name == "verify" ? cmd_verify(cfg) : cmd_solve(cfg);
        for (const auto& f : o.files) log << "wrote " << f.string() << '\n';
        if (o.report.contains("summary")) {
            const auto& s = o.report["summary"];
            log << "rows " << s["rows"] << ": pass " << s["pass"] << ", fail " << s["fail"] << ", not applicable "
                << s["not_applicable"] << ", fit failed " << s["fit_failed"] << '\n';
        }
        return o.exit_code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ContractViolation& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const MissingGeometryError& e) {
        err << "inconclusive: " << e.what() << '\n';
        return exit_inconclusive;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

int run_grad(int n, int N, const fs::path& out, std::ostream& log, std::ostream& err) {
    try {
        Outcome o = cmd_grad(n, N, out);
        for (const auto& f : o.files) log << "wrote " << f.string() << '\n';
        log << o.report["symbol"].get<std::string>() << '\n';
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ContractViolation& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const Error& e) {
        err << "grad: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace hyperdecay::cli
