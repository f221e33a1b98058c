#include "hyperdecay/report.hpp"

#include <cmath>
#include <cstdio>

namespace hyperdecay {

Json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json json_vector(std::span<const double> v) {
    Json a = Json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}

std::string format_pq(double p, double q) {
    char buf[64];
    if (std::isinf(q))
        std::snprintf(buf, sizeof buf, "%g,inf", p);
    else
        std::snprintf(buf, sizeof buf, "%g,%g", p, q);
    return buf;
}

Json to_json(const StabilityVerdict& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["min_im"] = json_number(v.min_im);
    j["min_im_xi"] = json_vector(v.min_im_xi);
    j["shell_min_im"] = json_number(v.shell_min_im);
    j["zero_nodes"] = v.zero_nodes;
    j["zero_set_only_origin"] = v.zero_set_only_origin;
    j["zero_set_touches_boundary"] = v.zero_set_touches_boundary;
    j["shell_on_axis"] = v.shell_on_axis;
    Json w = Json::array();
    for (const auto& x : v.witnesses) w.push_back(json_vector(x));
    j["witnesses"] = w;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json to_json(const BranchBehavior& b) {
    Json j;
    j["branch"] = b.branch;
    j["region"] = to_string(b.region);
    j["location"] = location_name(b.location);
    std::visit(
        [&](const auto& l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, Separated>) {
                j["delta"] = json_number(l.delta);
            } else if constexpr (std::is_same_v<T, AsymptoticToAxis>) {
                j["slope"] = json_number(l.slope);
            } else if constexpr (std::is_same_v<T, MeetsAxis>) {
                j["s"] = json_number(l.s);
                j["s1"] = json_number(l.s1);
                j["codim"] = json_number(l.codim);
                j["at_origin"] = l.at_origin;
                j["real_part_zero"] = l.real_part_zero;
            }
        },
        b.location);
    j["hessian"] = hessian_name(b.hessian);
    j["convexity"] = convexity_name(b.convexity);
    j["multiplicity"] = b.multiplicity;
    if (!b.note.empty()) j["note"] = b.note;
    return j;
}

Json to_json(const MultiplicityCluster& c, const FrequencyGrid& grid) {
    (void)grid;
    Json j;
    j["nodes"] = c.nodes.size();
    j["core_nodes"] = c.core.size();
    j["L"] = c.L;
    j["codim"] = c.codim.rounded;
    j["codim_slope"] = json_number(c.codim.value);
    j["min_im"] = json_number(c.min_im);
    j["branches"] = c.branches;
    j["representative"] = json_vector(c.representative);
    return j;
}

Json to_json(const MeetsAxisDetail& d) {
    Json j;
    j["slot"] = d.slot;
    j["zero_points"] = d.zero_points;
    j["s"] = json_number(d.contact.s);
    j["s_stderr"] = json_number(d.contact.stderr_s);
    j["s1"] = json_number(d.contact.s1);
    j["s1_stderr"] = json_number(d.contact.stderr_s1);
    j["shells"] = d.contact.shells;
    j["codim"] = d.codim.rounded;
    j["codim_slope"] = json_number(d.codim.value);
    return j;
}

Json to_json(const DecayPrediction& p, std::span<const PqPair> pq) {
    Json j;
    j["r"] = p.deriv.r;
    j["alpha"] = p.deriv.alpha;
    j["symbolic"] = p.symbolic();
    Json fs = Json::array();
    for (const auto& f : p.factors) {
        Json o;
        o["branch"] = f.branch;
        o["region"] = to_string(f.region);
        o["row"] = f.row;
        o["a"] = json_number(f.a);
        o["b"] = json_number(f.b);
        o["rate"] = json_number(f.rate);
        fs.push_back(o);
    }
    j["factors"] = fs;
    Json at = Json::array();
    if (!p.empty()) {
        for (auto [pp, qq] : pq) {
            PredictionAt a = p.at(pp, qq);
            Json o;
            o["pq"] = format_pq(pp, qq);
            o["theta"] = json_number(a.theta);
            o["exponent"] = json_number(a.exponent);
            o["rate"] = json_number(a.rate);
            o["row"] = a.row;
            o["factor"] = a.factor;
            at.push_back(o);
        }
    }
    j["at"] = at;
    return j;
}

Json to_json(const DecayFit& f) {
    Json j;
    j["model"] = to_string(f.model);
    j["exponent"] = json_number(f.exponent);
    j["exponent_stderr"] = json_number(f.stderr_exponent);
    j["rate"] = json_number(f.rate);
    j["rate_stderr"] = json_number(f.stderr_rate);
    j["offset"] = json_number(f.offset);
    j["rms"] = json_number(f.rms);
    j["rms_power"] = json_number(f.rms_power);
    j["rms_exponential"] = json_number(f.rms_exponential);
    j["window"] = {json_number(f.window.t_lo), json_number(f.window.t_hi)};
    j["samples"] = f.samples;
    return j;
}

Json to_json(const Verification& v) {
    Json j;
    j["applicable"] = v.applicable;
    j["pass"] = v.pass;
    j["better_than_predicted"] = v.better_than_predicted;
    j["row"] = v.row;
    j["predicted_exponent"] = json_number(v.predicted_exponent);
    j["predicted_rate"] = json_number(v.predicted_rate);
    j["fitted_model"] = to_string(v.fitted_model);
    j["fitted_exponent"] = json_number(v.fitted_exponent);
    j["fitted_rate"] = json_number(v.fitted_rate);
    if (!v.diagnostic.empty()) j["diagnostic"] = v.diagnostic;
    return j;
}

Json to_json(const BoundCheck& b) {
    Json j;
    j["L"] = b.L;
    j["j"] = b.j;
    j["C"] = json_number(b.C_fit);
    j["growth_slope"] = json_number(b.growth_slope);
    j["pass"] = b.pass;
    j["worst_xi"] = json_vector(b.worst_xi);
    j["worst_t"] = json_number(b.worst_t);
    if (!b.diagnostic.empty()) j["diagnostic"] = b.diagnostic;
    return j;
}

Json classification_json(const Classification& cls, std::span<const PqPair> pq,
                         std::span<const DerivativeOrder> derivs) {
    Json j;
    j["symbol"] = symbol_to_json(cls.symbol);
    j["stability"] = to_json(cls.stability);
    Json bs = Json::array();
    for (const auto& b : cls.behaviors) bs.push_back(to_json(b));
    j["behaviors"] = bs;
    Json cs = Json::array();
    for (const auto& c : cls.clusters) cs.push_back(to_json(c, cls.field.grid));
    j["clusters"] = cs;
    Json ms = Json::array();
    for (const auto& d : cls.contacts) ms.push_back(to_json(d));
    j["meets_axis"] = ms;
    j["codim_flag"] = cls.codim_flag;
    j["root_bound"] = json_number(cls.root_bound);
    Json preds = Json::array();
    if (cls.predicts())
        for (const auto& d : derivs) preds.push_back(to_json(cls.prediction(d), pq));
    j["predictions"] = preds;
    j["notes"] = cls.notes;
    return j;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace hyperdecay
