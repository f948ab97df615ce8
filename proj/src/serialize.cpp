#include "fourball/serialize.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fourball {

using ojson = nlohmann::ordered_json;

namespace {

ojson vec(const vec3<double>& v) { return ojson::array({v[0], v[1], v[2]}); }

template <class T>
ojson opt(const std::optional<T>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

std::string line(const ojson& j) { return j.dump() + "\n"; }

ojson verification_json(const std::optional<Verification>& v) {
    if (!v) return nullptr;
    return {{"precision", v->precision},
            {"periods_requested", v->periods_requested},
            {"periods_matched", v->periods_matched},
            {"termination", v->termination},
            {"velocity_scaling_error", v->velocity_scaling_error},
            {"position_scaling_error", v->position_scaling_error}};
}

}  // namespace

std::string to_json(const Trajectory<double>& t, double r) {
    ojson events = ojson::array();
    for (const auto& e : t.events)
        events.push_back({{"index", e.index},
                          {"t", e.t},
                          {"type", std::string(1, to_char(e.type))},
                          {"p_after", vec(e.p_after)},
                          {"q_after", vec(e.q_after)}});
    ojson j{{"r", r},
            {"word", t.word()},
            {"termination", to_string(t.termination)},
            {"singularity", t.singularity ? ojson(to_string(*t.singularity)) : ojson(nullptr)},
            {"events", events}};
    return line(j);
}

std::string to_csv(const Trajectory<double>& t) {
    std::string out = "index,t,type,p1,p2,p3,q1,q2,q3\n";
    for (const auto& e : t.events) {
        out += std::to_string(e.index) + ',' + format_real(e.t) + ',' + to_char(e.type);
        for (double v : e.p_after) out += ',' + format_real(v);
        for (double v : e.q_after) out += ',' + format_real(v);
        out += '\n';
    }
    return out;
}

std::string to_json(const ReducedOrbit& o, const SphericalConfig& c0, double r) {
    ojson steps = ojson::array();
    for (const auto& s : o.steps)
        steps.push_back({{"index", s.index}, {"contact", std::string(1, to_char(s.contact))}, {"theta", s.theta}, {"phi", s.phi}});
    ojson bs = ojson::array();
    for (const auto& s : o.b_samples) bs.push_back({{"step", s.step}, {"theta", s.theta}, {"phi", s.phi}});
    ojson j{{"r", r},
            {"contact0", std::string(1, to_char(c0.contact))},
            {"theta0", c0.theta},
            {"phi0", c0.phi},
            {"termination", to_string(o.termination)},
            {"singularity", o.singularity ? ojson(to_string(*o.singularity)) : ojson(nullptr)},
            {"word", o.word},
            {"b_count", o.b_count},
            {"steps", steps},
            {"b_samples", bs}};
    return line(j);
}

std::string to_csv(const ReducedOrbit& o) {
    std::string out = "index,contact,theta,phi\n";
    for (const auto& s : o.steps)
        out += std::to_string(s.index) + ',' + to_char(s.contact) + ',' + format_real(s.theta) + ',' + format_real(s.phi) + '\n';
    return out;
}

std::string to_json(const SelfSimilarReport& rep) {
    const auto& a = rep.analysis;
    ojson feas = ojson::array();
    for (const auto& f : a.feasibility) feas.push_back({{"name", f.name}, {"kind", f.kind}, {"value", f.value}, {"ok", f.ok}});
    ojson mob = nullptr;
    if (a.mobius) mob = {{"a", a.mobius->a}, {"b", a.mobius->b}, {"c", a.mobius->c}, {"d", a.mobius->d}};
    bool has_datum = a.fixed_point.has_value();
    ojson j{{"word", a.word},
            {"r", a.r},
            {"branch", to_string(a.branch)},
            {"eigenvalue", opt(a.eigenvalue)},
            {"dominant", a.dominant},
            {"datum", has_datum ? ojson{{"p0", vec(a.p0)}, {"q0", vec(a.q0)}} : ojson(nullptr)},
            {"mobius", mob},
            {"x_plus", opt(a.x_plus)},
            {"x_minus", opt(a.x_minus)},
            {"fixed_point", opt(a.fixed_point)},
            {"mu", opt(a.mu)},
            {"feasibility", feas},
            {"stability_ratio", opt(a.stability_ratio)},
            {"verdict", to_string(a.verdict)},
            {"reason", a.reason ? ojson(to_string(*a.reason)) : ojson(nullptr)},
            {"diagnostic", a.diagnostic},
            {"verification", verification_json(rep.verification)},
            {"verification_binary64", verification_json(rep.verification_binary64)}};
    return line(j);
}

std::string csv_header_report() {
    return "word,r,branch,eigenvalue,fixed_point,mu,stability_ratio,verdict,reason,verified_periods\n";
}

std::string to_csv_row(const SelfSimilarReport& rep) {
    const auto& a = rep.analysis;
    auto o = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    std::string out = a.word + ',' + format_real(a.r) + ',' + to_string(a.branch) + ',' + o(a.eigenvalue) + ',' +
                      o(a.fixed_point) + ',' + o(a.mu) + ',' + o(a.stability_ratio) + ',' + to_string(a.verdict) + ',' +
                      (a.reason ? to_string(*a.reason) : "") + ',' +
                      (rep.verification ? std::to_string(rep.verification->periods_matched) : "") + '\n';
    return out;
}

std::string thresholds_json() {
    ojson arr = ojson::array();
    for (const auto& t : known_thresholds()) arr.push_back({{"name", t.name}, {"expression", t.expression}, {"value", t.value}});
    return line(ojson{{"thresholds", arr}});
}

std::string thresholds_csv() {
    std::string out = "name,value\n";
    for (const auto& t : known_thresholds()) out += t.name + ',' + format_real(t.value) + '\n';
    return out;
}

void stream_sweep(const SweepConfig& cfg, unsigned threads, Format fmt, std::ostream& records, std::ostream* singularities) {
    cfg.validate();
    const auto rs = cfg.r_values();
    const std::size_t block = 16;
    bool first = true;
    std::size_t written = 0;
    for (std::size_t begin = 0; begin < rs.size(); begin += block) {
        std::size_t end = std::min(rs.size(), begin + block);
        auto res = run_sweep(cfg, threads, begin, end);
        std::ostringstream rec, sing;
        if (fmt == Format::csv) {
            emit_csv(res.records, rec);
            emit_singularities_csv(res.singularities, sing);
        } else {
            emit_json_lines(res.records, rec);
            emit_singularities_json_lines(res.singularities, sing);
        }
        std::string r = rec.str(), s = sing.str();
        if (fmt == Format::csv && !first) {
            r.erase(0, r.find('\n') + 1);
            s.erase(0, s.find('\n') + 1);
        }
        records << r;
        if (!records) throw emit_error(written, "write failed at record " + std::to_string(written));
        written += res.records.size();
        if (singularities) {
            *singularities << s;
            if (!*singularities) throw emit_error(0, "write failed on the singularity stream");
        }
        first = false;
    }
    if (rs.empty() && fmt == Format::csv) {
        emit_csv({}, records);
        if (singularities) emit_singularities_csv({}, *singularities);
    }
    records.flush();
    if (!records) throw emit_error(written, "write failed at record " + std::to_string(written));
}

}  // namespace fourball
