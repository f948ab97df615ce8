// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   fourball_acceptance [--cli PATH] [--scratch DIR] [--only N]... [--known-failures N,M,...]
// With --known-failures the exit status is 0 only if exactly those criteria fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fourball/fourball.h"
#include "fourball/pattern.hpp"
#include "fourball/real.hpp"
#include "fourball/spherical.hpp"
#include "fourball/sweep.hpp"

using namespace fourball;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Options {
    std::string cli;
    std::filesystem::path scratch = std::filesystem::temp_directory_path() / "fourball_acceptance";
    std::set<int> only;
    std::optional<std::set<int>> known;
};

std::string num(double v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double uniform(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

struct Lifted {
    SphericalConfig c;
    double radial, scale;
    vec3<double> p, q;
};

// random (theta0, phi0, contact, radial in [-2,2], scale in [0.1,10]) lifted to a full state
Lifted random_lift(std::mt19937_64& g) {
    Lifted l;
    l.c = {type_from_index(static_cast<int>(g() % 3)), uniform(g, 0, pi / 2), uniform(g, 0, pi)};
    l.radial = uniform(g, -2, 2);
    l.scale = uniform(g, 0.1, 10);
    to_full_state(l.c, l.radial, l.scale, l.p, l.q);
    return l;
}

// 1: verdict flip at 5-2*sqrt(6)
Outcome threshold_scan(const Options&) {
    auto t0 = std::chrono::steady_clock::now();
    const double edge = 5 - 2 * std::sqrt(6.0), step = 1e-4;
    Outcome out{true, ""};
    for (auto branch : {Branch::upper, Branch::lower}) {
        double last_feasible = -1, first_infeasible = -1;
        bool single_flip = true;
        for (int k = 0; k <= 100; ++k) {
            double r = 0.095 + k * step;
            bool feasible = self_similar_datum("ababcb", r, branch).analysis.verdict != Verdict::infeasible;
            if (feasible) {
                if (first_infeasible >= 0) single_flip = false;
                last_feasible = r;
            } else if (first_infeasible < 0) {
                first_infeasible = r;
            }
        }
        bool ok = single_flip && last_feasible > 0 && first_infeasible > 0 && last_feasible < edge &&
                  edge <= first_infeasible && first_infeasible - edge <= step && edge - last_feasible <= step;
        out.pass = out.pass && ok;
        out.detail += std::string(to_string(branch)) + ": feasible up to " + num(last_feasible, 8) +
                      ", infeasible from " + num(first_infeasible, 8) + (single_flip ? "" : " (not a single flip)") + "; ";
    }
    double secs = seconds_since(t0);
    out.pass = out.pass && secs < 10;
    out.detail += "edge " + num(edge, 8) + ", " + num(secs, 3) + " s";
    return out;
}

// 2: ten periods of the upper-branch datum at r=0.08
Outcome realization(const Options&) {
    const double r = 0.08;
    auto a = analyze_pattern<extended_real>("ababcb", r, Branch::upper);
    if (a.verdict == Verdict::infeasible) return {false, "datum infeasible: " + a.diagnostic};
    auto traj = simulate<extended_real>(a.p0, a.q0, Restitution(r), 60, EventTolerances::local(1e-28));
    std::string want;
    for (int k = 0; k < 10; ++k) want += "ababcb";
    std::string seen = traj.word();
    bool word_ok = seen == want;

    const extended_real lambda = *a.eigenvalue;
    std::vector<double> verr, perr;
    vec3<extended_real> q_prev = a.q0, p_prev = a.p0;
    for (std::size_t k = 1; k <= 10 && 6 * k <= traj.events.size(); ++k) {
        const auto& e = traj.events[6 * k - 1];
        vec3<extended_real> qs = lambda * q_prev, ps = *a.mu * p_prev;
        verr.push_back(to_double(extended_real(norm(vec3<extended_real>(e.q_after - qs)) / norm(qs))));
        perr.push_back(to_double(extended_real(norm(vec3<extended_real>(e.p_after - ps)) / norm(ps))));
        q_prev = e.q_after;
        p_prev = e.p_after;
    }
    // degradation below a few thousand ulps of the working precision is not resolvable
    const double floor = 1e3 * std::numeric_limits<extended_real>::epsilon().convert_to<double>();
    auto monotone = [&](const std::vector<double>& e) {
        for (std::size_t k = 1; k < e.size(); ++k)
            if (e[k] < e[k - 1] && std::max(e[k], e[k - 1]) > floor) return false;
        return true;
    };
    bool first_ok = !verr.empty() && verr[0] <= 1e-6;
    bool bound_ok = verr.size() == 10 && *std::max_element(verr.begin(), verr.end()) <= 1e-3;
    bool mono_ok = monotone(verr);

    auto d = analyze_pattern<double>("ababcb", r, Branch::upper);
    auto v64 = verify_periods(d, 10, EventTolerances::local(1e-12));

    Outcome out;
    out.pass = word_ok && first_ok && bound_ok && mono_ok;
    out.detail = "binary128 word " + std::string(word_ok ? "(ababcb)^10" : "mismatch: " + seen) + ", velocity error period 1 " +
                 num(verr.empty() ? NAN : verr[0], 3) + ", max " +
                 num(verr.empty() ? NAN : *std::max_element(verr.begin(), verr.end()), 3) + ", monotone above floor " +
                 (mono_ok ? "yes" : "no") + "; position error " + num(perr.empty() ? NAN : perr.front(), 3) + " -> " +
                 num(perr.empty() ? NAN : perr.back(), 3) + " (" + (monotone(perr) ? "monotone" : "non-monotone") +
                 "); binary64 horizon " + std::to_string(v64.periods_matched) + " periods";
    return out;
}

// 3: upper branch unstable at 20 r in (0.01, 0.10]
Outcome instability(const Options&) {
    Outcome out{true, ""};
    double min_ratio = INFINITY, min_growth = INFINITY;
    int bad = 0;
    for (int k = 1; k <= 20; ++k) {
        double r = 0.01 + k * 0.0045;
        auto a = analyze_pattern<double>("ababcb", r, Branch::upper);
        if (a.verdict == Verdict::infeasible || !a.stability_ratio) {
            ++bad;
            out.detail += "r=" + num(r) + " infeasible; ";
            continue;
        }
        min_ratio = std::min(min_ratio, *a.stability_ratio);
        const auto& f = *a.mobius;
        const double x = *a.fixed_point, d0 = 1e-8;
        double y = x + d0, d1 = 0, dmax = 0;
        for (int it = 1; it <= 20; ++it) {
            y = f(y);
            double d = std::abs(y - x);
            if (it == 1) d1 = d;
            dmax = std::max(dmax, d);
        }
        double dfinal = std::abs(y - x);
        bool grows = *a.stability_ratio > 1 && d1 > d0 && dfinal > d0;
        if (!grows) {
            ++bad;
            out.detail += "r=" + num(r) + " ratio " + num(*a.stability_ratio) + " final deviation " + num(dfinal) + "; ";
        }
        min_growth = std::min(min_growth, dfinal / d0);
    }
    out.pass = bad == 0;
    out.detail += "min stability ratio " + num(min_ratio) + ", min growth of a 1e-8 perturbation over 20 iterations x" +
                  num(min_growth, 3);
    return out;
}

// 4: realized collisions of the default full simulation against the reduced
// orbit. The reduced orbit is also carried in extended precision: in binary64
// its angles round the small components of a collapsing orbit absolutely and
// drift past 1e-9 within ~25 collisions. A simultaneous a/c pair may appear in
// either order and only its combined state has a plane.
struct PlaneAgreement {
    std::size_t compared = 0, mismatches = 0, runs_off = 0;
    double worst = 0;
};

template <class T>
void compare_planes(const Trajectory<double>& full, const SphericalConfig& c0, double r, PlaneAgreement& a) {
    SphericalConfigT<T> c{c0.contact, T(c0.theta), T(c0.phi)};
    const T rr = r;
    std::vector<SphericalConfigT<T>> red;
    for (std::size_t k = 0; k < full.events.size(); ++k) {
        try {
            c = step_trig(c, rr);
        } catch (const numerical_singularity&) {
            break;
        }
        red.push_back(c);
    }
    bool off = false;
    double worst = 0;
    for (std::size_t k = 0; k < red.size(); ++k) {
        const auto& e = full.events[k];
        bool pair = k + 1 < full.events.size() && full.events[k + 1].t == e.t;
        ++a.compared;
        if (pair) {
            if (k + 1 >= red.size()) break;
            std::multiset<char> fs{to_char(e.type), to_char(full.events[k + 1].type)};
            std::multiset<char> rs{to_char(red[k].contact), to_char(red[k + 1].contact)};
            if (fs != rs) {
                ++a.mismatches;
                off = true;
                break;
            }
            ++k;
            ++a.compared;
        } else if (e.type != red[k].contact) {
            ++a.mismatches;
            off = true;
            break;
        }
        const auto& ek = full.events[k];
        auto u_full = normalized(cross(ek.p_after, ek.q_after));
        auto u_red = plane_normal(red[k]);
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(u_full[i] - to_double(u_red[i])));
    }
    a.worst = std::max(a.worst, worst);
    if (off || worst > 1e-9) ++a.runs_off;
}

Outcome conservation(const Options&) {
    auto t0 = std::chrono::steady_clock::now();
    const std::size_t n_steps = 200;
    std::mt19937_64 g(20240401);
    PlaneAgreement ext, b64;
    for (double r : {0.1, 0.3, 0.7}) {
        for (int n = 0; n < 1000; ++n) {
            auto l = random_lift(g);
            auto full = simulate<double>(l.p, l.q, Restitution(r), n_steps);
            compare_planes<extended_real>(full, l.c, r, ext);
            compare_planes<double>(full, l.c, r, b64);
        }
    }
    double secs = seconds_since(t0);
    Outcome out;
    out.pass = ext.mismatches == 0 && ext.worst <= 1e-9 && secs < 60;
    out.detail = std::to_string(ext.compared) + " collisions compared, " + std::to_string(ext.mismatches) +
                 " sequence mismatches, worst normal difference " + num(ext.worst, 3) + ", runs off " +
                 std::to_string(ext.runs_off) + "/3000 (binary64 reduced orbit: " + std::to_string(b64.mismatches) +
                 " mismatches, worst " + num(b64.worst, 3) + ", runs off " + std::to_string(b64.runs_off) +
                 "/3000), " + num(secs, 3) + " s";
    return out;
}

// 5: trigonometric against vectorial
Outcome formulations(const Options&) {
    std::mt19937_64 g(5);
    std::size_t checked = 0, singular = 0, disagree = 0;
    double worst = 0;
    const double rs[3] = {0.1, 0.5, 0.9};
    for (int n = 0; n < 100000; ++n) {
        Restitution r(rs[n % 3]);
        SphericalConfig c{type_from_index(static_cast<int>(g() % 3)), uniform(g, 0, pi / 2), uniform(g, 0, pi)};
        SphericalConfig t;
        PlaneState v;
        bool t_sing = false, v_sing = false;
        try {
            t = step_trig(c, r);
        } catch (const numerical_singularity&) {
            t_sing = true;
        }
        try {
            v = step_vectorial(to_plane(c), r);
        } catch (const numerical_singularity&) {
            v_sing = true;
        }
        if (t_sing || v_sing) {
            ++singular;
            if (t_sing != v_sing) ++disagree;
            continue;
        }
        ++checked;
        if (t.contact != v.contact) {
            ++disagree;
            continue;
        }
        auto u = plane_normal(t);
        double diff = 0;
        for (int i = 0; i < 3; ++i) diff = std::max(diff, std::abs(u[i] - v.u[i]));
        worst = std::max(worst, diff);
        if (diff > 1e-10) ++disagree;
    }
    Outcome out;
    out.pass = disagree == 0;
    out.detail = std::to_string(checked) + " states compared (" + std::to_string(singular) + " singular in both), " +
                 std::to_string(disagree) + " disagreements, worst difference " + num(worst, 3);
    return out;
}

// 6: word structure of long reduced orbits
Outcome structure(const Options&) {
    std::mt19937_64 g(6);
    std::map<SequenceVerdict, std::size_t> bad;
    std::size_t blocks_bad = 0, singular = 0, letters = 0;
    for (double r : {0.1, 0.15, 0.185, 0.5, 0.9}) {
        for (int n = 0; n < 100; ++n) {
            SphericalConfig c{type_from_index(static_cast<int>(g() % 3)), uniform(g, 0, pi / 2), uniform(g, 0, pi)};
            auto o = iterate(c, Restitution(r), 10000, 0, false);
            if (o.termination != OrbitTermination::Completed) ++singular;
            letters += o.word.size();
            auto v = validate_sequence(o.word);
            if (v != SequenceVerdict::ok) ++bad[v];
            if (!decomposes_into_blocks(o.word)) ++blocks_bad;
        }
    }
    Outcome out;
    out.pass = bad.empty() && blocks_bad == 0;
    out.detail = "500 orbits, " + std::to_string(letters) + " collisions; repeats " +
                 std::to_string(bad[SequenceVerdict::violates_no_repeat]) + ", aca/cac " +
                 std::to_string(bad[SequenceVerdict::violates_aca_cac]) + ", b gaps over 3 " +
                 std::to_string(bad[SequenceVerdict::violates_b_gap]) + ", block failures " + std::to_string(blocks_bad) +
                 ", stopped early " + std::to_string(singular);
    return out;
}

// 7: stability windows
Outcome windows(const Options&) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out{true, ""};
    const std::pair<double, std::size_t> targets[] = {{0.15, 4}, {0.098, 6}, {0.088, 8}, {0.0805, 10}};
    for (auto [r, want] : targets) {
        SweepConfig cfg;
        cfg.r_min = cfg.r_max = r;
        auto res = run_sweep(cfg, 1);
        std::map<std::size_t, std::vector<double>> by;
        for (const auto& s : res.records) by[s.traj_id].push_back(s.phi);
        std::size_t agree = 0;
        std::string counts;
        for (auto& [id, phis] : by) {
            auto n = cluster_phis(phis, 0.05).size();
            agree += n == want;
            counts += (counts.empty() ? "" : ",") + std::to_string(n);
        }
        bool ok = agree >= 6;
        out.pass = out.pass && ok;
        out.detail += "r=" + num(r) + " want " + std::to_string(want) + " got [" + counts + "] " + (ok ? "ok" : "FAIL") + "; ";
    }
    {
        SweepConfig cfg;
        cfg.r_min = cfg.r_max = 0.185;
        auto res = run_sweep(cfg, 1);
        std::map<std::size_t, std::pair<double, double>> span;
        for (const auto& s : res.records) {
            auto [it, fresh] = span.try_emplace(s.traj_id, s.phi, s.phi);
            it->second.first = std::min(it->second.first, s.phi);
            it->second.second = std::max(it->second.second, s.phi);
        }
        double narrowest = INFINITY;
        for (const auto& [id, lohi] : span) narrowest = std::min(narrowest, lohi.second - lohi.first);
        bool ok = span.size() == 8 && narrowest >= 1;
        out.pass = out.pass && ok;
        out.detail += "r=0.185 narrowest span " + num(narrowest, 3) + " rad " + (ok ? "ok" : "FAIL") + "; ";
    }
    double secs = seconds_since(t0);
    out.pass = out.pass && secs < 300;
    out.detail += num(secs, 3) + " s";
    return out;
}

// 8: threshold table
Outcome thresholds(const Options&) {
    const double table[] = {0.17157, 0.10102, 0.08643, 0.08070, 0.07782, 0.07180};
    auto t = known_thresholds();
    Outcome out{t.size() == 7, ""};
    auto five = [](double v) { return std::round(v * 1e5) / 1e5; };
    for (std::size_t i = 0; i < 6 && i < t.size(); ++i) {
        bool ok = five(t[i].value) == table[i];
        out.pass = out.pass && ok;
        out.detail += t[i].expression + "=" + num(t[i].value, 7) + (ok ? "" : " (MISMATCH)") + "; ";
    }
    double root = exist_root(0.19, 0.192);
    bool ok = five(root) == 0.19166;
    out.pass = out.pass && ok;
    out.detail += "P root " + num(root, 8);
    return out;
}

std::string run_cli(const std::string& cli, const std::string& args) {
    std::string cmd = "\"" + cli + "\" " + args;
    std::string text;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return text;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
    pclose(pipe);
    return text;
}

// 9: abcab has no self-similar datum
Outcome abcab(const Options& opt) {
    Outcome out{true, ""};
    std::map<std::string, int> positions;
    for (int k = 0; k < 10; ++k) {
        double r = 0.01 + 0.18 * (k + 0.5) / 10;
        std::string text;
        if (!opt.cli.empty()) {
            text = run_cli(opt.cli, "pattern --word abcab --r " + num(r, 17) + " --format json");
        } else {
            fb_buffer* b = nullptr;
            if (fb_pattern("abcab", r, "upper", FB_FORMAT_JSON, &b) == FB_OK) text.assign(fb_buffer_data(b), fb_buffer_size(b));
            fb_buffer_destroy(b);
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const std::exception&) {
            out.pass = false;
            out.detail += "r=" + num(r) + " unreadable output; ";
            continue;
        }
        std::string diag = j.value("diagnostic", "");
        bool ok = j["verdict"] == "infeasible" && j["reason"] == "InfeasibleKinematics" &&
                  diag.find("after the first b") != std::string::npos;
        out.pass = out.pass && ok;
        auto open = diag.find('('), close = diag.find(')');
        ++positions[open == std::string::npos ? diag : diag.substr(open + 1, close - open - 1)];
        if (!ok) out.detail += "r=" + num(r) + " got " + j.dump() + "; ";
    }
    out.detail += std::string(opt.cli.empty() ? "via C API" : "via CLI") + "; mismatch located at:";
    for (const auto& [where, n] : positions) out.detail += " '" + where + "' x" + std::to_string(n);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// 10: thread-count independence of the criterion-7 sweep files
Outcome determinism(const Options& opt) {
    std::filesystem::create_directories(opt.scratch);
    Outcome out{true, ""};
    std::size_t bytes = 0;
    for (double r : {0.15, 0.098, 0.088, 0.0805, 0.185}) {
        std::string ref_rec, ref_sing;
        for (unsigned threads : {1u, 2u, 8u}) {
            auto tag = num(r, 6) + "_t" + std::to_string(threads);
            auto rec = opt.scratch / ("sweep_" + tag + ".csv");
            auto sing = opt.scratch / ("singular_" + tag + ".csv");
            fb_sweep_config* cfg = fb_sweep_config_create();
            fb_status st = fb_sweep_config_set_r(cfg, r, r, 1e-3);
            if (st == FB_OK) st = fb_sweep_run(cfg, threads, FB_FORMAT_CSV, rec.c_str(), sing.c_str());
            fb_sweep_config_destroy(cfg);
            if (st != FB_OK) {
                out.pass = false;
                out.detail += "r=" + num(r) + " threads " + std::to_string(threads) + ": " + fb_last_error() + "; ";
                continue;
            }
            auto a = slurp(rec), b = slurp(sing);
            if (threads == 1) {
                ref_rec = a;
                ref_sing = b;
                bytes += a.size();
            } else if (a != ref_rec || b != ref_sing) {
                out.pass = false;
                out.detail += "r=" + num(r) + " threads " + std::to_string(threads) + " differs; ";
            }
        }
    }
    out.detail += "5 r values x {1,2,8} threads, " + std::to_string(bytes) + " bytes per run set";
    return out;
}

// 11: relative against absolute simulation. Types and times are checked
// against the absolute oracle in extended precision: in binary64 the absolute
// positions (|x| up to ~1e3) cannot resolve gaps of a collapsing orbit and its
// event times drift by ~1e-5. Runs are compared up to the earlier termination,
// which must be a singular one.
template <class T>
void conservation_checks(const std::array<double, 4>& v0, const std::vector<AbsoluteState<T>>& states, double& worst_p,
                         std::size_t& energy_up) {
    double vscale = 0;
    T p0 = 0, e_prev = 0;
    for (double vi : v0) {
        vscale += std::abs(vi);
        p0 += vi;
        e_prev += T(vi) * vi / 2;
    }
    for (const auto& st : states) {
        T pk = 0, ek = 0;
        for (const auto& vi : st.v) {
            pk += vi;
            ek += vi * vi / 2;
        }
        worst_p = std::max(worst_p, std::abs(to_double(T(pk - p0))) / vscale);
        if (ek > e_prev) ++energy_up;
        e_prev = ek;
    }
}

bool singular(Termination t) { return t == Termination::NumericalSingularity || t == Termination::TripleCollision; }

Outcome oracle(const Options&) {
    std::mt19937_64 g(11);
    const std::size_t n_max = 200;
    std::size_t type_mismatch = 0, term_mismatch = 0, events = 0, energy_up = 0;
    std::size_t late = 0;
    double worst_t = 0, worst_t64 = 0, worst_scaled = 0, worst_p = 0;
    for (double r : {0.1, 0.3, 0.7}) {
        for (int n = 0; n < 1000; ++n) {
            auto l = random_lift(g);
            std::array<double, 4> x{}, v{};
            x[0] = uniform(g, -1, 1);
            v[0] = uniform(g, -1, 1);
            for (int i = 0; i < 3; ++i) {
                x[i + 1] = x[i] + l.p[i];
                v[i + 1] = v[i] + l.q[i];
            }
            auto rel = to_relative(AbsoluteState<double>{x, v, 0});
            auto tr = simulate<double>(rel.p, rel.q, Restitution(r), n_max);

            std::array<extended_real, 4> xe, ve;
            for (int i = 0; i < 4; ++i) {
                xe[i] = x[i];
                ve[i] = v[i];
            }
            std::vector<AbsoluteState<extended_real>> states_e;
            auto te = simulate_absolute<extended_real>(xe, ve, Restitution(r), n_max, {}, &states_e);
            std::vector<AbsoluteState<double>> states;
            auto ta = simulate_absolute<double>(x, v, Restitution(r), n_max, {}, &states);

            std::size_t m = std::min(te.events.size(), tr.events.size());
            if (te.word().substr(0, m) != tr.word().substr(0, m)) ++type_mismatch;
            if (te.events.size() != tr.events.size()) {
                auto first = te.events.size() < tr.events.size() ? te.termination : tr.termination;
                if (!singular(first)) ++term_mismatch;
            }
            for (std::size_t k = 0; k < m; ++k) {
                double d = std::abs(to_double(te.events[k].t) - tr.events[k].t);
                if (d > 1e-9) ++late;
                worst_t = std::max(worst_t, d);
                worst_scaled = std::max(worst_scaled, d / std::max(1.0, std::abs(tr.events[k].t)));
            }
            std::size_t m64 = std::min(ta.events.size(), tr.events.size());
            for (std::size_t k = 0; k < m64; ++k) worst_t64 = std::max(worst_t64, std::abs(ta.events[k].t - tr.events[k].t));
            events += m;
            conservation_checks(v, states, worst_p, energy_up);
            conservation_checks(v, states_e, worst_p, energy_up);
        }
    }
    Outcome out;
    out.pass = type_mismatch == 0 && term_mismatch == 0 && worst_t <= 1e-9 && worst_p <= 1e-13 && energy_up == 0;
    out.detail = "3000 runs, " + std::to_string(events) + " collisions; type mismatches " + std::to_string(type_mismatch) +
                 ", non-singular early ends " + std::to_string(term_mismatch) + ", worst time difference " +
                 num(worst_t, 3) + " (events beyond 1e-9: " + std::to_string(late) + "; relative to max(1,t) " +
                 num(worst_scaled, 3) + "; binary64 oracle " + num(worst_t64, 3) + "), worst relative momentum drift " +
                 num(worst_p, 3) + ", energy increases " + std::to_string(energy_up);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc)
            opt.cli = argv[++i];
        else if (a == "--scratch" && i + 1 < argc)
            opt.scratch = argv[++i];
        else if (a == "--only" && i + 1 < argc)
            opt.only.insert(std::stoi(argv[++i]));
        else if (a == "--known-failures" && i + 1 < argc) {
            opt.known.emplace();
            std::stringstream list(argv[++i]);
            for (std::string item; std::getline(list, item, ',');) opt.known->insert(std::stoi(item));
        } else {
            std::cerr << "usage: fourball_acceptance [--cli PATH] [--scratch DIR] [--only N]... [--known-failures N,M,...]\n";
            return 2;
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome(const Options&)>>> criteria = {
        {"ababcb verdict flips at 5-2*sqrt(6) on upper and lower branches", threshold_scan},
        {"ababcb datum at r=0.08 realizes ten periods", realization},
        {"ababcb upper branch is unstable", instability},
        {"full and reduced dynamics share contacts and planes", conservation},
        {"trigonometric and vectorial steps agree", formulations},
        {"reduced orbits avoid aca/cac and decompose into blocks", structure},
        {"stability window cluster counts", windows},
        {"threshold table", thresholds},
        {"abcab is kinematically infeasible after the first b", abcab},
        {"sweep output independent of thread count", determinism},
        {"relative and absolute simulations agree", oracle},
    };
    int failed = 0;
    std::set<int> failing, ran;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (!opt.only.empty() && !opt.only.count(id)) continue;
        Outcome o;
        try {
            o = criteria[i].second(opt);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        ran.insert(id);
        if (!o.pass) failing.insert(id);
        std::printf("criterion %2d: %s  %s -- %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    if (!opt.known) return failed == 0 ? 0 : 1;
    bool as_known = true;
    for (int id : ran) {
        bool expected = opt.known->count(id) > 0;
        if (expected != (failing.count(id) > 0)) {
            std::printf("criterion %d %s, but the known failures list says otherwise\n", id,
                        expected ? "passes" : "fails");
            as_known = false;
        }
    }
    if (as_known && failed > 0) std::printf("failures match the known list\n");
    return as_known ? 0 : 1;
}
