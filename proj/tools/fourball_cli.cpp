#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fourball/fourball.h"

namespace {

enum Exit { ok = 0, internal = 1, validation = 2, io = 3 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double real_arg(const std::string& flag, const std::string& text) {
    double v = 0;
    if (fb_parse_real(text.c_str(), &v) != FB_OK) throw usage_error("--" + flag + ": " + fb_last_error());
    return v;
}

std::vector<double> vector_arg(const std::string& flag, const std::string& text, std::size_t n) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        auto c = text.find(',', pos);
        out.push_back(real_arg(flag, text.substr(pos, c == std::string::npos ? std::string::npos : c - pos)));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    if (out.size() != n) throw usage_error("--" + flag + ": expected " + std::to_string(n) + " comma-separated values");
    return out;
}

char contact_arg(const std::string& text) {
    if (text.size() != 1 || text.find_first_of("abc") != 0) throw usage_error("--contact: must be one of a, b, c");
    return text[0];
}

fb_format format_arg(const std::string& text) { return text == "csv" ? FB_FORMAT_CSV : FB_FORMAT_JSON; }

int status_exit(fb_status s) {
    switch (s) {
        case FB_OK: return ok;
        case FB_INVALID_ARGUMENT: return validation;
        case FB_IO_ERROR: return io;
        default: return internal;
    }
}

int finish(fb_status s, fb_buffer** slot, const std::string& out) {
    fb_buffer* buf = *slot;
    if (s != FB_OK) {
        std::cerr << "error: " << fb_last_error() << "\n";
        return status_exit(s);
    }
    std::unique_ptr<fb_buffer, decltype(&fb_buffer_destroy)> guard(buf, fb_buffer_destroy);
    if (out.empty() || out == "-") {
        std::cout.write(fb_buffer_data(buf), static_cast<std::streamsize>(fb_buffer_size(buf)));
        std::cout.flush();
        if (!std::cout) {
            std::cerr << "error: cannot write to standard output\n";
            return io;
        }
        return ok;
    }
    std::ofstream f(out, std::ios::binary);
    f.write(fb_buffer_data(buf), static_cast<std::streamsize>(fb_buffer_size(buf)));
    f.close();
    if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return io;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-particle inelastic collapse toolkit"};
    app.require_subcommand(1);

    // one variable per subcommand: default_val writes through at registration
    std::map<const CLI::App*, std::string> formats;
    std::string out, r_text;
    auto add_common = [&](CLI::App* sub, const char* default_format) {
        sub->add_option("--format", formats[sub], "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->default_val(default_format);
        sub->add_option("--out", out, "output path (default: standard output)");
    };

    std::string p0, q0, x0, v0;
    std::size_t max_collisions = 1000, sweep_max_collisions = 10000;
    auto* sim = app.add_subcommand("simulate", "event-driven simulation in relative coordinates");
    sim->add_option("--p0", p0, "gaps p1,p2,p3")->required();
    sim->add_option("--q0", q0, "relative velocities q1,q2,q3")->required();
    sim->add_option("--r", r_text, "restitution coefficient")->required();
    sim->add_option("--max-collisions", max_collisions)->default_val(1000);
    add_common(sim, "json");

    auto* sima = app.add_subcommand("simulate-absolute", "event-driven simulation in particle coordinates");
    sima->add_option("--x0", x0, "positions x1,x2,x3,x4 (sorted)")->required();
    sima->add_option("--v0", v0, "velocities v1,v2,v3,v4")->required();
    sima->add_option("--r", r_text, "restitution coefficient")->required();
    sima->add_option("--max-collisions", max_collisions)->default_val(1000);
    add_common(sima, "json");

    std::string theta0, phi0, contact = "a", sweep_contact = "a";
    std::size_t steps = 10000, keep_last_b = 500, sweep_keep_last_b = 500;
    auto* red = app.add_subcommand("reduce", "iterate the reduced map on the sphere");
    red->add_option("--theta0", theta0)->required();
    red->add_option("--phi0", phi0)->required();
    red->add_option("--contact", contact)->default_val("a");
    red->add_option("--r", r_text, "restitution coefficient")->required();
    red->add_option("--steps", steps)->default_val(10000);
    red->add_option("--keep-last-b", keep_last_b)->default_val(500);
    add_common(red, "json");

    std::string word, branch = "upper";
    auto* pat = app.add_subcommand("pattern", "self-similar analysis of one collision word at one r");
    pat->add_option("--word", word)->required();
    pat->add_option("--r", r_text, "restitution coefficient")->required();
    pat->add_option("--branch", branch)->check(CLI::IsMember({"upper", "middle", "lower"}))->default_val("upper");
    add_common(pat, "json");

    std::string r_min, r_max, r_step, sweep_r_step, ss_branch;
    auto* ss = app.add_subcommand("selfsimilar", "self-similar analysis over a grid of r");
    ss->add_option("--word", word)->required();
    ss->add_option("--r-min", r_min)->required();
    ss->add_option("--r-max", r_max)->required();
    ss->add_option("--r-step", r_step)->required();
    ss->add_option("--branch", ss_branch, "upper, middle or lower (default: all)")
        ->check(CLI::IsMember({"upper", "middle", "lower"}));
    add_common(ss, "json");

    std::size_t grid_theta = 2, grid_phi = 4, random_count = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string singularities_out;
    auto* sw = app.add_subcommand("sweep", "parameter sweep of the reduced map");
    sw->add_option("--r-min", r_min)->required();
    sw->add_option("--r-max", r_max)->required();
    sw->add_option("--r-step", sweep_r_step)->default_val("0.001");
    sw->add_option("--grid-theta", grid_theta)->default_val(2);
    sw->add_option("--grid-phi", grid_phi)->default_val(4);
    sw->add_option("--contact", sweep_contact)->default_val("a");
    sw->add_option("--max-collisions", sweep_max_collisions)->default_val(10000);
    sw->add_option("--keep-last-b", sweep_keep_last_b)->default_val(500);
    auto* count_opt = sw->add_option("--random-count", random_count, "random initial configurations instead of the grid");
    sw->add_option("--seed", seed, "seed for the mt19937_64 generator")->needs(count_opt);
    sw->add_option("--threads", threads)->default_val(1);
    sw->add_option("--singularities-out", singularities_out, "singularity log path");
    add_common(sw, "csv");

    auto* th = app.add_subcommand("thresholds", "known critical restitution coefficients");
    add_common(th, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation;
    }

    try {
        fb_buffer* buf = nullptr;
        const CLI::App* chosen = app.get_subcommands().front();
        fb_format fmt = format_arg(formats[chosen]);
        if (*sim) {
            auto p = vector_arg("p0", p0, 3), q = vector_arg("q0", q0, 3);
            return finish(fb_simulate(p.data(), q.data(), real_arg("r", r_text), max_collisions, fmt, &buf), &buf, out);
        }
        if (*sima) {
            auto x = vector_arg("x0", x0, 4), v = vector_arg("v0", v0, 4);
            return finish(fb_simulate_absolute(x.data(), v.data(), real_arg("r", r_text), max_collisions, fmt, &buf), &buf, out);
        }
        if (*red) {
            return finish(fb_reduce(contact_arg(contact), real_arg("theta0", theta0), real_arg("phi0", phi0),
                                    real_arg("r", r_text), steps, keep_last_b, fmt, &buf),
                          &buf, out);
        }
        if (*pat) return finish(fb_pattern(word.c_str(), real_arg("r", r_text), branch.c_str(), fmt, &buf), &buf, out);
        if (*ss) {
            return finish(fb_selfsimilar(word.c_str(), real_arg("r-min", r_min), real_arg("r-max", r_max),
                                         real_arg("r-step", r_step), ss_branch.empty() ? nullptr : ss_branch.c_str(),
                                         fmt, &buf),
                          &buf, out);
        }
        if (*th) return finish(fb_thresholds(fmt, &buf), &buf, out);
        if (*sw) {
            std::unique_ptr<fb_sweep_config, decltype(&fb_sweep_config_destroy)> cfg(fb_sweep_config_create(),
                                                                                    fb_sweep_config_destroy);
            fb_status s = fb_sweep_config_set_r(cfg.get(), real_arg("r-min", r_min), real_arg("r-max", r_max),
                                                real_arg("r-step", sweep_r_step));
            if (s == FB_OK) s = random_count > 0 ? fb_sweep_config_set_random(cfg.get(), random_count, seed)
                                                 : fb_sweep_config_set_grid(cfg.get(), grid_theta, grid_phi);
            if (s == FB_OK) s = fb_sweep_config_set_contact(cfg.get(), contact_arg(sweep_contact));
            if (s == FB_OK) s = fb_sweep_config_set_limits(cfg.get(), sweep_max_collisions, sweep_keep_last_b);
            if (s == FB_OK)
                s = fb_sweep_run(cfg.get(), threads, fmt, out.empty() ? "-" : out.c_str(),
                                 singularities_out.empty() ? nullptr : singularities_out.c_str());
            if (s != FB_OK) std::cerr << "error: " << fb_last_error() << "\n";
            return status_exit(s);
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation;
    }
    return internal;
}
