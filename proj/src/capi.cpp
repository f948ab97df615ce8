#include "fourball/fourball.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "fourball/expr.hpp"
#include "fourball/serialize.hpp"

struct fb_buffer {
    std::string text;
};

struct fb_sweep_config {
    fourball::SweepConfig cfg;
};

namespace {

thread_local std::string last_error;

fb_status fail(fb_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

// every entry point funnels exceptions into status codes
template <class F>
fb_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const fourball::emit_error& e) {
        return fail(FB_IO_ERROR, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(FB_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(FB_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(FB_INTERNAL_ERROR, "unknown error");
    }
}

fb_status emit(std::string text, fb_buffer** out) {
    if (!out) return fail(FB_INVALID_ARGUMENT, "output pointer is null");
    *out = new fb_buffer{std::move(text)};
    return FB_OK;
}

fourball::CollisionType contact_of(char c) {
    auto t = fourball::type_from_char(c);
    if (!t) throw std::invalid_argument("contact must be one of a, b, c");
    return *t;
}

fourball::Branch branch_of(const char* s) {
    auto b = s ? fourball::branch_from_string(s) : std::nullopt;
    if (!b) throw std::invalid_argument("branch must be one of upper, middle, lower");
    return *b;
}

fourball::Format format_of(fb_format f) {
    if (f == FB_FORMAT_JSON) return fourball::Format::json;
    if (f == FB_FORMAT_CSV) return fourball::Format::csv;
    throw std::invalid_argument("format must be csv or json");
}

}  // namespace

extern "C" {

const char* fb_buffer_data(const fb_buffer* b) { return b ? b->text.c_str() : nullptr; }
size_t fb_buffer_size(const fb_buffer* b) { return b ? b->text.size() : 0; }
void fb_buffer_destroy(fb_buffer* b) { delete b; }

const char* fb_last_error(void) { return last_error.c_str(); }

fb_status fb_parse_real(const char* text, double* out) {
    return guarded([&] {
        if (!text || !out) return fail(FB_INVALID_ARGUMENT, "null argument");
        *out = fourball::parse_real(text);
        return FB_OK;
    });
}

fb_status fb_apply_collision(const double q[3], char type, double r, double out[3]) {
    return guarded([&] {
        if (!q || !out) return fail(FB_INVALID_ARGUMENT, "null argument");
        if (!std::isfinite(r) || !std::isfinite(q[0]) || !std::isfinite(q[1]) || !std::isfinite(q[2]))
            return fail(FB_INVALID_ARGUMENT, "q and r must be finite");
        auto v = fourball::apply_collision<double>({q[0], q[1], q[2]}, contact_of(type), r);
        for (int i = 0; i < 3; ++i) out[i] = v[i];
        return FB_OK;
    });
}

fb_status fb_simulate(const double p0[3], const double q0[3], double r, uint64_t max_collisions, fb_format fmt,
                      fb_buffer** out) {
    return guarded([&] {
        if (!p0 || !q0) return fail(FB_INVALID_ARGUMENT, "null argument");
        auto f = format_of(fmt);
        auto t = fourball::simulate<double>({p0[0], p0[1], p0[2]}, {q0[0], q0[1], q0[2]}, fourball::Restitution(r),
                                            max_collisions);
        return emit(f == fourball::Format::json ? fourball::to_json(t, r) : fourball::to_csv(t), out);
    });
}

fb_status fb_simulate_absolute(const double x0[4], const double v0[4], double r, uint64_t max_collisions,
                               fb_format fmt, fb_buffer** out) {
    return guarded([&] {
        if (!x0 || !v0) return fail(FB_INVALID_ARGUMENT, "null argument");
        auto f = format_of(fmt);
        auto t = fourball::simulate_absolute<double>({x0[0], x0[1], x0[2], x0[3]}, {v0[0], v0[1], v0[2], v0[3]},
                                                     fourball::Restitution(r), max_collisions);
        return emit(f == fourball::Format::json ? fourball::to_json(t, r) : fourball::to_csv(t), out);
    });
}

fb_status fb_reduce(char contact, double theta0, double phi0, double r, uint64_t steps, uint64_t keep_last_b,
                    fb_format fmt, fb_buffer** out) {
    return guarded([&] {
        auto f = format_of(fmt);
        fourball::SphericalConfig c0{contact_of(contact), theta0, phi0};
        if (!(theta0 >= 0 && theta0 <= 1.5707963267948966)) throw std::invalid_argument("theta0 must lie in [0, pi/2]");
        if (!(phi0 > 0 && phi0 < 3.141592653589793)) throw std::invalid_argument("phi0 must lie in (0, pi)");
        auto o = fourball::iterate(c0, fourball::Restitution(r), steps, keep_last_b);
        return emit(f == fourball::Format::json ? fourball::to_json(o, c0, r) : fourball::to_csv(o), out);
    });
}

fb_status fb_pattern(const char* word, double r, const char* branch, fb_format fmt, fb_buffer** out) {
    return guarded([&] {
        if (!word) return fail(FB_INVALID_ARGUMENT, "null word");
        auto f = format_of(fmt);
        (void)fourball::Restitution{r};
        fourball::parse_word(word);
        auto rep = fourball::self_similar_datum(word, r, branch_of(branch));
        return emit(f == fourball::Format::json ? fourball::to_json(rep)
                                                : fourball::csv_header_report() + fourball::to_csv_row(rep),
                    out);
    });
}

fb_status fb_selfsimilar(const char* word, double r_min, double r_max, double r_step, const char* branch,
                         fb_format fmt, fb_buffer** out) {
    return guarded([&] {
        if (!word) return fail(FB_INVALID_ARGUMENT, "null word");
        auto f = format_of(fmt);
        fourball::parse_word(word);
        fourball::SweepConfig grid;
        grid.r_min = r_min;
        grid.r_max = r_max;
        grid.r_step = r_step;
        grid.validate();
        std::vector<fourball::Branch> branches{fourball::Branch::upper, fourball::Branch::middle, fourball::Branch::lower};
        if (branch) branches = {branch_of(branch)};
        std::string text = f == fourball::Format::csv ? fourball::csv_header_report() : std::string();
        for (double r : grid.r_values())
            for (auto b : branches) {
                auto rep = fourball::self_similar_datum(word, r, b);
                text += f == fourball::Format::json ? fourball::to_json(rep) : fourball::to_csv_row(rep);
            }
        return emit(std::move(text), out);
    });
}

fb_status fb_thresholds(fb_format fmt, fb_buffer** out) {
    return guarded([&] {
        auto f = format_of(fmt);
        return emit(f == fourball::Format::json ? fourball::thresholds_json() : fourball::thresholds_csv(), out);
    });
}

fb_sweep_config* fb_sweep_config_create(void) { return new fb_sweep_config{}; }
void fb_sweep_config_destroy(fb_sweep_config* cfg) { delete cfg; }

fb_status fb_sweep_config_set_r(fb_sweep_config* cfg, double r_min, double r_max, double r_step) {
    return guarded([&] {
        if (!cfg) return fail(FB_INVALID_ARGUMENT, "null config");
        fourball::SweepConfig next = cfg->cfg;
        next.r_min = r_min;
        next.r_max = r_max;
        next.r_step = r_step;
        next.validate();
        cfg->cfg = next;
        return FB_OK;
    });
}

fb_status fb_sweep_config_set_grid(fb_sweep_config* cfg, uint64_t grid_theta, uint64_t grid_phi) {
    return guarded([&] {
        if (!cfg) return fail(FB_INVALID_ARGUMENT, "null config");
        fourball::SweepConfig next = cfg->cfg;
        next.mode = fourball::InitMode::grid;
        next.grid_theta = grid_theta;
        next.grid_phi = grid_phi;
        next.validate();
        cfg->cfg = next;
        return FB_OK;
    });
}

fb_status fb_sweep_config_set_random(fb_sweep_config* cfg, uint64_t count, uint64_t seed) {
    return guarded([&] {
        if (!cfg) return fail(FB_INVALID_ARGUMENT, "null config");
        fourball::SweepConfig next = cfg->cfg;
        next.mode = fourball::InitMode::random;
        next.random_count = count;
        next.rng_seed = seed;
        next.validate();
        cfg->cfg = next;
        return FB_OK;
    });
}

fb_status fb_sweep_config_set_contact(fb_sweep_config* cfg, char contact) {
    return guarded([&] {
        if (!cfg) return fail(FB_INVALID_ARGUMENT, "null config");
        fourball::SweepConfig next = cfg->cfg;
        next.contact0 = contact_of(contact);
        next.validate();
        cfg->cfg = next;
        return FB_OK;
    });
}

fb_status fb_sweep_config_set_limits(fb_sweep_config* cfg, uint64_t max_collisions, uint64_t keep_last_b) {
    return guarded([&] {
        if (!cfg) return fail(FB_INVALID_ARGUMENT, "null config");
        fourball::SweepConfig next = cfg->cfg;
        next.max_collisions = max_collisions;
        next.keep_last_b = keep_last_b;
        next.validate();
        cfg->cfg = next;
        return FB_OK;
    });
}

fb_status fb_sweep_run(const fb_sweep_config* cfg, unsigned threads, fb_format fmt, const char* records_path,
                       const char* singularities_path) {
    return guarded([&] {
        if (!cfg || !records_path) return fail(FB_INVALID_ARGUMENT, "null argument");
        auto f = format_of(fmt);
        cfg->cfg.validate();
        auto open = [](const char* path, std::ofstream& file) -> std::ostream& {
            if (std::string(path) == "-") return std::cout;
            file.open(path, std::ios::binary);
            if (!file) throw fourball::emit_error(0, std::string("cannot open ") + path);
            return file;
        };
        std::ofstream rec_file, sing_file;
        std::ostream& rec = open(records_path, rec_file);
        std::ostream* sing = singularities_path ? &open(singularities_path, sing_file) : nullptr;
        fourball::stream_sweep(cfg->cfg, threads, f, rec, sing);
        return FB_OK;
    });
}

}  // extern "C"
