#include "fourball/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace fourball {

void SweepConfig::validate() const {
    auto bad = [](const std::string& m) { throw std::invalid_argument(m); };
    if (!std::isfinite(r_min) || !std::isfinite(r_max) || !std::isfinite(r_step)) bad("r-min/r-max/r-step must be finite");
    if (r_min > r_max) bad("r-min must not exceed r-max");
    if (!(r_step > 0)) bad("r-step must be positive");
    if (!(r_min > 0 && r_max < 1)) bad("r values must lie in (0,1)");
    if (mode == InitMode::grid && (grid_theta < 1 || grid_phi < 1)) bad("grid-theta and grid-phi must be at least 1");
    if (mode == InitMode::random && random_count < 1) bad("random-count must be at least 1");
    if (mode == InitMode::random && !rng_seed) bad("random mode requires a seed");
}

std::vector<double> SweepConfig::r_values() const {
    std::vector<double> out;
    auto n = static_cast<std::size_t>(std::floor((r_max - r_min) / r_step + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) out.push_back(r_min + static_cast<double>(k) * r_step);
    return out;
}

std::vector<std::pair<double, double>> SweepConfig::initial_conditions() const {
    const double half_pi = std::numbers::pi / 2, pi = std::numbers::pi;
    std::vector<std::pair<double, double>> out;
    if (mode == InitMode::grid) {
        for (std::size_t i = 0; i < grid_theta; ++i)
            for (std::size_t j = 0; j < grid_phi; ++j)
                out.emplace_back(static_cast<double>(i + 1) / static_cast<double>(grid_theta + 1) * half_pi,
                                 static_cast<double>(j + 1) / static_cast<double>(grid_phi + 1) * pi);
        return out;
    }
    // 53-bit mantissa from the top bits, shifted off zero so both ends stay open
    std::mt19937_64 gen(*rng_seed);
    auto unit = [&] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
    for (std::size_t k = 0; k < random_count; ++k) {
        double th = unit() * half_pi;
        double ph = unit() * pi;
        out.emplace_back(th, ph);
    }
    return out;
}

SweepResult run_sweep(const SweepConfig& cfg, unsigned threads) {
    cfg.validate();
    return run_sweep(cfg, threads, 0, cfg.r_values().size());
}

SweepResult run_sweep(const SweepConfig& cfg, unsigned threads, std::size_t r_begin, std::size_t r_end) {
    cfg.validate();
    auto all = cfg.r_values();
    r_end = std::min(r_end, all.size());
    const std::vector<double> rs(all.begin() + static_cast<std::ptrdiff_t>(std::min(r_begin, r_end)),
                                 all.begin() + static_cast<std::ptrdiff_t>(r_end));
    const auto inits = cfg.initial_conditions();
    const std::size_t n_traj = inits.size(), n_tasks = rs.size() * n_traj;
    struct Slot {
        std::vector<SweepRecord> records;
        std::optional<SingularityLog> singular;
    };
    std::vector<Slot> slots(n_tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < n_tasks; task = next++) {
            const double r = rs[task / n_traj];
            const std::size_t id = task % n_traj;
            const auto [th0, ph0] = inits[id];
            auto orbit = iterate({cfg.contact0, th0, ph0}, Restitution(r), cfg.max_collisions, cfg.keep_last_b, false);
            Slot& s = slots[task];
            if (orbit.termination != OrbitTermination::Completed) {
                s.singular = SingularityLog{r, id, *orbit.singularity, orbit.word.size() + 1};
                continue;
            }
            s.records.reserve(orbit.b_samples.size());
            for (std::size_t k = 0; k < orbit.b_samples.size(); ++k)
                s.records.push_back({r, id, th0, ph0, k, orbit.b_samples[k].theta, orbit.b_samples[k].phi});
        }
    };
    unsigned n = std::max(1u, threads);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    SweepResult out;
    for (auto& s : slots) {
        out.records.insert(out.records.end(), s.records.begin(), s.records.end());
        if (s.singular) out.singularities.push_back(*s.singular);
    }
    return out;
}

std::optional<DetectedPeriod> detect_period(std::string_view word, std::size_t max_period) {
    if (max_period == 0 || word.size() < 4 * max_period)
        throw std::invalid_argument("detect_period needs a word of length at least 4*max_period");
    for (std::size_t L = 1; L <= max_period; ++L) {
        std::string_view tail = word.substr(word.size() - 3 * L);
        bool periodic = true;
        for (std::size_t k = L; k < tail.size() && periodic; ++k) periodic = tail[k] == tail[k - L];
        if (!periodic) continue;
        std::string cyc(tail.substr(2 * L));
        DetectedPeriod d{L, 0, cyc};
        for (std::size_t s = 1; s < L; ++s) {
            std::string rot = cyc.substr(s) + cyc.substr(0, s);
            if (rot < d.cycle) {
                d.cycle = rot;
                d.phase = s;
            }
        }
        return d;
    }
    return std::nullopt;
}

std::vector<Cluster> cluster_phis(std::vector<double> samples, double gap) {
    if (!(gap > 0)) throw std::invalid_argument("gap must be positive");
    std::vector<Cluster> out;
    if (samples.empty()) return out;
    std::sort(samples.begin(), samples.end());
    double sum = samples[0];
    std::size_t count = 1;
    for (std::size_t k = 1; k < samples.size(); ++k) {
        if (samples[k] - samples[k - 1] > gap) {
            out.push_back({sum / static_cast<double>(count), count});
            sum = 0;
            count = 0;
        }
        sum += samples[k];
        ++count;
    }
    out.push_back({sum / static_cast<double>(count), count});
    std::stable_sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.count > b.count; });
    return out;
}

std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void checked(std::ostream& out, std::size_t index) {
    if (!out) throw emit_error(index, "write failed at record " + std::to_string(index));
}

}  // namespace

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    out << "r,traj_id,theta0,phi0,sample_index,theta,phi\n";
    checked(out, 0);
    std::string line;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& s = records[k];
        line.clear();
        line += format_real(s.r) + ',' + std::to_string(s.traj_id) + ',' + format_real(s.theta0) + ',' +
                format_real(s.phi0) + ',' + std::to_string(s.sample_index) + ',' + format_real(s.theta) + ',' +
                format_real(s.phi) + '\n';
        out << line;
        checked(out, k);
    }
    out.flush();
    checked(out, records.size());
}

void emit_singularities_csv(const std::vector<SingularityLog>& logs, std::ostream& out) {
    out << "r,traj_id,kind,at_step\n";
    checked(out, 0);
    for (std::size_t k = 0; k < logs.size(); ++k) {
        const auto& s = logs[k];
        out << format_real(s.r) << ',' << s.traj_id << ',' << to_string(s.kind) << ',' << s.at_step << '\n';
        checked(out, k);
    }
    out.flush();
    checked(out, logs.size());
}

void emit_json_lines(const std::vector<SweepRecord>& records, std::ostream& out) {
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& s = records[k];
        nlohmann::ordered_json j{{"r", s.r},         {"traj_id", s.traj_id},           {"theta0", s.theta0},
                                 {"phi0", s.phi0},   {"sample_index", s.sample_index}, {"theta", s.theta},
                                 {"phi", s.phi}};
        out << j.dump() << '\n';
        checked(out, k);
    }
    out.flush();
}

void emit_singularities_json_lines(const std::vector<SingularityLog>& logs, std::ostream& out) {
    for (std::size_t k = 0; k < logs.size(); ++k) {
        const auto& s = logs[k];
        nlohmann::ordered_json j{{"r", s.r}, {"traj_id", s.traj_id}, {"kind", to_string(s.kind)}, {"at_step", s.at_step}};
        out << j.dump() << '\n';
        checked(out, k);
    }
    out.flush();
}

std::vector<SweepRecord> parse_csv(std::istream& in) {
    std::vector<SweepRecord> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    auto real = [](std::string_view f) {
        double v = 0;
        auto res = std::from_chars(f.data(), f.data() + f.size(), v);
        if (res.ec != std::errc()) throw std::invalid_argument("bad real in csv: " + std::string(f));
        return v;
    };
    auto natural = [](std::string_view f) {
        std::size_t v = 0;
        auto res = std::from_chars(f.data(), f.data() + f.size(), v);
        if (res.ec != std::errc()) throw std::invalid_argument("bad index in csv: " + std::string(f));
        return v;
    };
    while (std::getline(in, line)) {
        std::vector<std::string_view> f;
        std::string_view sv(line);
        std::size_t pos = 0;
        while (true) {
            auto c = sv.find(',', pos);
            f.push_back(sv.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
            if (c == std::string_view::npos) break;
            pos = c + 1;
        }
        if (f.size() != 7) throw std::invalid_argument("csv row must have 7 fields");
        out.push_back({real(f[0]), natural(f[1]), real(f[2]), real(f[3]), natural(f[4]), real(f[5]), real(f[6])});
    }
    return out;
}

}  // namespace fourball
