#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fourball/spherical.hpp"

namespace fourball {

enum class InitMode { grid, random };

struct SweepConfig {
    double r_min = 0.15;
    double r_max = 0.15;
    double r_step = 1e-3;
    std::size_t grid_theta = 2;
    std::size_t grid_phi = 4;
    CollisionType contact0 = CollisionType::a;
    std::size_t max_collisions = 10000;
    std::size_t keep_last_b = 500;
    std::optional<std::uint64_t> rng_seed;
    InitMode mode = InitMode::grid;
    std::size_t random_count = 0;

    static constexpr const char* rng_algorithm = "mt19937_64";

    void validate() const;  // throws std::invalid_argument naming the field
    std::vector<double> r_values() const;
    std::vector<std::pair<double, double>> initial_conditions() const;  // (theta0, phi0) per traj_id
};

struct SweepRecord {
    double r = 0;
    std::size_t traj_id = 0;
    double theta0 = 0;
    double phi0 = 0;
    std::size_t sample_index = 0;
    double theta = 0;
    double phi = 0;
};

struct SingularityLog {
    double r = 0;
    std::size_t traj_id = 0;
    SingularityKind kind = SingularityKind::TimeUnderflow;
    std::size_t at_step = 0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SingularityLog> singularities;
};

SweepResult run_sweep(const SweepConfig& cfg, unsigned threads = 1);
// only the r values with index in [r_begin, r_end)
SweepResult run_sweep(const SweepConfig& cfg, unsigned threads, std::size_t r_begin, std::size_t r_end);

struct DetectedPeriod {
    std::size_t length = 0;
    std::size_t phase = 0;  // offset of `cycle` inside the trailing period
    std::string cycle;      // least rotation of the trailing period
};

std::optional<DetectedPeriod> detect_period(std::string_view word, std::size_t max_period);

struct Cluster {
    double center = 0;
    std::size_t count = 0;
};

std::vector<Cluster> cluster_phis(std::vector<double> samples, double gap = 0.05);

struct emit_error : std::runtime_error {
    std::size_t index;
    emit_error(std::size_t i, const std::string& msg) : std::runtime_error(msg), index(i) {}
};

std::string format_real(double v);  // 17 significant digits, locale independent

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_singularities_csv(const std::vector<SingularityLog>& logs, std::ostream& out);
void emit_json_lines(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_singularities_json_lines(const std::vector<SingularityLog>& logs, std::ostream& out);

std::vector<SweepRecord> parse_csv(std::istream& in);

}  // namespace fourball
