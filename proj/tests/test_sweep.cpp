#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "fourball/sweep.hpp"

using namespace fourball;

namespace {

std::size_t clusters_for(double r, std::size_t traj = 0) {
    SweepConfig cfg;
    cfg.r_min = cfg.r_max = r;
    auto res = run_sweep(cfg);
    std::vector<double> phis;
    for (const auto& s : res.records)
        if (s.traj_id == traj) phis.push_back(s.phi);
    return cluster_phis(phis).size();
}

}  // namespace

TEST_CASE("config validation names the field") {
    SweepConfig cfg;
    cfg.r_min = 0.2;
    cfg.r_max = 0.1;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("r-min"), std::invalid_argument);
    cfg = {};
    cfg.r_step = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("r-step"), std::invalid_argument);
    cfg = {};
    cfg.r_max = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.grid_phi = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid-phi"), std::invalid_argument);
    cfg = {};
    cfg.mode = InitMode::random;
    cfg.random_count = 3;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("seed"), std::invalid_argument);
}

TEST_CASE("r grid is inclusive") {
    SweepConfig cfg;
    cfg.r_min = 0.1;
    cfg.r_max = 0.105;
    cfg.r_step = 0.001;
    auto rs = cfg.r_values();
    REQUIRE(rs.size() == 6);
    CHECK(rs.front() == 0.1);
    CHECK(rs.back() == doctest::Approx(0.105));
}

TEST_CASE("grid initial conditions are interior") {
    SweepConfig cfg;
    auto inits = cfg.initial_conditions();
    REQUIRE(inits.size() == 8);
    CHECK(inits[0].first == doctest::Approx(std::numbers::pi / 6));
    CHECK(inits[0].second == doctest::Approx(std::numbers::pi / 5));
    CHECK(inits[7].first == doctest::Approx(std::numbers::pi / 3));
    CHECK(inits[7].second == doctest::Approx(4 * std::numbers::pi / 5));
}

TEST_CASE("random initial conditions are replayable") {
    SweepConfig cfg;
    cfg.mode = InitMode::random;
    cfg.random_count = 50;
    cfg.rng_seed = 7;
    auto a = cfg.initial_conditions(), b = cfg.initial_conditions();
    CHECK(a == b);
    for (auto [th, ph] : a) {
        CHECK(th > 0);
        CHECK(th < std::numbers::pi / 2);
        CHECK(ph > 0);
        CHECK(ph < std::numbers::pi);
    }
    cfg.rng_seed = 8;
    CHECK(cfg.initial_conditions() != a);
    CHECK(std::string(SweepConfig::rng_algorithm) == "mt19937_64");
}

TEST_CASE("a 1x1 grid sits on phi=pi/2") {
    SweepConfig cfg;
    cfg.r_min = cfg.r_max = 0.15;
    cfg.grid_theta = cfg.grid_phi = 1;
    auto res = run_sweep(cfg);
    CHECK(res.records.empty());
    REQUIRE(res.singularities.size() == 1);
    CHECK(res.singularities[0].kind == SingularityKind::PhiAtBoundary);
    CHECK(res.singularities[0].at_step == 1);
}

TEST_CASE("single trajectory at r=0.15 gives 500 samples in 4 clusters") {
    SweepConfig cfg;
    cfg.r_min = cfg.r_max = 0.15;
    cfg.grid_theta = 1;
    cfg.grid_phi = 2;
    auto res = run_sweep(cfg);
    std::vector<double> phis;
    std::size_t n = 0;
    for (const auto& s : res.records) {
        if (s.traj_id != 0) continue;
        ++n;
        phis.push_back(s.phi);
        CHECK(s.phi > 0);
        CHECK(s.phi < std::numbers::pi);
    }
    CHECK(n == 500);
    CHECK(cluster_phis(phis).size() == 4);
}

TEST_CASE("window cluster counts") {
    CHECK(clusters_for(0.098) == 6);
    CHECK(clusters_for(0.086) == 8);
    CHECK(clusters_for(0.0805) == 10);
}

TEST_CASE("outside the windows the samples spread") {
    SweepConfig cfg;
    cfg.r_min = cfg.r_max = 0.185;
    auto res = run_sweep(cfg);
    std::map<std::size_t, std::pair<double, double>> span;
    for (const auto& s : res.records) {
        auto [it, fresh] = span.try_emplace(s.traj_id, s.phi, s.phi);
        it->second.first = std::min(it->second.first, s.phi);
        it->second.second = std::max(it->second.second, s.phi);
    }
    for (const auto& [id, lohi] : span) CHECK(lohi.second - lohi.first > 1.0);
}

TEST_CASE("records are ordered and bounded per trajectory") {
    SweepConfig cfg;
    cfg.r_min = 0.1;
    cfg.r_max = 0.11;
    cfg.r_step = 0.005;
    cfg.max_collisions = 2000;
    cfg.keep_last_b = 100;
    auto res = run_sweep(cfg, 3);
    std::map<std::pair<double, std::size_t>, std::size_t> counts;
    const auto inits = cfg.initial_conditions();
    for (std::size_t k = 0; k < res.records.size(); ++k) {
        const auto& s = res.records[k];
        ++counts[{s.r, s.traj_id}];
        CHECK(s.theta0 == inits[s.traj_id].first);
        CHECK(s.phi0 == inits[s.traj_id].second);
        if (k > 0) {
            const auto& p = res.records[k - 1];
            CHECK(std::tie(p.r, p.traj_id, p.sample_index) < std::tie(s.r, s.traj_id, s.sample_index));
        }
    }
    for (const auto& [key, n] : counts) CHECK(n <= 100);
}

TEST_CASE("singularities accumulate near the low end of [0.072, 0.08]") {
    SweepConfig cfg;
    cfg.r_min = 0.072;
    cfg.r_max = 0.08;
    cfg.r_step = 0.0005;
    auto res = run_sweep(cfg, 2);
    REQUIRE_FALSE(res.singularities.empty());
    std::size_t low = 0, high = 0;
    for (const auto& s : res.singularities) (s.r < 0.076 ? low : high)++;
    CHECK(low > high);
    for (const auto& s : res.singularities) CHECK(s.at_step >= 1);
}

TEST_CASE("detect_period") {
    CHECK(detect_period("ababcbababcbababcbababcb", 6)->length == 6);
    auto d = detect_period("cbababcbababcbababcbababcbab", 6);
    REQUIRE(d);
    CHECK(d->length == 6);
    CHECK(d->cycle == "ababcb");
    CHECK_FALSE(detect_period("abcbacbcabacbcbacabcbcab", 6));
    CHECK_THROWS_AS(detect_period("abab", 2), std::invalid_argument);
}

TEST_CASE("orbit tail at r=0.15 has period (ab)^2(cb)^2") {
    auto o = iterate({CollisionType::a, 0.7, 1.1}, Restitution(0.15), 10000, 0, false);
    auto d = detect_period(o.word, 12);
    REQUIRE(d);
    CHECK(d->length == 8);
    CHECK(d->cycle == "ababcbcb");
}

TEST_CASE("cluster_phis") {
    auto c = cluster_phis({0.10, 0.11, 2.00, 2.01}, 0.5);
    REQUIRE(c.size() == 2);
    CHECK(c[0].center == doctest::Approx(0.105));
    CHECK(c[1].center == doctest::Approx(2.005));
    auto one = cluster_phis({1.3, 1.3, 1.3, 1.3});
    REQUIRE(one.size() == 1);
    CHECK(one[0].count == 4);
    CHECK(cluster_phis({}).empty());
    CHECK_THROWS_AS(cluster_phis({1.0}, 0), std::invalid_argument);
    auto big = cluster_phis({0.1, 1.0, 1.01, 1.02});
    CHECK(big[0].count == 3);
}

TEST_CASE("csv emission") {
    std::ostringstream empty;
    emit_csv({}, empty);
    CHECK(empty.str() == "r,traj_id,theta0,phi0,sample_index,theta,phi\n");

    SweepRecord rec{0.15, 3, 0.5235987755982988, 1.2566370614359172, 7, 0.1, 2.0943951023931957};
    std::ostringstream one;
    emit_csv({rec}, one);
    auto text = one.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find(" \n") == std::string::npos);
    CHECK(text.find("0.14999999999999999,3,") != std::string::npos);
    std::istringstream in(text);
    auto back = parse_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].r == rec.r);
    CHECK(back[0].traj_id == rec.traj_id);
    CHECK(back[0].theta0 == rec.theta0);
    CHECK(back[0].phi0 == rec.phi0);
    CHECK(back[0].sample_index == rec.sample_index);
    CHECK(back[0].theta == rec.theta);
    CHECK(back[0].phi == rec.phi);

    std::ostringstream sing;
    emit_singularities_csv({{0.072, 1, SingularityKind::TimeUnderflow, 42}}, sing);
    CHECK(sing.str() == "r,traj_id,kind,at_step\n0.071999999999999995,1,TimeUnderflow,42\n");
}

TEST_CASE("write failures report the record index") {
    std::ostringstream out;
    out.setstate(std::ios::badbit);
    try {
        emit_csv({SweepRecord{}}, out);
        FAIL("expected emit_error");
    } catch (const emit_error& e) {
        CHECK(e.index == 0);
    }
}

TEST_CASE("json lines carry the same fields") {
    std::ostringstream out;
    emit_json_lines({SweepRecord{0.15, 0, 0.5, 1.0, 0, 0.25, 2.0}}, out);
    CHECK(out.str() == "{\"r\":0.15,\"traj_id\":0,\"theta0\":0.5,\"phi0\":1.0,\"sample_index\":0,\"theta\":0.25,\"phi\":2.0}\n");
}

TEST_CASE("format_real") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(-2.5) == "-2.5");
}
