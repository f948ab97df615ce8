#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fourball/pattern.hpp"
#include "fourball/spherical.hpp"
#include "fourball/sweep.hpp"

namespace fourball {

enum class Format { json, csv };

// single results are one JSON object per line; tabular ones are CSV with a header
std::string to_json(const Trajectory<double>& t, double r);
std::string to_csv(const Trajectory<double>& t);
std::string to_json(const ReducedOrbit& o, const SphericalConfig& c0, double r);
std::string to_csv(const ReducedOrbit& o);
std::string to_json(const SelfSimilarReport& rep);
std::string csv_header_report();
std::string to_csv_row(const SelfSimilarReport& rep);
std::string thresholds_json();
std::string thresholds_csv();

// runs the sweep in blocks of r values and streams rows in (r, traj_id, sample_index) order
void stream_sweep(const SweepConfig& cfg, unsigned threads, Format fmt, std::ostream& records,
                  std::ostream* singularities);

}  // namespace fourball
