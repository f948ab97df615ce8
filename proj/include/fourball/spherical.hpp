#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fourball/dynamics.hpp"

namespace fourball {

struct SphericalConfig {
    CollisionType contact = CollisionType::a;
    double theta = 0;
    double phi = 0;
};

struct PlaneState {
    CollisionType contact = CollisionType::a;
    vec3<double> u{};
};

struct Decomposition {
    SphericalConfig config;
    double radial = 0;  // e_r component, in units of the tangential speed
    double scale = 0;   // |p|
    double speed = 0;   // tangential |q|
};

struct ReducedStep {
    std::size_t index = 0;
    CollisionType contact = CollisionType::a;
    double theta = 0;
    double phi = 0;
};

struct BSample {
    std::size_t step = 0;
    double theta = 0;
    double phi = 0;
};

enum class OrbitTermination { Completed, NumericalSingularity };

struct ReducedOrbit {
    std::vector<ReducedStep> steps;
    std::string word;
    std::vector<BSample> b_samples;  // trailing contact-b samples, oldest first
    std::size_t b_count = 0;
    OrbitTermination termination = OrbitTermination::Completed;
    std::optional<SingularityKind> singularity;
};

enum class SequenceVerdict { ok, violates_no_repeat, violates_aca_cac, violates_b_gap };

const char* to_string(SequenceVerdict v);
const char* to_string(OrbitTermination t);

struct numerical_singularity : std::runtime_error {
    SingularityKind kind;
    explicit numerical_singularity(SingularityKind k) : std::runtime_error(to_string(k)), kind(k) {}
};

struct reduction_error : std::invalid_argument {
    enum class Kind { DegenerateTangent, WrongZeroPattern } kind;
    reduction_error(Kind k, const char* what) : std::invalid_argument(what), kind(k) {}
};

struct Frame {
    vec3<double> p, e_theta, e_axis;
};

Frame contact_frame(CollisionType contact, double theta);
double theta_from_direction(CollisionType contact, const vec3<double>& p);
int axis_index(CollisionType contact);

Decomposition from_full_state(const vec3<double>& p, const vec3<double>& q);
void to_full_state(const SphericalConfig& c, double radial, double scale, vec3<double>& p, vec3<double>& q);

vec3<double> plane_normal(const SphericalConfig& c);
PlaneState to_plane(const SphericalConfig& c);
SphericalConfig from_plane(const PlaneState& s);

// both throw numerical_singularity
SphericalConfig step_trig(const SphericalConfig& c, Restitution r);
PlaneState step_vectorial(const PlaneState& s, Restitution r);

CollisionType successor(CollisionType contact, double cos_phi);

// the trigonometric map in any arithmetic (double and extended_real are built);
// the double overloads above are this with T=double
template <class T>
struct SphericalConfigT {
    CollisionType contact = CollisionType::a;
    T theta = 0;
    T phi = 0;
};

template <class T>
SphericalConfigT<T> step_trig(const SphericalConfigT<T>& c, const T& r);
template <class T>
vec3<T> plane_normal(const SphericalConfigT<T>& c);

ReducedOrbit iterate(const SphericalConfig& c0, Restitution r, std::size_t n, std::size_t keep_last_b,
                     bool keep_steps = true);

SequenceVerdict validate_sequence(std::string_view w, bool cyclic = false);
bool decomposes_into_blocks(std::string_view w);

}  // namespace fourball
