#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fourball/real.hpp"
#include "fourball/vec3.hpp"

namespace fourball {

// a: particles 1-2 (gap index 0), b: 2-3 (1), c: 3-4 (2)
enum class CollisionType : int { a = 0, b = 1, c = 2 };

inline int gap_index(CollisionType t) { return static_cast<int>(t); }
inline CollisionType type_from_index(int i) { return static_cast<CollisionType>(i); }
char to_char(CollisionType t);
std::optional<CollisionType> type_from_char(char ch);

class Restitution {
public:
    explicit Restitution(double r);
    double value() const { return r_; }

private:
    double r_;
};

enum class SingularityKind { TimeUnderflow, PhiAtBoundary, CornerHit };
enum class Termination { MaxCollisions, Separation, NumericalSingularity, TripleCollision };

const char* to_string(SingularityKind k);
const char* to_string(Termination t);

// Bands for simultaneity, triple contacts and time underflow.
// absolute_time: bands scale with max(1,|t|) (gaps: absolute).
// local: bands scale with the state's own time scale |p|/|q| (gaps: |p|), so a
// collapsing orbit can be followed as far as the arithmetic allows.
struct EventTolerances {
    enum class Scale { absolute_time, local };
    double simultaneity = 1e-12;
    double time_underflow = 1e-14;
    double triple = 1e-12;
    Scale scale = Scale::absolute_time;

    static EventTolerances local(double band) {
        return {band, band, band, Scale::local};
    }
};

template <class T>
struct RelativeState {
    vec3<T> p{};
    vec3<T> q{};
    T t = 0;
    std::optional<CollisionType> contact;
};

template <class T>
struct AbsoluteState {
    std::array<T, 4> x{};
    std::array<T, 4> v{};
    T t = 0;
};

template <class T>
struct CollisionEvent {
    std::size_t index = 0;
    T t = 0;
    CollisionType type = CollisionType::a;
    vec3<T> p_after{};
    vec3<T> q_after{};
};

template <class T>
struct Trajectory {
    std::vector<CollisionEvent<T>> events;
    Termination termination = Termination::MaxCollisions;
    std::optional<SingularityKind> singularity;

    std::string word() const;
};

template <class T>
struct NextCollision {
    CollisionType type;
    T dt;
    bool simultaneous_ac = false;
};

struct triple_collision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct StepResult {
    RelativeState<T> state;
    std::vector<CollisionEvent<T>> events;
    std::optional<Termination> termination;
    std::optional<SingularityKind> singularity;
};

template <class T>
mat3<T> collision_matrix(CollisionType type, const T& r);

// r is taken as a raw scalar here so r=1 (elastic) can be evaluated
template <class T>
vec3<T> apply_collision(const vec3<T>& q, CollisionType type, const T& r);

inline vec3<double> apply_collision(const vec3<double>& q, CollisionType type, Restitution r) {
    return apply_collision<double>(q, type, r.value());
}

// throws triple_collision
template <class T>
std::optional<NextCollision<T>> next_collision(const RelativeState<T>& s, const EventTolerances& tol = {});

template <class T>
StepResult<T> step(const RelativeState<T>& s, Restitution r, const EventTolerances& tol = {},
                   std::size_t first_index = 1);

template <class T>
Trajectory<T> simulate(const vec3<T>& p0, const vec3<T>& q0, Restitution r, std::size_t max_collisions,
                       const EventTolerances& tol = {});

template <class T>
Trajectory<T> simulate_absolute(const std::array<T, 4>& x0, const std::array<T, 4>& v0, Restitution r,
                                std::size_t max_collisions, const EventTolerances& tol = {},
                                std::vector<AbsoluteState<T>>* states = nullptr);

template <class T>
RelativeState<T> to_relative(const AbsoluteState<T>& s);

}  // namespace fourball
