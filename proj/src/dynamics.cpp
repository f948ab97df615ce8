#include "fourball/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace fourball {

char to_char(CollisionType t) { return "abc"[gap_index(t)]; }

std::optional<CollisionType> type_from_char(char ch) {
    switch (ch) {
        case 'a': return CollisionType::a;
        case 'b': return CollisionType::b;
        case 'c': return CollisionType::c;
        default: return std::nullopt;
    }
}

Restitution::Restitution(double r) : r_(r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r: restitution must lie in the open interval (0,1)");
}

const char* to_string(SingularityKind k) {
    switch (k) {
        case SingularityKind::TimeUnderflow: return "TimeUnderflow";
        case SingularityKind::PhiAtBoundary: return "PhiAtBoundary";
        case SingularityKind::CornerHit: return "CornerHit";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::MaxCollisions: return "MaxCollisions";
        case Termination::Separation: return "Separation";
        case Termination::NumericalSingularity: return "NumericalSingularity";
        case Termination::TripleCollision: return "TripleCollision";
    }
    return "?";
}

template <class T>
std::string Trajectory<T>::word() const {
    std::string w;
    w.reserve(events.size());
    for (const auto& e : events) w.push_back(to_char(e.type));
    return w;
}

template <class T>
mat3<T> collision_matrix(CollisionType type, const T& r) {
    T h = (T(1) + r) / 2;
    switch (type) {
        case CollisionType::a: return {{{-r, 0, 0}, {h, 1, 0}, {0, 0, 1}}};
        case CollisionType::b: return {{{1, h, 0}, {0, -r, 0}, {0, h, 1}}};
        case CollisionType::c: return {{{1, 0, 0}, {0, 1, h}, {0, 0, -r}}};
    }
    return identity3<T>();
}

// written out by rows so the colliding component is exactly -r*q_i
template <class T>
vec3<T> apply_collision(const vec3<T>& q, CollisionType type, const T& r) {
    T h = (T(1) + r) / 2;
    switch (type) {
        case CollisionType::a: return {-r * q[0], h * q[0] + q[1], q[2]};
        case CollisionType::b: return {q[0] + h * q[1], -r * q[1], h * q[1] + q[2]};
        case CollisionType::c: return {q[0], q[1] + h * q[2], -r * q[2]};
    }
    return q;
}

namespace {

template <class T>
T abs_of(const T& x) {
    using std::abs;
    return abs(x);
}

// time scale the bands are measured against
template <class T>
T time_scale(const vec3<T>& p, const vec3<T>& q, const T& t, const EventTolerances& tol) {
    if (tol.scale == EventTolerances::Scale::absolute_time) return std::max(T(1), abs_of(t));
    T nq = norm(q);
    return nq > 0 ? norm(p) / nq : T(1);
}

template <class T>
T gap_scale(const vec3<T>& p, const EventTolerances& tol) {
    if (tol.scale == EventTolerances::Scale::absolute_time) return T(1);
    return norm(p);
}

// shared by both representations: candidate closing times per gap
template <class T>
std::optional<NextCollision<T>> pick_collision(const vec3<T>& p, const vec3<T>& q, const T& t,
                                               const EventTolerances& tol) {
    std::array<std::optional<T>, 3> cand;
    int best = -1;
    for (int j = 0; j < 3; ++j) {
        if (q[j] < 0) {
            cand[j] = -p[j] / q[j];
            if (best < 0 || *cand[j] < *cand[best]) best = j;
        }
    }
    if (best < 0) return std::nullopt;
    T dt = *cand[best];
    T band = T(tol.simultaneity) * (tol.scale == EventTolerances::Scale::absolute_time
                                        ? std::max(T(1), abs_of(T(t + dt)))
                                        : time_scale(p, q, t, tol));
    bool ac = false;
    for (int k = 0; k < 3; ++k) {
        if (k == best || !cand[k]) continue;
        if (*cand[k] - dt <= band) {
            if (std::abs(k - best) == 2)
                ac = true;
            else
                throw triple_collision("adjacent gaps close simultaneously");
        }
    }
    T gap_band = T(tol.triple) * gap_scale(p, tol);
    for (int k = 0; k < 3; ++k) {
        bool colliding = k == best || (ac && k != 1);
        if (colliding) continue;
        bool adjacent = std::abs(k - best) == 1 || (ac && k == 1);
        if (adjacent && q[k] < 0 && p[k] + dt * q[k] <= gap_band) throw triple_collision("adjacent gap vanishes at the collision time");
    }
    return NextCollision<T>{type_from_index(best), dt, ac};
}

template <class T>
bool underflows(const T& dt, const vec3<T>& p, const vec3<T>& q, const T& t, const EventTolerances& tol) {
    return dt < T(tol.time_underflow) * time_scale(p, q, t, tol);
}

template <class T>
void check_initial_gaps(const vec3<T>& p0, const vec3<T>& q0) {
    int zeros = 0;
    for (int i = 0; i < 3; ++i) {
        if (!is_finite(p0[i]) || !is_finite(q0[i])) throw std::invalid_argument("non-finite initial state");
        if (p0[i] < 0) throw std::invalid_argument("gaps must be non-negative");
        if (p0[i] == 0) ++zeros;
    }
    if (zeros > 1) throw std::invalid_argument("at most one gap may be zero initially");
}

}  // namespace

template <class T>
std::optional<NextCollision<T>> next_collision(const RelativeState<T>& s, const EventTolerances& tol) {
    return pick_collision(s.p, s.q, s.t, tol);
}

template <class T>
StepResult<T> step(const RelativeState<T>& s, Restitution r, const EventTolerances& tol, std::size_t first_index) {
    StepResult<T> out;
    out.state = s;
    std::optional<NextCollision<T>> nc;
    try {
        nc = next_collision(s, tol);
    } catch (const triple_collision&) {
        out.termination = Termination::TripleCollision;
        return out;
    }
    if (!nc) {
        out.termination = Termination::Separation;
        return out;
    }
    if (underflows(nc->dt, s.p, s.q, s.t, tol)) {
        out.termination = Termination::NumericalSingularity;
        out.singularity = SingularityKind::TimeUnderflow;
        return out;
    }
    const T rr = T(r.value());
    RelativeState<T> n;
    n.t = s.t + nc->dt;
    for (int i = 0; i < 3; ++i) n.p[i] = s.p[i] + nc->dt * s.q[i];
    std::vector<CollisionType> hits{nc->type};
    if (nc->simultaneous_ac) hits = {CollisionType::a, CollisionType::c};
    for (auto h : hits) n.p[gap_index(h)] = 0;
    for (int i = 0; i < 3; ++i)
        if (n.p[i] < 0) n.p[i] = 0;
    n.q = s.q;
    std::size_t idx = first_index;
    for (auto h : hits) {
        n.q = apply_collision(n.q, h, rr);
        n.contact = h;
        out.events.push_back({idx++, n.t, h, n.p, n.q});
    }
    // both events of a simultaneous pair carry the combined post-collision state
    if (hits.size() == 2) out.events.front().q_after = n.q;
    out.state = n;
    return out;
}

template <class T>
Trajectory<T> simulate(const vec3<T>& p0, const vec3<T>& q0, Restitution r, std::size_t max_collisions,
                       const EventTolerances& tol) {
    check_initial_gaps(p0, q0);
    RelativeState<T> s;
    s.p = p0;
    s.q = q0;
    for (int i = 0; i < 3; ++i)
        if (p0[i] == 0) s.contact = type_from_index(i);
    Trajectory<T> traj;
    while (traj.events.size() < max_collisions) {
        auto res = step(s, r, tol, traj.events.size() + 1);
        if (res.termination) {
            traj.termination = *res.termination;
            traj.singularity = res.singularity;
            return traj;
        }
        for (auto& e : res.events) traj.events.push_back(std::move(e));
        s = res.state;
    }
    traj.termination = Termination::MaxCollisions;
    return traj;
}

template <class T>
RelativeState<T> to_relative(const AbsoluteState<T>& s) {
    RelativeState<T> out;
    out.t = s.t;
    for (int i = 0; i < 3; ++i) {
        out.p[i] = s.x[i + 1] - s.x[i];
        out.q[i] = s.v[i + 1] - s.v[i];
        if (out.p[i] == 0) out.contact = type_from_index(i);
    }
    return out;
}

template <class T>
Trajectory<T> simulate_absolute(const std::array<T, 4>& x0, const std::array<T, 4>& v0, Restitution r,
                                std::size_t max_collisions, const EventTolerances& tol,
                                std::vector<AbsoluteState<T>>* states) {
    for (int i = 0; i < 4; ++i)
        if (!is_finite(x0[i]) || !is_finite(v0[i])) throw std::invalid_argument("non-finite initial state");
    for (int i = 0; i < 3; ++i)
        if (x0[i + 1] < x0[i]) throw std::invalid_argument("positions must be sorted");
    AbsoluteState<T> s{x0, v0, T(0)};
    {
        auto rel = to_relative(s);
        check_initial_gaps(rel.p, rel.q);
    }
    const T rr = T(r.value());
    Trajectory<T> traj;
    if (states) states->push_back(s);
    while (traj.events.size() < max_collisions) {
        // gaps and closing rates straight from the particle coordinates
        vec3<T> g, w;
        for (int i = 0; i < 3; ++i) {
            g[i] = s.x[i + 1] - s.x[i];
            w[i] = s.v[i + 1] - s.v[i];
        }
        std::optional<NextCollision<T>> nc;
        try {
            nc = pick_collision(g, w, s.t, tol);
        } catch (const triple_collision&) {
            traj.termination = Termination::TripleCollision;
            return traj;
        }
        if (!nc) {
            traj.termination = Termination::Separation;
            return traj;
        }
        if (underflows(nc->dt, g, w, s.t, tol)) {
            traj.termination = Termination::NumericalSingularity;
            traj.singularity = SingularityKind::TimeUnderflow;
            return traj;
        }
        s.t += nc->dt;
        for (int i = 0; i < 4; ++i) s.x[i] += nc->dt * s.v[i];
        std::vector<int> pairs{gap_index(nc->type)};
        if (nc->simultaneous_ac) pairs = {0, 2};
        for (int i : pairs) s.x[i + 1] = s.x[i];
        for (int i = 0; i < 3; ++i)
            if (s.x[i + 1] < s.x[i]) s.x[i + 1] = s.x[i];
        std::vector<CollisionEvent<T>> evs;
        for (int i : pairs) {
            T centre = (s.v[i] + s.v[i + 1]) / 2;
            T rel = s.v[i + 1] - s.v[i];
            s.v[i] = centre + rr * rel / 2;
            s.v[i + 1] = centre - rr * rel / 2;
            CollisionEvent<T> e;
            e.index = traj.events.size() + evs.size() + 1;
            e.t = s.t;
            e.type = type_from_index(i);
            evs.push_back(e);
        }
        auto rel = to_relative(s);
        for (auto& e : evs) {
            e.p_after = rel.p;
            e.q_after = rel.q;
            traj.events.push_back(e);
        }
        if (states) states->push_back(s);
    }
    traj.termination = Termination::MaxCollisions;
    return traj;
}

#define FOURBALL_INSTANTIATE(T)                                                                              \
    template struct Trajectory<T>;                                                                           \
    template mat3<T> collision_matrix<T>(CollisionType, const T&);                                           \
    template vec3<T> apply_collision<T>(const vec3<T>&, CollisionType, const T&);                            \
    template std::optional<NextCollision<T>> next_collision<T>(const RelativeState<T>&, const EventTolerances&); \
    template StepResult<T> step<T>(const RelativeState<T>&, Restitution, const EventTolerances&, std::size_t); \
    template Trajectory<T> simulate<T>(const vec3<T>&, const vec3<T>&, Restitution, std::size_t,             \
                                       const EventTolerances&);                                              \
    template Trajectory<T> simulate_absolute<T>(const std::array<T, 4>&, const std::array<T, 4>&, Restitution, \
                                                std::size_t, const EventTolerances&,                         \
                                                std::vector<AbsoluteState<T>>*);                             \
    template RelativeState<T> to_relative<T>(const AbsoluteState<T>&);

FOURBALL_INSTANTIATE(double)
FOURBALL_INSTANTIATE(extended_real)

}  // namespace fourball
