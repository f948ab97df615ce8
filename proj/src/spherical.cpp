#include "fourball/spherical.hpp"

#include <cmath>
#include <deque>
#include <numbers>

namespace fourball {

namespace {

constexpr double phi_sign_band = 1e-14;
constexpr double reduced_underflow = 1e-14;
constexpr double corner_band = 1e-12;
constexpr double tangent_floor = 1e-13;

const vec3<double> basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

template <class T>
void check_theta(const T& theta) {
    if (!is_finite(theta) || theta < -corner_band || theta > pi_v<T>() / 2 + corner_band)
        throw numerical_singularity(SingularityKind::CornerHit);
}

template <class T>
struct FrameT {
    vec3<T> p, e_theta, e_axis;
};

template <class T>
FrameT<T> frame_of(CollisionType contact, const T& theta) {
    using std::cos;
    using std::sin;
    T c = cos(theta), s = sin(theta);
    switch (contact) {
        case CollisionType::a: return {{0, c, s}, {0, -s, c}, {1, 0, 0}};
        case CollisionType::b: return {{s, 0, c}, {c, 0, -s}, {0, 1, 0}};
        case CollisionType::c: return {{c, s, 0}, {-s, c, 0}, {0, 0, 1}};
    }
    return {};
}

template <class T>
T theta_of(CollisionType contact, const vec3<T>& p) {
    using std::atan2;
    switch (contact) {
        case CollisionType::a: return atan2(p[2], p[1]);
        case CollisionType::b: return atan2(p[0], p[2]);
        case CollisionType::c: return atan2(p[1], p[0]);
    }
    return 0;
}

}  // namespace

const char* to_string(SequenceVerdict v) {
    switch (v) {
        case SequenceVerdict::ok: return "ok";
        case SequenceVerdict::violates_no_repeat: return "violates_no_repeat";
        case SequenceVerdict::violates_aca_cac: return "violates_aca_cac";
        case SequenceVerdict::violates_b_gap: return "violates_b_gap";
    }
    return "?";
}

const char* to_string(OrbitTermination t) {
    return t == OrbitTermination::Completed ? "Completed" : "NumericalSingularity";
}

int axis_index(CollisionType contact) { return gap_index(contact); }

Frame contact_frame(CollisionType contact, double theta) {
    auto f = frame_of(contact, theta);
    return {f.p, f.e_theta, f.e_axis};
}

double theta_from_direction(CollisionType contact, const vec3<double>& p) { return theta_of(contact, p); }

CollisionType successor(CollisionType contact, double cos_phi) {
    int k = gap_index(contact);
    return type_from_index(cos_phi > 0 ? (k + 1) % 3 : (k + 2) % 3);
}

Decomposition from_full_state(const vec3<double>& p, const vec3<double>& q) {
    int zero = -1, zeros = 0;
    for (int i = 0; i < 3; ++i) {
        if (p[i] == 0) {
            if (zero < 0) zero = i;
            ++zeros;
        } else if (!(p[i] > 0)) {
            throw reduction_error(reduction_error::Kind::WrongZeroPattern, "gaps must be non-negative");
        }
    }
    // a and c closed together is contact a on its theta=0 edge
    bool ac_edge = zeros == 2 && p[1] > 0;
    if (zeros != 1 && !ac_edge)
        throw reduction_error(reduction_error::Kind::WrongZeroPattern, "exactly one gap must be zero");
    CollisionType contact = type_from_index(zero);
    double scale = norm(p);
    double theta = theta_from_direction(contact, p);
    Frame f = contact_frame(contact, theta);
    double qt = dot(q, f.e_theta), qa = dot(q, f.e_axis), qr = dot(q, f.p);
    double speed = std::hypot(qt, qa);
    if (!(speed >= tangent_floor))
        throw reduction_error(reduction_error::Kind::DegenerateTangent, "tangential velocity vanishes");
    Decomposition d;
    d.config = {contact, theta, std::atan2(qa, qt)};
    d.radial = qr / speed;
    d.scale = scale;
    d.speed = speed;
    return d;
}

void to_full_state(const SphericalConfig& c, double radial, double scale, vec3<double>& p, vec3<double>& q) {
    Frame f = contact_frame(c.contact, c.theta);
    p = scale * f.p;
    q = std::cos(c.phi) * f.e_theta + std::sin(c.phi) * f.e_axis;
    q = q + radial * f.p;
    p[gap_index(c.contact)] = 0;
}

template <class T>
vec3<T> plane_normal(const SphericalConfigT<T>& c) {
    using std::cos;
    using std::sin;
    T ct = cos(c.theta), st = sin(c.theta);
    T cp = cos(c.phi), sp = sin(c.phi);
    switch (c.contact) {
        case CollisionType::a: return {cp, st * sp, -ct * sp};
        case CollisionType::b: return {-ct * sp, cp, st * sp};
        case CollisionType::c: return {st * sp, -ct * sp, cp};
    }
    return {};
}

vec3<double> plane_normal(const SphericalConfig& c) { return plane_normal(SphericalConfigT<double>{c.contact, c.theta, c.phi}); }

PlaneState to_plane(const SphericalConfig& c) { return {c.contact, plane_normal(c)}; }

SphericalConfig from_plane(const PlaneState& s) {
    // u = cos(phi) e_axis + sin(phi) (sin(theta) e_t - cos(theta) e_o), cyclic in the contact
    int k = axis_index(s.contact);
    int t = (k + 1) % 3, o = (k + 2) % 3;
    double st_sp = s.u[t], ct_sp = -s.u[o];
    double sp = std::hypot(st_sp, ct_sp);
    return {s.contact, std::atan2(st_sp, ct_sp), std::atan2(sp, s.u[k])};
}

template <class T>
SphericalConfigT<T> step_trig(const SphericalConfigT<T>& c, const T& r) {
    using std::abs;
    using std::atan2;
    using std::cos;
    using std::sin;
    T cp = cos(c.phi);
    if (abs(cp) < phi_sign_band) throw numerical_singularity(SingularityKind::PhiAtBoundary);
    CollisionType next = successor(c.contact, cp > 0 ? 1.0 : -1.0);
    int j = gap_index(next);
    auto f = frame_of(c.contact, c.theta);
    vec3<T> q = cp * f.e_theta + T(sin(c.phi)) * f.e_axis;
    if (-f.p[j] / q[j] < reduced_underflow) throw numerical_singularity(SingularityKind::TimeUnderflow);
    // p(t1) up to a positive factor; the closing gap is assigned zero
    vec3<T> p1 = f.p[j] * q - q[j] * f.p;
    p1[j] = 0;
    p1 = normalized(p1);
    T theta1 = theta_of(next, p1);
    check_theta(theta1);
    vec3<T> kq = apply_collision(q, next, r);
    vec3<T> q1 = kq - dot(kq, p1) * p1;
    auto f1 = frame_of(next, theta1);
    T phi1 = atan2(dot(q1, f1.e_axis), dot(q1, f1.e_theta));
    return {next, theta1, phi1};
}

template SphericalConfigT<double> step_trig(const SphericalConfigT<double>&, const double&);
template SphericalConfigT<extended_real> step_trig(const SphericalConfigT<extended_real>&, const extended_real&);
template vec3<double> plane_normal(const SphericalConfigT<double>&);
template vec3<extended_real> plane_normal(const SphericalConfigT<extended_real>&);

SphericalConfig step_trig(const SphericalConfig& c, Restitution r) {
    auto n = step_trig(SphericalConfigT<double>{c.contact, c.theta, c.phi}, r.value());
    return {n.contact, n.theta, n.phi};
}

PlaneState step_vectorial(const PlaneState& s, Restitution r) {
    int i = axis_index(s.contact);
    const vec3<double>& u = s.u;
    double cp = u[i];
    if (std::abs(cp) < phi_sign_band) throw numerical_singularity(SingularityKind::PhiAtBoundary);
    CollisionType next = successor(s.contact, cp);
    int j = gap_index(next);
    vec3<double> p0 = normalized(cross(basis[i], u));
    vec3<double> q0 = cross(u, p0);
    if (-p0[j] / q0[j] < reduced_underflow) throw numerical_singularity(SingularityKind::TimeUnderflow);
    vec3<double> lhs = cross(u, basis[j]);
    vec3<double> rhs = apply_collision(cross(u, cross(basis[i], u)), next, r);
    PlaneState out{next, normalized(cross(lhs, rhs))};
    check_theta(from_plane(out).theta);
    return out;
}

ReducedOrbit iterate(const SphericalConfig& c0, Restitution r, std::size_t n, std::size_t keep_last_b,
                     bool keep_steps) {
    ReducedOrbit orbit;
    if (keep_steps) orbit.steps.reserve(n);
    orbit.word.reserve(n);
    std::deque<BSample> tail;
    SphericalConfig c = c0;
    for (std::size_t k = 1; k <= n; ++k) {
        try {
            c = step_trig(c, r);
        } catch (const numerical_singularity& e) {
            orbit.termination = OrbitTermination::NumericalSingularity;
            orbit.singularity = e.kind;
            break;
        }
        if (keep_steps) orbit.steps.push_back({k, c.contact, c.theta, c.phi});
        orbit.word.push_back(to_char(c.contact));
        if (c.contact == CollisionType::b) {
            ++orbit.b_count;
            if (keep_last_b > 0) {
                tail.push_back({k, c.theta, c.phi});
                if (tail.size() > keep_last_b) tail.pop_front();
            }
        }
    }
    orbit.b_samples.assign(tail.begin(), tail.end());
    return orbit;
}

SequenceVerdict validate_sequence(std::string_view w, bool cyclic) {
    std::string s(w);
    if (cyclic && !s.empty()) s += s;
    for (std::size_t k = 0; k + 1 < s.size(); ++k)
        if (s[k] == s[k + 1]) return SequenceVerdict::violates_no_repeat;
    for (std::size_t k = 0; k + 2 < s.size(); ++k)
        if ((s[k] == 'a' && s[k + 1] == 'c' && s[k + 2] == 'a') || (s[k] == 'c' && s[k + 1] == 'a' && s[k + 2] == 'c'))
            return SequenceVerdict::violates_aca_cac;
    for (std::size_t k = 0; k + 3 < s.size(); ++k)
        if (s[k] == 'b' && s[k + 1] != 'b' && s[k + 2] != 'b' && s[k + 3] != 'b') return SequenceVerdict::violates_b_gap;
    return SequenceVerdict::ok;
}

bool decomposes_into_blocks(std::string_view w) {
    auto first = w.find('b');
    if (first == std::string_view::npos) return true;
    std::size_t start = first + 1;
    while (true) {
        auto next = w.find('b', start);
        if (next == std::string_view::npos) return true;
        std::string_view block = w.substr(start, next - start + 1);
        if (block != "ab" && block != "cb" && block != "acb" && block != "cab") return false;
        start = next + 1;
    }
}

}  // namespace fourball
