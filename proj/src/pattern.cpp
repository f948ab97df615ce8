#include "fourball/pattern.hpp"

#include <algorithm>
#include <boost/math/special_functions/cbrt.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

#include "fourball/spherical.hpp"

namespace fourball {

const char* to_string(Branch b) {
    switch (b) {
        case Branch::upper: return "upper";
        case Branch::middle: return "middle";
        case Branch::lower: return "lower";
    }
    return "?";
}

std::optional<Branch> branch_from_string(std::string_view s) {
    if (s == "upper") return Branch::upper;
    if (s == "middle") return Branch::middle;
    if (s == "lower") return Branch::lower;
    return std::nullopt;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::feasible_unstable: return "feasible_unstable";
        case Verdict::feasible_stable: return "feasible_stable";
        case Verdict::infeasible: return "infeasible";
    }
    return "?";
}

const char* to_string(InfeasibleReason r) {
    switch (r) {
        case InfeasibleReason::NoRealBranch: return "NoRealBranch";
        case InfeasibleReason::InfeasibleKinematics: return "InfeasibleKinematics";
        case InfeasibleReason::NoPositiveFixedPoint: return "NoPositiveFixedPoint";
    }
    return "?";
}

namespace {

std::vector<CollisionType> letters_of(std::string_view w) {
    std::vector<CollisionType> out;
    for (char ch : w) {
        auto t = type_from_char(ch);
        if (!t) throw std::invalid_argument("collision words use the letters a, b, c only");
        out.push_back(*t);
    }
    return out;
}

template <class T>
T abs_of(const T& x) {
    using std::abs;
    return abs(x);
}

template <class T>
T sqrt_of(const T& x) {
    using std::sqrt;
    return sqrt(x);
}

template <class T>
T cbrt_of(const T& x) {
    if constexpr (std::is_same_v<T, double>)
        return std::cbrt(x);
    else
        return boost::math::cbrt(x);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<CollisionType> parse_word(std::string_view w) {
    if (w.empty()) throw std::invalid_argument("collision word must be nonempty");
    auto out = letters_of(w);
    auto v = validate_sequence(w, true);
    if (v != SequenceVerdict::ok)
        throw std::invalid_argument(std::string("collision word is not admissible when read cyclically: ") + to_string(v));
    return out;
}

template <class T>
mat3<T> word_matrix(std::string_view w, const T& r) {
    mat3<T> m = identity3<T>();
    for (auto t : letters_of(w)) m = mul(collision_matrix(t, r), m);
    return m;
}

template <class T>
CharPoly<T> char_poly(std::string_view w, const T& r) {
    mat3<T> m = word_matrix(w, r);
    T tr = m[0][0] + m[1][1] + m[2][2];
    T minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
               (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    // det K = -r for every letter, so the constant term is exact
    T d = 1;
    for (std::size_t k = 0; k < w.size(); ++k) d *= -r;
    return {-tr, minors, -d};
}

template <class T>
CubicRoots<T> solve_cubic(const T& c2, const T& c1, const T& c0) {
    using std::acos;
    using std::cos;
    CubicRoots<T> out;
    const T shift = c2 / 3;
    const T p = c1 - c2 * c2 / 3;
    const T q = 2 * c2 * c2 * c2 / 27 - c2 * c1 / 3 + c0;
    out.discriminant = -(4 * p * p * p + 27 * q * q);
    std::vector<T> ys;
    if (out.discriminant > 0) {
        T m = 2 * sqrt_of(T(-p / 3));
        T arg = 3 * q / (p * m);
        arg = std::clamp(arg, T(-1), T(1));
        T th = acos(arg) / 3;
        T third = 2 * pi_v<T>() / 3;
        for (int k = 0; k < 3; ++k) ys.push_back(m * cos(th - third * k));
    } else if (out.discriminant < 0) {
        T y;
        if (p == 0) {
            y = cbrt_of(T(-q));
        } else {
            T d = q * q / 4 + p * p * p / 27;
            T u = cbrt_of(T(-q / 2 - (q < 0 ? -1 : 1) * sqrt_of(d)));
            y = u - p / (3 * u);
        }
        ys.push_back(y);
        out.complex_pair = true;
        out.complex_re = -y / 2 - shift;
        out.complex_im = sqrt_of(T(abs_of(T(3 * y * y + 4 * p)))) / 2;
    } else if (p == 0) {
        ys = {T(0), T(0), T(0)};
    } else {
        T simple = 3 * q / p, dbl = -3 * q / (2 * p);
        ys = {simple, dbl, dbl};
    }
    for (auto& y : ys) {
        T x = y - shift;
        T f = ((x + c2) * x + c1) * x + c0;
        T df = (3 * x + 2 * c2) * x + c1;
        if (df != 0) x -= f / df;
        out.real.push_back(x);
    }
    std::sort(out.real.begin(), out.real.end(), [](const T& a, const T& b) { return a > b; });
    return out;
}

template <class T>
std::optional<T> EigenBranches<T>::value(Branch b) const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (labels[i] == b) return values[i];
    return std::nullopt;
}

template <class T>
bool EigenBranches<T>::dominant(Branch b) const {
    auto v = value(b);
    if (!v) return false;
    T mag = abs_of(*v);
    bool skipped = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!skipped && labels[i] == b) {
            skipped = true;
            continue;
        }
        if (!(mag > abs_of(values[i]))) return false;
    }
    if (complex_pair && !(mag > sqrt_of(T(complex_re * complex_re + complex_im * complex_im)))) return false;
    return true;
}

template <class T>
EigenBranches<T> eigen_branches(std::string_view w, const T& r) {
    auto cp = char_poly(w, r);
    auto roots = solve_cubic(cp.c2, cp.c1, cp.c0);
    EigenBranches<T> eb;
    eb.values = roots.real;
    eb.complex_pair = roots.complex_pair;
    eb.complex_re = roots.complex_re;
    eb.complex_im = roots.complex_im;
    eb.discriminant = roots.discriminant;
    if (eb.values.size() == 1) {
        eb.labels = {Branch::upper};
    } else {
        eb.labels = {Branch::upper, Branch::middle, Branch::lower};
        auto close = [](const T& a, const T& b) { return abs_of(T(a - b)) <= T(1e-12) * std::max(T(1), abs_of(a)); };
        if (close(eb.values[0], eb.values[1])) eb.labels[0] = eb.labels[1] = Branch::middle;
        if (close(eb.values[1], eb.values[2])) eb.labels[1] = eb.labels[2] = Branch::middle;
    }
    return eb;
}

template <class T>
FixedPoints<T> fixed_points(const MobiusMap<T>& m) {
    FixedPoints<T> fp;
    if (m.c == 0) {
        if (m.d != m.a) fp.plus = m.b / (m.d - m.a);
        return fp;
    }
    T disc = (m.a - m.d) * (m.a - m.d) + 4 * m.b * m.c;
    if (disc < 0) return fp;
    T s = sqrt_of(disc);
    fp.plus = (m.a - m.d + s) / (2 * m.c);
    fp.minus = (m.a - m.d - s) / (2 * m.c);
    return fp;
}

namespace {

const std::string self_similar_word = "ababcb";

std::string describe_position(const std::vector<CollisionType>& word, std::size_t k) {
    if (k == 1) return "the first collision";
    auto first_b = static_cast<std::size_t>(std::find(word.begin(), word.end(), CollisionType::b) - word.begin());
    std::ostringstream os;
    if (first_b < word.size() && k > first_b + 1) {
        std::size_t n = k - first_b - 1;
        if (n == 1) return "the collision after the first b";
        os << "collision " << n << " after the first b, following " << to_char(word[k - 2]);
        return os.str();
    }
    os << "the collision after collision " << (k - 1) << " (" << to_char(word[k - 2]) << ")";
    return os.str();
}

// One word period started from contact = last letter, with p = alpha + beta*x.
template <class T>
struct Period {
    std::vector<CollisionType> word;
    T r;
    T lambda;
    int start, free0, free1;
    vec3<T> q0;
    vec3<T> alpha_end, beta_end;
    std::optional<infeasible_kinematics> failure;  // first pair that is not approaching
};

template <class T>
vec3<T> initial_gaps(const Period<T>& P, const T& x) {
    vec3<T> p{};
    p[P.start] = 0;
    p[P.free0] = 1;
    p[P.free1] = x;
    return p;
}

// composed algebraically to the end; the first pair that is not approaching is recorded
template <class T>
Period<T> compose(const std::vector<CollisionType>& word, const T& r, const T& lambda, const vec3<T>& q0) {
    Period<T> P{word, r, lambda, gap_index(word.back()), 0, 0, q0, {}, {}, std::nullopt};
    std::vector<int> free;
    for (int i = 0; i < 3; ++i)
        if (i != P.start) free.push_back(i);
    P.free0 = free[0];
    P.free1 = free[1];
    if (!(q0[P.start] > 0)) {
        std::ostringstream os;
        os << "collision 0: the starting contact " << to_char(word.back()) << " is not separating (q" << P.start + 1
           << " = " << fmt(to_double(q0[P.start])) << ")";
        P.failure.emplace(0, os.str());
    }
    vec3<T> alpha{}, beta{};
    alpha[P.free0] = 1;
    beta[P.free1] = 1;
    vec3<T> q = q0;
    for (std::size_t k = 1; k <= word.size(); ++k) {
        int j = gap_index(word[k - 1]);
        if (!(q[j] < 0) && !P.failure) {
            std::ostringstream os;
            os << "collision " << k << " (" << describe_position(word, k) << "): scheduled " << to_char(word[k - 1])
               << " but that pair is not approaching (q" << j + 1 << " = " << fmt(to_double(q[j])) << ")";
            P.failure.emplace(k, os.str());
        }
        if (q[j] == 0) throw *P.failure;
        T ta = -alpha[j] / q[j], tb = -beta[j] / q[j];
        for (int i = 0; i < 3; ++i) {
            alpha[i] += ta * q[i];
            beta[i] += tb * q[i];
        }
        alpha[j] = 0;
        beta[j] = 0;
        q = apply_collision(q, word[k - 1], r);
    }
    P.alpha_end = alpha;
    P.beta_end = beta;
    return P;
}

template <class T>
struct Walk {
    std::vector<FeasibilityCheck> checks;
    std::optional<infeasible_kinematics> failure;
    vec3<T> p_end{}, q_end{};
};

// transport-and-collide along the schedule, recording every inequality
template <class T>
Walk<T> walk(const Period<T>& P, const T& x) {
    Walk<T> out;
    auto add = [&](std::string name, const char* kind, const T& v, bool ok) {
        out.checks.push_back({std::move(name), kind, to_double(v), ok});
    };
    const auto& word = P.word;
    vec3<T> p = initial_gaps(P, x), q = P.q0;
    add("q" + std::to_string(P.start + 1) + "(t0)", "velocity", q[P.start], q[P.start] > 0);
    add("p" + std::to_string(P.free1 + 1) + "(t0)", "distance", x, x > 0);
    for (std::size_t k = 1; k <= word.size(); ++k) {
        int j = gap_index(word[k - 1]);
        std::string prev = "(t" + std::to_string(k - 1) + ")";
        add("q" + std::to_string(j + 1) + prev, "velocity", q[j], q[j] < 0);
        T dt = -p[j] / q[j];
        int first_other = -1;
        T first_time = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == j) continue;
            T gap = p[i] + dt * q[i];
            bool ok = gap > 0;
            add("p" + std::to_string(i + 1) + "(t" + std::to_string(k) + ")", "distance", gap, ok);
            if (!ok) {
                T when = q[i] < 0 ? T(-p[i] / q[i]) : T(0);
                if (first_other < 0 || when < first_time) {
                    first_other = i;
                    first_time = when;
                }
            }
        }
        if (!out.failure) {
            if (!(q[j] < 0) || !(dt > 0)) {
                std::ostringstream os;
                os << "collision " << k << " (" << describe_position(word, k) << "): scheduled " << to_char(word[k - 1])
                   << " cannot happen (time to contact " << fmt(to_double(dt)) << ")";
                out.failure.emplace(k, os.str());
            } else if (first_other >= 0) {
                std::ostringstream os;
                os << "collision " << k << " (" << describe_position(word, k) << "): scheduled " << to_char(word[k - 1])
                   << " but " << "abc"[first_other] << " occurs first (gap " << "abc"[first_other] << " = "
                   << fmt(to_double(T(p[first_other] + dt * q[first_other]))) << " at the scheduled time)";
                out.failure.emplace(k, os.str());
            }
        }
        for (int i = 0; i < 3; ++i) p[i] += dt * q[i];
        p[j] = 0;
        q = apply_collision(q, word[k - 1], P.r);
    }
    out.p_end = p;
    out.q_end = q;
    return out;
}

template <class T>
T rel_diff(const T& a, const T& b) {
    return abs_of(T(a - b)) / std::max(T(1), abs_of(b));
}

template <class T>
vec3<T> eq4_velocity(const T& r, const T& l) {
    T r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r;
    T den = -r3 + 6 * r2 - r + 4 * l;
    T u = r * (16 * l - r4 + 8 * r3 + 2 * r2 + 8 * r - 1) / (2 * (r + 1) * den);
    T v = -(l * (64 * l - r6 + 10 * r5 - 23 * r4 + 44 * r3 + r2 + 42 * r - 9) + r2 * (20 * r4 - 32 * r3 + 8 * r2 + 4)) /
          (4 * (r + 1) * (r + 1) * den);
    return {T(-1), u, v};
}

template <class T>
MobiusMap<T> eq5_map(const T& r, const T& l) {
    T r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r;
    T r7 = r6 * r, r8 = r7 * r, r9 = r8 * r, r10 = r9 * r;
    T s = r4 - 8 * r3 - 2 * r2 - 8 * r + 1;
    T a = -64 * r2 * s * l + 1024 * r6;
    T b = 256 * r2 * (r2 - 6 * r + 1) * l * l - 4 * r2 * (r - 1) * (r - 1) * (r - 3) * (r - 3) * s * l +
          64 * r6 * (r4 - 8 * r3 + 18 * r2 + 5);
    T c = 16 * (r - 1) * (r - 1) * (r + 1) * (r + 1) * (r2 - 10 * r + 1) * l;
    T d = -64 * s * l * l + (r10 - 18 * r9 + 101 * r8 - 216 * r7 + 66 * r6 + 372 * r5 + 594 * r4 - 24 * r3 +
                             253 * r2 - 114 * r + 9) *
                                l;
    return {a, b, c, d};
}

template <class T>
vec3<T> null_vector(const mat3<T>& m, const T& l) {
    mat3<T> n = m;
    for (int i = 0; i < 3; ++i) n[i][i] -= l;
    vec3<T> best{};
    T best_norm = -1;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        vec3<T> c = cross(vec3<T>(n[i]), vec3<T>(n[j]));
        T nc = norm(c);
        if (nc > best_norm) {
            best_norm = nc;
            best = c;
        }
    }
    return best;
}

template <class T>
struct Model {
    T lambda;
    bool dominant;
    Period<T> period;
    MobiusMap<T> map;
    FixedPoints<T> fp;
};

// shared by mobius_map and analyze_pattern; throws no_real_branch, or infeasible_kinematics on a zero closing speed
template <class T>
Model<T> build_model(std::string_view w, const T& r, Branch branch) {
    auto word = letters_of(w);
    if (word.empty()) throw std::invalid_argument("collision word must be nonempty");
    auto eb = eigen_branches(w, r);
    auto l = eb.value(branch);
    if (!l) throw no_real_branch(std::string("no real eigenvalue on the ") + to_string(branch) + " branch");
    int first = gap_index(word.front());
    if (first == gap_index(word.back())) throw std::invalid_argument("first and last letters must differ");
    const bool closed_form = w == self_similar_word;
    vec3<T> q0;
    if (closed_form) {
        q0 = eq4_velocity(r, *l);
    } else {
        vec3<T> v = null_vector(word_matrix(w, r), *l);
        if (!(abs_of(v[first]) > T(1e-14) * norm(v)))
            throw infeasible_kinematics(1, "collision 1: the eigenvector does not drive the first pair together");
        T s = T(-1) / v[first];
        q0 = s * v;
    }
    Model<T> m{*l, eb.dominant(branch), compose(word, r, *l, q0), {}, {}};
    const auto& P = m.period;
    if (closed_form) {
        m.map = eq5_map(r, *l);
    } else {
        m.map = {P.beta_end[P.free1], P.alpha_end[P.free1], P.beta_end[P.free0], P.alpha_end[P.free0]};
        if (m.map.c < 0) m.map = {-m.map.a, -m.map.b, -m.map.c, -m.map.d};
    }
    // the composed period map must be a homography in x
    for (double xs : {0.5, 1.0, 2.0}) {
        if (closed_form) break;
        T x(xs);
        vec3<T> pe = initial_gaps(P, x);
        vec3<T> q = P.q0;
        for (auto t : word) {
            int j = gap_index(t);
            T dt = -pe[j] / q[j];
            for (int i = 0; i < 3; ++i) pe[i] += dt * q[i];
            pe[j] = 0;
            q = apply_collision(q, t, r);
        }
        T direct = pe[P.free1] / pe[P.free0];
        T den = m.map.c * x + m.map.d;
        if (abs_of(den) > T(1e-12) * (abs_of(m.map.c) + abs_of(m.map.d)) && rel_diff(m.map(x), direct) > T(1e-6))
            throw std::logic_error("period map is not a homography in the free coordinate");
    }
    m.fp = fixed_points(m.map);
    return m;
}

template <class T>
std::vector<T> positive_candidates(const FixedPoints<T>& fp) {
    std::vector<T> out;
    if (fp.plus && *fp.plus > 0) out.push_back(*fp.plus);
    if (fp.minus && *fp.minus > 0) out.push_back(*fp.minus);
    return out;
}

}  // namespace

template <class T>
MobiusMap<T> mobius_map(std::string_view w, const T& r, Branch branch) {
    auto m = build_model(w, r, branch);
    if (w == self_similar_word) return m.map;
    if (m.period.failure) throw *m.period.failure;
    auto cands = positive_candidates(m.fp);
    if (!cands.empty()) {
        std::optional<infeasible_kinematics> first_failure;
        for (const auto& x : cands) {
            auto wk = walk(m.period, x);
            if (!wk.failure) return m.map;
            if (!first_failure) first_failure = wk.failure;
        }
        throw *first_failure;
    }
    return m.map;
}

template <class T>
PatternAnalysis<T> analyze_pattern(std::string_view w, double r, Branch branch) {
    PatternAnalysis<T> a;
    a.word = std::string(w);
    a.r = T(r);
    a.branch = branch;
    parse_word(w);
    (void)Restitution{r};
    auto infeasible = [&](InfeasibleReason why, std::string msg) {
        a.verdict = Verdict::infeasible;
        a.reason = why;
        a.diagnostic = std::move(msg);
        return a;
    };
    {
        auto eb = eigen_branches(w, a.r);
        if (auto l = eb.value(branch)) {
            a.eigenvalue = *l;
            a.dominant = eb.dominant(branch);
        }
    }
    Model<T> m;
    try {
        m = build_model(w, a.r, branch);
    } catch (const no_real_branch& e) {
        return infeasible(InfeasibleReason::NoRealBranch, e.what());
    } catch (const infeasible_kinematics& e) {
        return infeasible(InfeasibleReason::InfeasibleKinematics, e.diagnostic);
    }
    a.q0 = m.period.q0;
    a.mobius = m.map;
    a.x_plus = m.fp.plus;
    a.x_minus = m.fp.minus;
    if (m.period.failure) return infeasible(InfeasibleReason::InfeasibleKinematics, m.period.failure->diagnostic);
    auto cands = positive_candidates(m.fp);
    if (cands.empty()) {
        if (!m.fp.plus && !m.fp.minus) return infeasible(InfeasibleReason::NoPositiveFixedPoint, "the period map has no real fixed point");
        return infeasible(InfeasibleReason::NoPositiveFixedPoint, "no fixed point of the period map is positive");
    }
    std::optional<Walk<T>> first_walk;
    for (const auto& x : cands) {
        auto wk = walk(m.period, x);
        if (!wk.failure) {
            const auto& P = m.period;
            a.fixed_point = x;
            a.p0 = initial_gaps(P, x);
            a.feasibility = wk.checks;
            a.mu = P.alpha_end[P.free0] + P.beta_end[P.free0] * x;
            a.stability_ratio = abs_of(m.map.derivative(x));
            a.verdict = (a.dominant && *a.stability_ratio < 1) ? Verdict::feasible_stable : Verdict::feasible_unstable;
            return a;
        }
        if (!first_walk) first_walk = wk;
    }
    a.feasibility = first_walk->checks;
    return infeasible(InfeasibleReason::InfeasibleKinematics, first_walk->failure->diagnostic);
}

template <class T>
Verification verify_periods(const PatternAnalysis<T>& a, std::size_t periods, const EventTolerances& tol) {
    Verification v;
    v.precision = std::is_same_v<T, double> ? "binary64" : "binary128";
    v.periods_requested = periods;
    if (a.verdict == Verdict::infeasible) return v;
    const std::size_t L = a.word.size();
    auto traj = simulate<T>(a.p0, a.q0, Restitution(to_double(a.r)), L * periods, tol);
    v.termination = to_string(traj.termination);
    std::string seen = traj.word();
    const T lambda = *a.eigenvalue, mu = *a.mu;
    vec3<T> p_prev = a.p0, q_prev = a.q0;
    for (std::size_t k = 1; k <= periods; ++k) {
        if (seen.size() < k * L || seen.compare((k - 1) * L, L, a.word) != 0) break;
        const auto& e = traj.events[k * L - 1];
        vec3<T> qs = lambda * q_prev, ps = mu * p_prev;
        v.velocity_scaling_error.push_back(to_double(T(norm(vec3<T>(e.q_after - qs)) / norm(qs))));
        v.position_scaling_error.push_back(to_double(T(norm(vec3<T>(e.p_after - ps)) / norm(ps))));
        p_prev = e.p_after;
        q_prev = e.q_after;
        v.periods_matched = k;
    }
    return v;
}

SelfSimilarReport self_similar_datum(std::string_view w, double r, Branch branch, const DatumOptions& opt) {
    SelfSimilarReport rep;
    rep.analysis = analyze_pattern<double>(w, r, branch);
    if (opt.verify && rep.analysis.verdict != Verdict::infeasible) {
        auto ext = analyze_pattern<extended_real>(w, r, branch);
        rep.verification = verify_periods(ext, opt.periods, EventTolerances::local(1e-28));
        rep.verification_binary64 = verify_periods(rep.analysis, opt.periods, EventTolerances::local(1e-12));
    }
    return rep;
}

std::vector<Threshold> known_thresholds() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s6 = std::sqrt(6.0);
    return {
        {"r_max_ab2cb2", "3-2*sqrt(2)", 3 - 2 * s2},
        {"r_max_ab3cb3", "5-2*sqrt(6)", 5 - 2 * s6},
        {"r_max_ab4cb4", "3+2*sqrt(2)-2*sqrt(4+3*sqrt(2))", 3 + 2 * s2 - 2 * std::sqrt(4 + 3 * s2)},
        {"r_max_ab5cb5", "4+sqrt(5)-2*sqrt(5+2*sqrt(5))", 4 + s5 - 2 * std::sqrt(5 + 2 * s5)},
        {"r_max_ab6cb6", "3+2*sqrt(3)-2*sqrt(5+3*sqrt(3))", 3 + 2 * s3 - 2 * std::sqrt(5 + 3 * s3)},
        {"r_crit_three_ball", "7-4*sqrt(3)", 7 - 4 * s3},
        {"r_exist", "root of 17r^6-138r^5+831r^4-3148r^3+831r^2-138r+17 in [0.19,0.192]", exist_root()},
    };
}

double exist_polynomial(double r) {
    return ((((((17 * r - 138) * r + 831) * r - 3148) * r + 831) * r - 138) * r) + 17;
}

double exist_root(double lo, double hi) {
    auto [a, b] = boost::math::tools::bisect(exist_polynomial, lo, hi, boost::math::tools::eps_tolerance<double>(52));
    return (a + b) / 2;
}

#define FOURBALL_PATTERN_INSTANTIATE(T)                                                          \
    template mat3<T> word_matrix<T>(std::string_view, const T&);                                 \
    template CharPoly<T> char_poly<T>(std::string_view, const T&);                               \
    template CubicRoots<T> solve_cubic<T>(const T&, const T&, const T&);                         \
    template struct EigenBranches<T>;                                                            \
    template EigenBranches<T> eigen_branches<T>(std::string_view, const T&);                     \
    template FixedPoints<T> fixed_points<T>(const MobiusMap<T>&);                                \
    template MobiusMap<T> mobius_map<T>(std::string_view, const T&, Branch);                     \
    template PatternAnalysis<T> analyze_pattern<T>(std::string_view, double, Branch);            \
    template Verification verify_periods<T>(const PatternAnalysis<T>&, std::size_t, const EventTolerances&);

FOURBALL_PATTERN_INSTANTIATE(double)
FOURBALL_PATTERN_INSTANTIATE(extended_real)

}  // namespace fourball
