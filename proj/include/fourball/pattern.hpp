#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fourball/dynamics.hpp"

namespace fourball {

enum class Branch { upper, middle, lower };

const char* to_string(Branch b);
std::optional<Branch> branch_from_string(std::string_view s);

// letters over {a,b,c}, valid when read cyclically; throws std::invalid_argument
std::vector<CollisionType> parse_word(std::string_view w);

template <class T>
mat3<T> word_matrix(std::string_view w, const T& r);

// lambda^3 + c2 lambda^2 + c1 lambda + c0
template <class T>
struct CharPoly {
    T c2, c1, c0;
};

template <class T>
CharPoly<T> char_poly(std::string_view w, const T& r);

template <class T>
struct CubicRoots {
    std::vector<T> real;  // descending
    bool complex_pair = false;
    T complex_re = 0;
    T complex_im = 0;
    T discriminant = 0;
};

template <class T>
CubicRoots<T> solve_cubic(const T& c2, const T& c1, const T& c0);

template <class T>
struct EigenBranches {
    std::vector<T> values;  // real eigenvalues, descending
    std::vector<Branch> labels;
    bool complex_pair = false;
    T complex_re = 0;
    T complex_im = 0;
    T discriminant = 0;

    std::optional<T> value(Branch b) const;
    bool dominant(Branch b) const;
};

template <class T>
EigenBranches<T> eigen_branches(std::string_view w, const T& r);

template <class T>
struct MobiusMap {
    T a, b, c, d;
    T operator()(const T& x) const { return (a * x + b) / (c * x + d); }
    T derivative(const T& x) const { return (a * d - b * c) / ((c * x + d) * (c * x + d)); }
};

template <class T>
struct FixedPoints {
    std::optional<T> plus;
    std::optional<T> minus;
};

template <class T>
FixedPoints<T> fixed_points(const MobiusMap<T>& m);

struct no_real_branch : std::domain_error {
    using std::domain_error::domain_error;
};

struct infeasible_kinematics : std::domain_error {
    std::size_t collision;  // 1-based position in the word, 0 for the starting contact
    std::string diagnostic;
    infeasible_kinematics(std::size_t k, std::string msg)
        : std::domain_error(msg), collision(k), diagnostic(std::move(msg)) {}
};

// throws no_real_branch or infeasible_kinematics
template <class T>
MobiusMap<T> mobius_map(std::string_view w, const T& r, Branch branch);

struct FeasibilityCheck {
    std::string name;
    std::string kind;  // velocity | distance
    double value = 0;
    bool ok = false;
};

enum class Verdict { feasible_unstable, feasible_stable, infeasible };
enum class InfeasibleReason { NoRealBranch, InfeasibleKinematics, NoPositiveFixedPoint };

const char* to_string(Verdict v);
const char* to_string(InfeasibleReason r);

// Everything that determines the self-similar datum, in one arithmetic.
template <class T>
struct PatternAnalysis {
    std::string word;
    T r = 0;
    Branch branch = Branch::upper;
    std::optional<T> eigenvalue;
    bool dominant = false;
    vec3<T> p0{}, q0{};
    std::optional<MobiusMap<T>> mobius;
    std::optional<T> x_plus, x_minus, fixed_point, mu, stability_ratio;
    std::vector<FeasibilityCheck> feasibility;
    Verdict verdict = Verdict::infeasible;
    std::optional<InfeasibleReason> reason;
    std::string diagnostic;
};

template <class T>
PatternAnalysis<T> analyze_pattern(std::string_view w, double r, Branch branch);

struct Verification {
    std::string precision;
    std::size_t periods_requested = 0;
    std::size_t periods_matched = 0;
    std::string termination;
    std::vector<double> velocity_scaling_error;  // per period, relative to |lambda q|
    std::vector<double> position_scaling_error;  // per period, relative to |mu p|
};

struct SelfSimilarReport {
    PatternAnalysis<double> analysis;
    std::optional<Verification> verification;           // extended precision
    std::optional<Verification> verification_binary64;  // same check in double
};

struct DatumOptions {
    bool verify = true;
    std::size_t periods = 10;
};

SelfSimilarReport self_similar_datum(std::string_view w, double r, Branch branch, const DatumOptions& opt = {});

template <class T>
Verification verify_periods(const PatternAnalysis<T>& a, std::size_t periods, const EventTolerances& tol);

struct Threshold {
    std::string name;
    std::string expression;
    double value;
};

std::vector<Threshold> known_thresholds();
double exist_polynomial(double r);
double exist_root(double lo = 0.19, double hi = 0.192);

}  // namespace fourball
