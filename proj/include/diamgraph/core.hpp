#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace diamgraph {

using Vec = std::vector<double>;

// Default tolerances. Distance comparisons are relative to the diameter,
// everything angular is absolute in radians.
namespace tol {
inline constexpr double diameter_rel = 1e-9;
inline constexpr double diameter_rel_max = 1e-3;
inline constexpr double containment = 1e-12;
inline constexpr double hemisphere_rel = 1e-12;
inline constexpr double cone_rel = 1e-8;
inline constexpr double angle_dedup = 1e-9;
}  // namespace tol

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeCapError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate geometry (empty hull, antipodal arc endpoints, cap spanning a
// hemisphere, ...). `payload` carries context, e.g. the enclosing-ball radius.
struct DegenerateError : std::runtime_error {
    double payload = 0.0;
    explicit DegenerateError(const std::string& msg, double p = 0.0)
        : std::runtime_error(msg), payload(p) {}
};

struct OverlapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double dist2(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist2(a, b)); }

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scaled(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline void axpy(double s, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw DegenerateError("cannot normalize zero vector");
    return scaled(a, 1.0 / n);
}

// Angle between nonzero vectors, robust near 0 and pi. The acos form loses
// eight digits at the ends; the chord form keeps full precision there.
inline double angle_between(const Vec& a, const Vec& b) {
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) throw DegenerateError("angle with zero vector");
    Vec au = scaled(a, 1.0 / na), bu = scaled(b, 1.0 / nb);
    return 2.0 * std::atan2(norm(sub(au, bu)), norm(add(au, bu)));
}

inline Vec cross3(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

}  // namespace diamgraph
