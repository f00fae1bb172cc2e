#pragma once

#include <cstdio>
#include <optional>
#include <string>

#include "diamgraph/core.hpp"

#include "json.hpp"

namespace diamgraph {

// A finite point set in R^dim. sphere_radius marks sets living on a sphere
// centered at the origin; geometry that needs the sphere checks it.
struct PointSet {
    int dim = 0;
    std::optional<double> sphere_radius;
    std::vector<Vec> points;

    std::size_t size() const { return points.size(); }
};

inline double diameter(const PointSet& ps) {
    if (ps.points.empty()) throw DomainError("diameter: empty point set");
    double best = 0.0;
    for (std::size_t i = 0; i < ps.points.size(); ++i)
        for (std::size_t j = i + 1; j < ps.points.size(); ++j)
            best = std::max(best, dist2(ps.points[i], ps.points[j]));
    return std::sqrt(best);
}

// Points marked on-sphere must actually be there (relative r*1e-9).
inline void check_sphere(const PointSet& ps) {
    if (!ps.sphere_radius) return;
    double r = *ps.sphere_radius;
    if (!(r > 0.0)) throw DomainError("sphere_radius must be positive");
    for (const auto& p : ps.points)
        if (std::fabs(norm(p) - r) > r * tol::diameter_rel)
            throw PreconditionError("radius mismatch: point off the declared sphere");
}

namespace detail {

inline void fmt_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

inline std::string fmt_double(double v) {
    std::string out;
    fmt_double(out, v);
    return out;
}

}  // namespace detail

// Canonical form: fixed field order, 17 significant digits, one point per line.
// Identical PointSets serialize to identical bytes.
inline std::string to_json(const PointSet& ps,
                           const std::string& extra_block = std::string()) {
    std::string out = "{\"dim\":" + std::to_string(ps.dim) + ",\"sphere_radius\":";
    if (ps.sphere_radius)
        detail::fmt_double(out, *ps.sphere_radius);
    else
        out += "null";
    out += ",\"points\":[";
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        out += i == 0 ? "\n[" : ",\n[";
        for (std::size_t j = 0; j < ps.points[i].size(); ++j) {
            if (j) out += ",";
            detail::fmt_double(out, ps.points[i][j]);
        }
        out += "]";
    }
    out += "\n]";
    if (!extra_block.empty()) out += "," + extra_block;
    out += "}\n";
    return out;
}

inline PointSet pointset_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad point set JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw DomainError("bad point set JSON: need dim and points");
    PointSet ps;
    if (!j["dim"].is_number_integer())
        throw DomainError("bad point set JSON: dim must be an integer");
    ps.dim = j["dim"].get<int>();
    if (ps.dim < 2) throw DomainError("bad point set JSON: dim must be >= 2");
    if (j.contains("sphere_radius") && !j["sphere_radius"].is_null()) {
        if (!j["sphere_radius"].is_number())
            throw DomainError("bad point set JSON: sphere_radius must be a number");
        ps.sphere_radius = j["sphere_radius"].get<double>();
    }
    if (!j["points"].is_array())
        throw DomainError("bad point set JSON: points must be an array");
    for (const auto& row : j["points"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != ps.dim)
            throw DomainError("bad point set JSON: point with wrong dimension");
        Vec p;
        p.reserve(ps.dim);
        for (const auto& v : row) {
            if (!v.is_number()) throw DomainError("bad point set JSON: non-numeric coordinate");
            double x = v.get<double>();
            if (!std::isfinite(x)) throw DomainError("bad point set JSON: non-finite coordinate");
            p.push_back(x);
        }
        ps.points.push_back(std::move(p));
    }
    if (ps.points.empty()) throw DomainError("bad point set JSON: empty points");
    return ps;
}

}  // namespace diamgraph
