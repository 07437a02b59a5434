#pragma once

#include <Eigen/Dense>

#include "inellipse/errors.hpp"
#include "inellipse/tolerances.hpp"

namespace inellipse {

using Point = Eigen::Vector2d;

inline double cross2(const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
    return p.x() * q.y() - p.y() * q.x();
}

// Projective direction in canonical form: unit length with dy > 0,
// or dy == 0 and dx > 0.
struct Direction {
    double dx = 1.0, dy = 0.0;

    Direction() = default;
    Direction(double x, double y);
    explicit Direction(const Eigen::Vector2d& v) : Direction(v.x(), v.y()) {}

    Eigen::Vector2d vec() const { return {dx, dy}; }
    Eigen::Vector2d perp() const { return {-dy, dx}; }

    // |sin| of the angle to another direction; 0 iff parallel
    double sin_gap(const Direction& o) const { return std::abs(cross2(vec(), o.vec())); }
    bool parallel_to(const Direction& o, double tol) const { return sin_gap(o) <= tol; }
    bool vertical(double tol = 0.0) const { return std::abs(dx) <= tol; }
    // slope dy/dx; caller must handle vertical directions
    double slope() const { return dy / dx; }
};

// Line a*x + b*y + c = 0, normalized so a^2 + b^2 = 1 and the first
// nonzero of (a, b) is positive.
struct Line {
    double a = 1.0, b = 0.0, c = 0.0;

    Line() = default;
    Line(double a_, double b_, double c_);
    static Line through(const Point& p, const Point& q);

    double eval(const Point& p) const { return a * p.x() + b * p.y() + c; }
    Eigen::Vector2d normal() const { return {a, b}; }
    Direction direction() const { return Direction(-b, a); }
};

// Invertible affine map x -> M x + t.
struct AffineMap {
    Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
    Eigen::Vector2d translation = Eigen::Vector2d::Zero();

    static AffineMap identity() { return {}; }
    static AffineMap make(const Eigen::Matrix2d& m, const Eigen::Vector2d& t);
    static AffineMap rotation(double angle, const Eigen::Vector2d& about = Eigen::Vector2d::Zero());
    static AffineMap scaling(double k);
    static AffineMap translation_by(const Eigen::Vector2d& t);

    double det() const { return linear.determinant(); }
    AffineMap inverse() const;
    // this after other: (this*other)(x) = this(other(x))
    AffineMap after(const AffineMap& other) const;

    Point operator()(const Point& p) const { return linear * p + translation; }
    bool is_similarity(double tol = 1e-10) const;
};

Point apply_map(const AffineMap& T, const Point& p);
Line apply_map(const AffineMap& T, const Line& l);
Direction apply_map(const AffineMap& T, const Direction& d);

}  // namespace inellipse
