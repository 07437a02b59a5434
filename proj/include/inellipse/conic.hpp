#pragma once

#include <optional>
#include <utility>

#include "inellipse/geometry.hpp"

namespace inellipse {

// General second-degree curve A x^2 + B xy + C y^2 + D x + E y + F = 0,
// stored in projective normal form: A + C = 1 whenever A + C is not
// negligible, otherwise max-coefficient scale with the first nonzero of
// (A,...,F) positive.
struct Conic {
    double A = 1.0, B = 0.0, C = 1.0, D = 0.0, E = 0.0, F = -1.0;

    static Conic from_coeffs(double A, double B, double C, double D, double E, double F);

    double evaluate(const Point& p) const {
        const double x = p.x(), y = p.y();
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F;
    }

    // M = [[A, B/2], [B/2, C]]; the conjugacy bilinear form
    Eigen::Matrix2d quadratic_form() const;
    // 3x3 symmetric matrix of the homogeneous quadratic form
    Eigen::Matrix3d homogeneous() const;
    static Conic from_homogeneous(const Eigen::Matrix3d& Q);

    double max_abs_coeff() const;
};

bool projectively_equal(const Conic& lhs, const Conic& rhs, double tol);

// Validated ellipse with derived metric data (Delta, delta, mu and the
// semi-axes from the coefficient formulas).
struct EllipseInfo {
    Conic conic;
    Point center = Point::Zero();
    double a = 1.0;           // semi-major
    double b = 1.0;           // semi-minor
    double ratio_sq = 1.0;    // b^2 / a^2
    double eccentricity = 0.0;
    double Delta = 0.0;       // 4AC - B^2
    double delta = 0.0;       // CD^2 + AE^2 - BDE - F*Delta
    double mu = 0.0;          // 4*delta / Delta^2
};

// Throws NotAnEllipseError (Delta <= 0) or DegenerateConicError (delta <= 0).
EllipseInfo classify_conic(const Conic& c);
std::optional<EllipseInfo> maybe_classify_conic(const Conic& c);

// Unit directions of the major and minor axes (eigenvectors of the
// quadratic form for the smaller / larger eigenvalue).
std::pair<Direction, Direction> axis_directions(const EllipseInfo& e);

// Direction u with d^T M u = 0: the diameter bisecting all chords parallel to d.
Direction conjugate_direction(const EllipseInfo& e, const Direction& d);

// Intersection of the diameter along d with the ellipse, lexicographically ordered.
std::pair<Point, Point> diameter_endpoints(const EllipseInfo& e, const Direction& d);

// Double root of the conic restricted to l. Throws NotTangentError.
Point line_tangency_point(const EllipseInfo& e, const Line& l);

Conic apply_map(const AffineMap& T, const Conic& c);

}  // namespace inellipse
