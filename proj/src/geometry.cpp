#include "inellipse/geometry.hpp"

#include <cmath>

namespace inellipse {

Tolerances& tolerances() {
    static Tolerances tols;
    return tols;
}

Direction::Direction(double x, double y) {
    const double n = std::hypot(x, y);
    if (!(n > 0.0) || !std::isfinite(n)) throw InputError("direction must be nonzero and finite");
    x /= n;
    y /= n;
    if (y < 0.0 || (y == 0.0 && x < 0.0)) {
        x = -x;
        y = -y;
    }
    dx = x;
    dy = y;
}

Line::Line(double a_, double b_, double c_) {
    const double n = std::hypot(a_, b_);
    if (!(n > 0.0) || !std::isfinite(n)) throw InputError("line normal must be nonzero and finite");
    a = a_ / n;
    b = b_ / n;
    c = c_ / n;
    const double lead = (a != 0.0) ? a : b;
    if (lead < 0.0) {
        a = -a;
        b = -b;
        c = -c;
    }
}

Line Line::through(const Point& p, const Point& q) {
    // normal is the perpendicular of q - p
    const Eigen::Vector2d d = q - p;
    return Line(-d.y(), d.x(), d.y() * p.x() - d.x() * p.y());
}

AffineMap AffineMap::make(const Eigen::Matrix2d& m, const Eigen::Vector2d& t) {
    AffineMap T;
    T.linear = m;
    T.translation = t;
    if (std::abs(T.det()) <= 0.0 || !std::isfinite(T.det())) throw SingularMapError();
    return T;
}

AffineMap AffineMap::rotation(double angle, const Eigen::Vector2d& about) {
    Eigen::Matrix2d r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return make(r, about - r * about);
}

AffineMap AffineMap::scaling(double k) {
    return make(Eigen::Matrix2d::Identity() * k, Eigen::Vector2d::Zero());
}

AffineMap AffineMap::translation_by(const Eigen::Vector2d& t) {
    return make(Eigen::Matrix2d::Identity(), t);
}

AffineMap AffineMap::inverse() const {
    const double dval = det();
    if (dval == 0.0 || !std::isfinite(dval)) throw SingularMapError();
    Eigen::Matrix2d inv = linear.inverse();
    return make(inv, -(inv * translation));
}

AffineMap AffineMap::after(const AffineMap& other) const {
    return make(linear * other.linear, linear * other.translation + translation);
}

bool AffineMap::is_similarity(double tol) const {
    const Eigen::Vector2d c0 = linear.col(0), c1 = linear.col(1);
    const double scale = std::max(c0.norm(), c1.norm());
    if (!(scale > 0.0)) return false;
    return std::abs(c0.norm() - c1.norm()) <= tol * scale && std::abs(c0.dot(c1)) <= tol * scale * scale;
}

Point apply_map(const AffineMap& T, const Point& p) { return T(p); }

Line apply_map(const AffineMap& T, const Line& l) {
    if (T.det() == 0.0) throw SingularMapError();
    // n.x + c = 0 maps to (M^-T n).x' + (c - n . M^-1 t) = 0
    const Eigen::Matrix2d minv = T.linear.inverse();
    const Eigen::Vector2d n = minv.transpose() * l.normal();
    const double c = l.c - l.normal().dot(minv * T.translation);
    return Line(n.x(), n.y(), c);
}

Direction apply_map(const AffineMap& T, const Direction& d) {
    if (T.det() == 0.0) throw SingularMapError();
    return Direction(T.linear * d.vec());
}

}  // namespace inellipse
