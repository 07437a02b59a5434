#include "inellipse/conic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace inellipse {

namespace {

bool all_finite(const Conic& c) {
    return std::isfinite(c.A) && std::isfinite(c.B) && std::isfinite(c.C) && std::isfinite(c.D) &&
           std::isfinite(c.E) && std::isfinite(c.F);
}

}  // namespace

Conic Conic::from_coeffs(double A, double B, double C, double D, double E, double F) {
    Conic c{A, B, C, D, E, F};
    if (!all_finite(c)) throw InputError("conic coefficients must be finite");
    const double m = c.max_abs_coeff();
    if (std::abs(A) + std::abs(B) + std::abs(C) <= 0.0) throw InputError("conic has no quadratic part");
    const double trace = A + C;
    if (std::abs(trace) > 1e-14 * m) {
        const double inv = 1.0 / trace;
        return Conic{A * inv, B * inv, C * inv, D * inv, E * inv, F * inv};
    }
    // traceless (never an ellipse): max-coefficient scale, leading sign positive
    double inv = 1.0 / m;
    for (double coef : {A, B, C, D, E, F}) {
        if (coef != 0.0) {
            if (coef < 0.0) inv = -inv;
            break;
        }
    }
    return Conic{A * inv, B * inv, C * inv, D * inv, E * inv, F * inv};
}

Eigen::Matrix2d Conic::quadratic_form() const {
    Eigen::Matrix2d m;
    m << A, B / 2, B / 2, C;
    return m;
}

Eigen::Matrix3d Conic::homogeneous() const {
    Eigen::Matrix3d q;
    q << A, B / 2, D / 2, B / 2, C, E / 2, D / 2, E / 2, F;
    return q;
}

Conic Conic::from_homogeneous(const Eigen::Matrix3d& Q) {
    return from_coeffs(Q(0, 0), 2 * Q(0, 1), Q(1, 1), 2 * Q(0, 2), 2 * Q(1, 2), Q(2, 2));
}

double Conic::max_abs_coeff() const {
    return std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D), std::abs(E), std::abs(F)});
}

bool projectively_equal(const Conic& lhs, const Conic& rhs, double tol) {
    const Conic a = Conic::from_coeffs(lhs.A, lhs.B, lhs.C, lhs.D, lhs.E, lhs.F);
    const Conic b = Conic::from_coeffs(rhs.A, rhs.B, rhs.C, rhs.D, rhs.E, rhs.F);
    const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
    return std::abs(a.A - b.A) <= tol * scale && std::abs(a.B - b.B) <= tol * scale &&
           std::abs(a.C - b.C) <= tol * scale && std::abs(a.D - b.D) <= tol * scale &&
           std::abs(a.E - b.E) <= tol * scale && std::abs(a.F - b.F) <= tol * scale;
}

EllipseInfo classify_conic(const Conic& input) {
    Conic c = Conic::from_coeffs(input.A, input.B, input.C, input.D, input.E, input.F);
    const double Delta = 4 * c.A * c.C - c.B * c.B;
    if (!(Delta > 0.0)) throw NotAnEllipseError(Delta);
    // after normalization A + C = 1 and Delta > 0, both A and C are positive
    const double delta = c.C * c.D * c.D + c.A * c.E * c.E - c.B * c.D * c.E - c.F * Delta;
    if (!(delta > 0.0)) throw DegenerateConicError(delta);

    EllipseInfo e;
    e.conic = c;
    e.Delta = Delta;
    e.delta = delta;
    e.mu = 4 * delta / (Delta * Delta);
    // gradient system 2Ax + By + D = 0, Bx + 2Cy + E = 0
    Eigen::Matrix2d g;
    g << 2 * c.A, c.B, c.B, 2 * c.C;
    e.center = g.colPivHouseholderQr().solve(Eigen::Vector2d(-c.D, -c.E));

    const double root = std::sqrt((c.A - c.C) * (c.A - c.C) + c.B * c.B);
    const double trace = c.A + c.C;  // == 1 after normalization
    e.a = std::sqrt(e.mu * (trace + root) / 2);
    e.b = std::sqrt(e.mu * (trace - root) / 2);
    e.ratio_sq = (trace - root) / (trace + root);
    e.eccentricity = std::sqrt(std::max(0.0, 1.0 - e.ratio_sq));
    return e;
}

std::optional<EllipseInfo> maybe_classify_conic(const Conic& c) {
    try {
        return classify_conic(c);
    } catch (const InputError&) {
        return std::nullopt;
    }
}

std::pair<Direction, Direction> axis_directions(const EllipseInfo& e) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(e.conic.quadratic_form());
    // eigenvalues ascending: the smaller one belongs to the major axis
    const Eigen::Vector2d major = es.eigenvectors().col(0);
    const Eigen::Vector2d minor = es.eigenvectors().col(1);
    return {Direction(major), Direction(minor)};
}

Direction conjugate_direction(const EllipseInfo& e, const Direction& d) {
    // d^T M u = 0  <=>  u perpendicular to M d
    const Eigen::Vector2d md = e.conic.quadratic_form() * d.vec();
    return Direction(-md.y(), md.x());
}

std::pair<Point, Point> diameter_endpoints(const EllipseInfo& e, const Direction& d) {
    // restricted to center + t*d the linear term vanishes
    const double quad = d.vec().dot(e.conic.quadratic_form() * d.vec());
    const double f0 = e.conic.evaluate(e.center);
    const double t = std::sqrt(std::max(0.0, -f0 / quad));
    Point p = e.center - t * d.vec();
    Point q = e.center + t * d.vec();
    if (q.x() < p.x() || (q.x() == p.x() && q.y() < p.y())) std::swap(p, q);
    return {p, q};
}

Point line_tangency_point(const EllipseInfo& e, const Line& l) {
    // parameterize the line as p0 + t * dir and restrict the conic
    const Point p0 = -l.c * l.normal();
    const Eigen::Vector2d dir = l.direction().vec();
    const Eigen::Matrix2d m = e.conic.quadratic_form();
    const Eigen::Vector2d lin(e.conic.D, e.conic.E);
    const double alpha = dir.dot(m * dir);
    const double beta = 2 * p0.dot(m * dir) + lin.dot(dir);
    const double gamma = e.conic.evaluate(p0);
    const double disc = beta * beta - 4 * alpha * gamma;
    const double scale = std::abs(alpha) + std::abs(beta) + std::abs(gamma);
    if (std::abs(disc) > tangency_tol() * scale * scale) throw NotTangentError(disc);
    return p0 + (-beta / (2 * alpha)) * dir;
}

Conic apply_map(const AffineMap& T, const Conic& c) {
    if (T.det() == 0.0) throw SingularMapError();
    // x^T Q x = 0 maps to x'^T H^-T Q H^-1 x' = 0 for homogeneous H = [M t; 0 1]
    Eigen::Matrix3d hinv = Eigen::Matrix3d::Identity();
    const AffineMap tinv = T.inverse();
    hinv.topLeftCorner<2, 2>() = tinv.linear;
    hinv.topRightCorner<2, 1>() = tinv.translation;
    const Eigen::Matrix3d q = hinv.transpose() * c.homogeneous() * hinv;
    return Conic::from_homogeneous(q);
}

}  // namespace inellipse
