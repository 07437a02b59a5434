#pragma once

#include <array>
#include <functional>

#include "inellipse/inscribed.hpp"

namespace inellipse {

// Quadratic o(h) = -2(s^2+t^2)(s-v) h^2 - 2K h + sK and
// K = (s^2+t^2)v^2 - 2wstv + 2s^2 w^2. Requires the type-1 relation
// v = (w+1)s/t; throws NotType1FrameError otherwise.
struct OPolynomial {
    double K = 0.0;
    std::array<double, 3> o{};  // ascending coefficients: o0 + o1 h + o2 h^2
    double eval(double h) const { return o[0] + h * (o[1] + h * o[2]); }
};
OPolynomial k_and_o(const QzParams& p);

// Unique root of o in the center interval I (closed form). Throws
// NotType1FrameError.
double h_plus(const QzParams& p);

// J(h) = A+C (quadratic), M(h) = (A-C)^2 + B^2 (quartic),
// G(h) = (J - sqrt(M)) / (J + sqrt(M)) = b^2/a^2, and the quartic
// p(h) = 2J'M - JM' driving G'.
struct EccentricityProfile {
    QzParams params;
    double K = 0.0;
    std::array<double, 3> J{};
    std::array<double, 5> M{};

    double j(double h) const;
    double m(double h) const;
    double g(double h) const;
    double p_quartic(double h) const;  // 2 J'(h) M(h) - J(h) M'(h)
};
EccentricityProfile eccentricity_profile(const QzParams& p);

// Closed forms A(h+), B(h+), C(h+) from the simplified type-1 expressions.
struct ClosedFormCoefficients {
    double A = 0.0, B = 0.0, C = 0.0;
};
ClosedFormCoefficients coefficients_at_h_plus(const QzParams& p);

enum class MinEccMode { closed_form, numeric_parallelogram, numeric };

struct MinEccResult {
    double h_plus = 0.0;  // optimal family parameter (h; v_par for parallelograms)
    InscribedEllipseReport ellipse;
    double eccentricity = 0.0;
    std::array<std::pair<Point, Point>, 2> equal_diameters;
    std::array<Direction, 2> diagonal_directions;
    bool is_circle = false;
    MinEccMode mode = MinEccMode::closed_form;
};

// Minimal-eccentricity inscribed ellipse: closed form for midpoint diagonal
// quadrilaterals, numeric golden-section minimization otherwise (uniqueness
// assumed in the non-MDQ mode).
MinEccResult min_ecc_ellipse(const Quadrilateral& q);

// Deterministic golden-section maximizer with a uniform pre-scan to select
// the bracket. Returns the argmax.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double param_tolerance = 1e-12, int prescan_points = 64);

}  // namespace inellipse
