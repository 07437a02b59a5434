#pragma once

#include <algorithm>
#include <cmath>

namespace inellipse {

// Global tolerance policy. All residual comparisons scale with the magnitude
// of the quantities involved; parameter-space comparisons are near-absolute.
struct Tolerances {
    double residual = 1e-9;   // scaled residual comparisons (geometry, identities)
    double param = 1e-12;     // parameter-space comparisons (h, q, s, t, ...)
    double tangency = 1e-8;   // |discriminant| bound for the restricted quadratic
};

Tolerances& tolerances();

inline double residual_tol() { return tolerances().residual; }
inline double param_tol() { return tolerances().param; }
inline double tangency_tol() { return tolerances().tangency; }

// |a - b| <= tol * max(1, |a|, |b|, scale)
inline bool near(double a, double b, double tol, double scale = 1.0) {
    double m = std::max({1.0, std::abs(a), std::abs(b), std::abs(scale)});
    return std::abs(a - b) <= tol * m;
}

inline bool near_zero(double a, double tol, double scale = 1.0) {
    return std::abs(a) <= tol * std::max(1.0, std::abs(scale));
}

}  // namespace inellipse
