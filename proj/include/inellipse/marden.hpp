#pragma once

#include <array>
#include <utility>

#include "inellipse/geometry.hpp"

namespace inellipse {

// Triangle vertices (as complex numbers z = x + iy) with real weights
// summing to 1 and of positive product.
struct MardenInput {
    Point z1, z2, z3;
    double t1 = 1.0 / 3, t2 = 1.0 / 3, t3 = 1.0 / 3;
};

struct MardenResult {
    std::pair<Point, Point> foci;     // lexicographic by (x, y)
    std::array<Point, 3> tangency;    // zeta_1 on z2z3, zeta_2 on z1z3, zeta_3 on z1z2
};

// Foci are the zeros of t1(z-z2)(z-z3) + t2(z-z1)(z-z3) + t3(z-z1)(z-z2);
// tangency points from the weighted-average formulas.
// Throws CollinearVerticesError, InputError on bad weights.
MardenResult marden_inellipse(const MardenInput& in);

}  // namespace inellipse
