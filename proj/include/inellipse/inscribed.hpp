#pragma once

#include <optional>

#include "inellipse/conic.hpp"
#include "inellipse/quad.hpp"

namespace inellipse {

// Slope of a tangency chord, with an explicit flag for vertical chords.
struct ChordSlope {
    Direction dir;
    bool vertical = false;
    double slope = 0.0;  // valid iff !vertical

    static ChordSlope between(const Point& p, const Point& q);
};

// Tangency points with sides S1..S4 and the four chord slopes.
struct TangencyReport {
    std::array<Point, 4> q;  // q[j-1] touches side S_j
    ChordSlope chord_q1q2, chord_q2q3, chord_q3q4, chord_q1q4;
};

// One member of the inscribed family, in world coordinates.
struct InscribedEllipseReport {
    Quadrilateral quad;          // world quadrilateral (canonical)
    Conic conic;                 // world frame
    EllipseInfo info;            // recomputed in world frame
    FrameEmbedding frame;
    double h = 0.0;              // center abscissa in the frame (qz/qst)
    std::optional<double> q;     // tangency parameter (qst frame only)
    std::optional<double> v_par; // parallelogram frame only
    TangencyReport tangency;     // world coordinates, world side indexing
    Point center = Point::Zero();
};

// Centered quadratic-form coefficients of the Q_z family at abscissa h.
struct QzCoefficients {
    double A = 0.0, B = 0.0, C = 0.0;
    double R = 0.0;       // cubic R(h) = (s-2h)(2h-v)(2(v(t-1)-ws)h + vs)
    double L_of_h = 0.0;  // Newton-line ordinate at h
};

// --- Q_{s,t} family ------------------------------------------------------

// Conic of the inscribed ellipse tangent to S4 at (q, 0), q in (0,1).
Conic qst_ellipse(const QstParams& p, double q);
TangencyReport qst_tangency(const QstParams& p, double q);

// Mutually inverse bijections between q in (0,1) and the center abscissa h.
double qst_h_from_q(const QstParams& p, double q);
double qst_q_from_h(const QstParams& p, double h);

// --- Q_z family -----------------------------------------------------------

QzCoefficients qz_coefficients(const QzParams& p, double h);
Conic qz_ellipse(const QzParams& p, double h);

// --- Parallelogram family -------------------------------------------------

TangencyReport parallelogram_tangency(const ParallelogramParams& p, double v_par);
Conic parallelogram_ellipse(const ParallelogramParams& p, double v_par);

// --- World dispatcher -----------------------------------------------------

struct FamilyParam {
    enum class Kind { h, q, v_par } kind = Kind::h;
    double value = 0.0;

    static FamilyParam of_h(double h) { return {Kind::h, h}; }
    static FamilyParam of_q(double q) { return {Kind::q, q}; }
    static FamilyParam of_v(double v) { return {Kind::v_par, v}; }
};

// Builds the family member in the appropriate canonical frame
// (parallelogram / Q_z, falling back to Q_{s,t} for trapezoids) and maps
// conic and tangency to world coordinates.
InscribedEllipseReport inscribed_ellipse(const Quadrilateral& world_quad, const FamilyParam& param);

// Report for a precomputed frame (avoids re-deriving the embedding).
InscribedEllipseReport inscribed_ellipse(const Quadrilateral& world_quad, const FrameEmbedding& frame,
                                         const FamilyParam& param);

}  // namespace inellipse
