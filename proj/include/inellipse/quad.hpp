#pragma once

#include <array>
#include <utility>
#include <variant>

#include "inellipse/geometry.hpp"

namespace inellipse {

// Strictly convex quadrilateral with vertices in canonical order:
// clockwise (interior on the right in y-up coordinates), A1 the vertex
// minimizing (y, x) lexicographically.
struct Quadrilateral {
    std::array<Point, 4> v;

    const Point& a1() const { return v[0]; }
    const Point& a2() const { return v[1]; }
    const Point& a3() const { return v[2]; }
    const Point& a4() const { return v[3]; }

    // side S_j joins vertex j and j+1 (1-based, S4 = A4A1)
    std::pair<Point, Point> side(int j) const;
    Line side_line(int j) const;
    // a = |A1A4|, b = |A1A2|, c = |A2A3|, d = |A3A4|
    double len_a() const { return (v[3] - v[0]).norm(); }
    double len_b() const { return (v[1] - v[0]).norm(); }
    double len_c() const { return (v[2] - v[1]).norm(); }
    double len_d() const { return (v[3] - v[2]).norm(); }

    Direction diag1_dir() const { return Direction(v[2] - v[0]); }  // D1 = A1A3
    Direction diag2_dir() const { return Direction(v[3] - v[1]); }  // D2 = A2A4

    double diameter() const;  // max pairwise vertex distance
    Quadrilateral relabeled(int shift) const;  // cyclic, keeps clockwise order
};

enum class MdqType { none, type1, type2, both };

// type1: P = midpoint(D2), equivalently D1 lies on the Newton line;
// type2: P = midpoint(D1). Parallelograms are both.
struct QuadClassification {
    bool is_parallelogram = false;
    MdqType mdq_type = MdqType::none;
    bool is_tangential = false;    // Pitot: a + c = b + d
    bool is_orthodiagonal = false;
    bool is_trapezoid = false;     // exactly one parallel opposite-side pair
    bool is_kite = false;
    Point diagonal_intersection = Point::Zero();
    Point m1 = Point::Zero();      // midpoint of D1
    Point m2 = Point::Zero();      // midpoint of D2
};

struct QstParams {
    double s = 2.0, t = 2.0;  // (s,t) in G: s,t > 0, s + t > 1, s != 1
    // open interval of admissible center abscissae
    std::pair<double, double> interval() const;
    double newton_slope() const { return (t - 1) / (s - 1); }
    double newton_intercept() const { return 0.5 * (s - t) / (s - 1); }
    double newton_at(double x) const { return newton_slope() * x + newton_intercept(); }
};

struct QzParams {
    double s = 8.0, t = 4.0, v = 6.0, w = 2.0;
    std::pair<double, double> interval() const;
    double newton_slope() const { return (w + 1 - t) / (v - s); }
    double newton_intercept() const { return t / 2 - newton_slope() * s / 2; }
    double newton_at(double x) const { return newton_slope() * x + newton_intercept(); }
};

// 2l, 2k, 2d as in the tangency formulas: vertices (-l-d,-k), (-l+d,k),
// (l+d,k), (l-d,-k); l,k > 0 and |d| < l under the canonical labeling.
struct ParallelogramParams {
    double l = 1.0, k = 1.0, d = 0.0;
    std::array<Point, 4> vertices() const;
};

enum class FrameKind { qst, qz, parallelogram };

struct FrameEmbedding {
    FrameKind kind = FrameKind::qz;
    std::variant<QstParams, QzParams, ParallelogramParams> params;
    AffineMap world_from_frame;
    bool similarity = false;     // isometry + uniform scale (eccentricity-preserving)
    int label_shift = 0;         // frame vertex j corresponds to world vertex j+shift (cyclic)

    const QstParams& qst() const { return std::get<QstParams>(params); }
    const QzParams& qz() const { return std::get<QzParams>(params); }
    const ParallelogramParams& parallelogram() const { return std::get<ParallelogramParams>(params); }
};

// Line through the diagonal midpoints plus the admissible center interval
// in the active frame. For parallelograms the segment collapses to the
// center point (degenerate flag).
struct NewtonLine {
    Line line;
    Point m1, m2;                       // world diagonal midpoints (D1, D2)
    double slope = 0.0, intercept = 0.0;  // of L in the frame
    std::pair<double, double> interval{0.0, 0.0};
    bool degenerate_point = false;
    Point point = Point::Zero();        // set when degenerate
};

// Reorders and validates; throws NotConvexError / DegenerateVerticesError.
Quadrilateral canonicalize(const std::array<Point, 4>& pts);

QuadClassification classify_quad(const Quadrilateral& q);

NewtonLine newton_segment(const Quadrilateral& q, const FrameEmbedding& frame);

// Affine map onto Q_{s,t} ((0,0),(0,1),(s,t),(1,0), (s,t) in G). Throws
// IsParallelogramError.
FrameEmbedding to_qst(const Quadrilateral& q);

// Similarity onto Q_z ((0,0),(0,1),(s,t),(v,w) with (R0)-(R2)); type-2
// quadrilaterals are relabeled so the image satisfies the type-1 relation.
// Throws IsParallelogramError, UnreachableFrameError.
FrameEmbedding to_qz(const Quadrilateral& q);

// Rotation-only isometry onto the Prop-P3 parallelogram frame.
FrameEmbedding to_parallelogram_frame(const Quadrilateral& q);

// Q_z when reachable, Q_{s,t} otherwise (trapezoids never satisfy (R0)-(R2)).
FrameEmbedding to_qz_or_qst(const Quadrilateral& q);

MdqType mdq_param_test(const QstParams& p);
MdqType mdq_param_test(const QzParams& p);

// (R0)-(R2) with t > w optionally relaxed (see to_qz).
bool qz_params_valid(const QzParams& p, bool require_t_gt_w);
bool qst_params_valid(const QstParams& p);

}  // namespace inellipse
