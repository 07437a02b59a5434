#include "inellipse/inscribed.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace inellipse {

namespace {

void require_open_unit(const char* name, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ParameterOutOfRangeError(name, q, 0.0, 1.0);
}

void require_in(const char* name, double h, std::pair<double, double> iv) {
    if (!(h > iv.first && h < iv.second)) throw ParameterOutOfRangeError(name, h, iv.first, iv.second);
}

std::array<Line, 4> qz_side_lines(const QzParams& p) {
    const Point a1(0, 0), a2(0, 1), a3(p.s, p.t), a4(p.v, p.w);
    return {Line::through(a1, a2), Line::through(a2, a3), Line::through(a3, a4), Line::through(a4, a1)};
}

}  // namespace

ChordSlope ChordSlope::between(const Point& p, const Point& q) {
    ChordSlope out;
    out.dir = Direction(q - p);
    out.vertical = std::abs(out.dir.dx) <= residual_tol();  // dir is unit length
    if (!out.vertical) out.slope = out.dir.slope();
    return out;
}

static void fill_chords(TangencyReport& r) {
    r.chord_q1q2 = ChordSlope::between(r.q[0], r.q[1]);
    r.chord_q2q3 = ChordSlope::between(r.q[1], r.q[2]);
    r.chord_q3q4 = ChordSlope::between(r.q[2], r.q[3]);
    r.chord_q1q4 = ChordSlope::between(r.q[0], r.q[3]);
}

Conic qst_ellipse(const QstParams& p, double q) {
    require_open_unit("q", q);
    if (!qst_params_valid(p)) throw InputError("(s,t) not in G");
    const double s = p.s, t = p.t;
    const double A = t * t;
    const double B = 4 * q * q * (t - 1) * t + 2 * q * t * (s - t + 2) - 2 * s * t;
    const double cy = (1 - q) * s + q * t;
    const double C = cy * cy;
    const double D = -2 * q * t * t;
    const double E = -2 * q * t * cy;
    const double F = q * q * t * t;
    return Conic::from_coeffs(A, B, C, D, E, F);
}

TangencyReport qst_tangency(const QstParams& p, double q) {
    require_open_unit("q", q);
    if (!qst_params_valid(p)) throw InputError("(s,t) not in G");
    const double s = p.s, t = p.t;
    TangencyReport r;
    r.q[0] = Point(0, q * t / ((t - s) * q + s));
    const double den2 = (t - 1) * (s + t) * q + s;
    r.q[1] = Point((1 - q) * s * s / den2, t * (s + q * (t - 1)) / den2);
    const double den3 = (s + t - 2) * q + 1;
    r.q[2] = Point((s + q * (t - 1)) / den3, (1 - q) * t / den3);
    r.q[3] = Point(q, 0);
    fill_chords(r);
    return r;
}

double qst_h_from_q(const QstParams& p, double q) {
    require_open_unit("q", q);
    return 0.5 * (q * (p.t - p.s) + p.s) / (q * (p.t - 1) + 1);
}

double qst_q_from_h(const QstParams& p, double h) {
    require_in("h", h, p.interval());
    return (p.s - 2 * h) / (2 * (p.t - 1) * h + p.s - p.t);
}

QzCoefficients qz_coefficients(const QzParams& p, double h) {
    if (!qz_params_valid(p, false)) throw InputError("(s,t,v,w) violate (R0)-(R2)");
    require_in("h", h, p.interval());
    const double s = p.s, t = p.t, v = p.v, w = p.w;
    QzCoefficients out;
    out.L_of_h = p.newton_at(h);
    const double sv = s - v;
    out.A = 4 * sv * sv * (out.L_of_h * out.L_of_h + w * (2 * h - s) / sv);
    out.B = 4 * sv * (2 * (1 + w - t) * h * h + (v * t - w * s - s - 2 * v) * h + v * s);
    out.C = 4 * sv * sv * h * h;
    out.R = (s - 2 * h) * (2 * h - v) * (2 * (v * (t - 1) - w * s) * h + v * s);
    return out;
}

Conic qz_ellipse(const QzParams& p, double h) {
    const QzCoefficients k = qz_coefficients(p, h);
    const double L = k.L_of_h;
    // expand A(x-h)^2 + B(x-h)(y-L) + C(y-L)^2 = R
    return Conic::from_coeffs(k.A, k.B, k.C, -2 * k.A * h - k.B * L, -k.B * h - 2 * k.C * L,
                              k.A * h * h + k.B * h * L + k.C * L * L - k.R);
}

TangencyReport parallelogram_tangency(const ParallelogramParams& p, double v_par) {
    if (!(v_par > -1.0 && v_par < 1.0)) throw ParameterOutOfRangeError("v", v_par, -1.0, 1.0);
    const double l = p.l, k = p.k, d = p.d;
    TangencyReport r;
    r.q[0] = Point(-l + d * v_par, k * v_par);
    r.q[1] = Point(-l * v_par + d, k);
    r.q[2] = Point(l - d * v_par, -k * v_par);
    r.q[3] = Point(l * v_par - d, -k);
    fill_chords(r);
    return r;
}

Conic parallelogram_ellipse(const ParallelogramParams& p, double v_par) {
    const TangencyReport tr = parallelogram_tangency(p, v_par);
    // centered conic Ax^2 + Bxy + Cy^2 + F = 0 through q1, q2 with gradients
    // normal to sides S1 (direction (d,k)) and S2 (direction (1,0))
    const Point& q1 = tr.q[0];
    const Point& q2 = tr.q[1];
    Eigen::Matrix4d sys;
    sys.row(0) << q1.x() * q1.x(), q1.x() * q1.y(), q1.y() * q1.y(), 1.0;
    sys.row(1) << 2 * q1.x() * p.d, q1.y() * p.d + q1.x() * p.k, 2 * q1.y() * p.k, 0.0;
    sys.row(2) << q2.x() * q2.x(), q2.x() * q2.y(), q2.y() * q2.y(), 1.0;
    sys.row(3) << 2 * q2.x(), q2.y(), 0.0, 0.0;
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(sys, Eigen::ComputeFullV);
    const auto& sing = svd.singularValues();
    if (sing(2) <= 1e-12 * sing(0)) throw SingularFitError();
    const Eigen::Vector4d n = svd.matrixV().col(3);
    return Conic::from_coeffs(n(0), n(1), n(2), 0.0, 0.0, n(3));
}

namespace {

TangencyReport map_tangency_to_world(const TangencyReport& frame_rep, const FrameEmbedding& emb) {
    TangencyReport world;
    for (int j = 0; j < 4; ++j) world.q[(j + emb.label_shift) % 4] = emb.world_from_frame(frame_rep.q[j]);
    fill_chords(world);
    return world;
}

InscribedEllipseReport assemble_report(const Quadrilateral& quad, const FrameEmbedding& frame,
                                       const Conic& frame_conic, const TangencyReport& frame_tangency) {
    InscribedEllipseReport rep;
    rep.quad = quad;
    rep.frame = frame;
    rep.conic = apply_map(frame.world_from_frame, frame_conic);
    rep.info = classify_conic(rep.conic);
    rep.center = rep.info.center;
    rep.tangency = map_tangency_to_world(frame_tangency, frame);
    return rep;
}

TangencyReport qz_frame_tangency(const QzParams& p, const Conic& conic) {
    const EllipseInfo info = classify_conic(conic);
    TangencyReport r;
    const auto lines = qz_side_lines(p);
    for (int j = 0; j < 4; ++j) r.q[j] = line_tangency_point(info, lines[j]);
    fill_chords(r);
    return r;
}

}  // namespace

InscribedEllipseReport inscribed_ellipse(const Quadrilateral& world_quad, const FrameEmbedding& frame,
                                         const FamilyParam& param) {
    using Kind = FamilyParam::Kind;
    switch (frame.kind) {
        case FrameKind::parallelogram: {
            if (param.kind != Kind::v_par)
                throw ParameterOutOfRangeError("v (parallelogram family parameter)", param.value, -1.0, 1.0);
            const auto& p = frame.parallelogram();
            const Conic conic = parallelogram_ellipse(p, param.value);
            auto rep = assemble_report(world_quad, frame, conic, parallelogram_tangency(p, param.value));
            rep.v_par = param.value;
            rep.h = std::numeric_limits<double>::quiet_NaN();
            return rep;
        }
        case FrameKind::qz: {
            const QzParams& p = frame.qz();
            double h = 0.0;
            std::optional<double> q_val;
            if (param.kind == Kind::h) {
                h = param.value;
            } else if (param.kind == Kind::q) {
                // route the Q_{s,t} tangency parameter through the shared center
                const FrameEmbedding qst = to_qst(world_quad);
                const double h_qst = qst_h_from_q(qst.qst(), param.value);
                const Point world_center =
                    qst.world_from_frame(Point(h_qst, qst.qst().newton_at(h_qst)));
                h = frame.world_from_frame.inverse()(world_center).x();
                q_val = param.value;
            } else {
                throw ParameterError("parameter v is only valid for parallelograms");
            }
            const Conic conic = qz_ellipse(p, h);
            auto rep = assemble_report(world_quad, frame, conic, qz_frame_tangency(p, conic));
            rep.h = h;
            rep.q = q_val;
            return rep;
        }
        case FrameKind::qst: {
            const QstParams& p = frame.qst();
            double h = 0.0, q = 0.0;
            if (param.kind == Kind::h) {
                h = param.value;
                q = qst_q_from_h(p, h);
            } else if (param.kind == Kind::q) {
                q = param.value;
                h = qst_h_from_q(p, q);
            } else {
                throw ParameterError("parameter v is only valid for parallelograms");
            }
            const Conic conic = qst_ellipse(p, q);
            auto rep = assemble_report(world_quad, frame, conic, qst_tangency(p, q));
            rep.h = h;
            rep.q = q;
            return rep;
        }
    }
    throw InputError("unknown frame kind");
}

InscribedEllipseReport inscribed_ellipse(const Quadrilateral& world_quad, const FamilyParam& param) {
    const QuadClassification cls = classify_quad(world_quad);
    if (cls.is_parallelogram) return inscribed_ellipse(world_quad, to_parallelogram_frame(world_quad), param);
    // trapezoids cannot satisfy (R0)-(R2); the affine Q_{s,t} frame covers them
    return inscribed_ellipse(world_quad, to_qz_or_qst(world_quad), param);
}

}  // namespace inellipse
