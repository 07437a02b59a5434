#include "inellipse/quad.hpp"

#include <algorithm>
#include <cmath>

namespace inellipse {

namespace {

Eigen::Matrix2d rot90ccw() {
    Eigen::Matrix2d r;
    r << 0, -1, 1, 0;
    return r;
}

bool lex_less(const Point& p, const Point& q) {
    return p.y() < q.y() || (p.y() == q.y() && p.x() < q.x());
}

// |sin| gap between side directions i and j (unit vectors)
double side_parallel_gap(const Quadrilateral& q, int i, int j) {
    auto [p1, p2] = q.side(i);
    auto [p3, p4] = q.side(j);
    return std::abs(cross2((p2 - p1).normalized(), (p4 - p3).normalized()));
}

}  // namespace

std::pair<Point, Point> Quadrilateral::side(int j) const {
    return {v[(j - 1) % 4], v[j % 4]};
}

Line Quadrilateral::side_line(int j) const {
    auto [p, q] = side(j);
    return Line::through(p, q);
}

double Quadrilateral::diameter() const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d = std::max(d, (v[i] - v[j]).norm());
    return d;
}

Quadrilateral Quadrilateral::relabeled(int shift) const {
    Quadrilateral out;
    for (int i = 0; i < 4; ++i) out.v[i] = v[(i + shift) % 4];
    return out;
}

Quadrilateral canonicalize(const std::array<Point, 4>& pts) {
    for (const auto& p : pts)
        if (!p.allFinite()) throw InputError("vertex coordinates must be finite");

    double diam = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) diam = std::max(diam, (pts[i] - pts[j]).norm());
    if (!(diam > 0.0)) throw DegenerateVerticesError();
    const double tol_area = residual_tol() * diam * diam;

    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if ((pts[i] - pts[j]).norm() <= residual_tol() * diam) throw DegenerateVerticesError();
    // any collinear triple is degenerate regardless of ordering
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (std::abs(cross2(pts[j] - pts[i], pts[k] - pts[i])) <= tol_area)
                    throw DegenerateVerticesError();

    // clockwise by angle around the centroid
    Point c = (pts[0] + pts[1] + pts[2] + pts[3]) / 4;
    std::array<Point, 4> ordered = pts;
    std::sort(ordered.begin(), ordered.end(), [&](const Point& p, const Point& q) {
        return std::atan2(p.y() - c.y(), p.x() - c.x()) > std::atan2(q.y() - c.y(), q.x() - c.x());
    });
    const int start = static_cast<int>(std::min_element(ordered.begin(), ordered.end(), lex_less) - ordered.begin());

    Quadrilateral quad;
    for (int i = 0; i < 4; ++i) quad.v[i] = ordered[(start + i) % 4];
    for (int i = 0; i < 4; ++i) {
        const Point e1 = quad.v[(i + 1) % 4] - quad.v[i];
        const Point e2 = quad.v[(i + 2) % 4] - quad.v[(i + 1) % 4];
        if (cross2(e1, e2) >= 0.0) throw NotConvexError();
    }
    return quad;
}

QuadClassification classify_quad(const Quadrilateral& q) {
    QuadClassification out;
    const double diam = q.diameter();
    const double tol = residual_tol();

    out.m1 = (q.a1() + q.a3()) / 2;
    out.m2 = (q.a2() + q.a4()) / 2;

    // A1 + x (A3 - A1) = A2 + y (A4 - A2)
    Eigen::Matrix2d sys;
    sys.col(0) = q.a3() - q.a1();
    sys.col(1) = -(q.a4() - q.a2());
    const Eigen::Vector2d xy = sys.colPivHouseholderQr().solve(Eigen::Vector2d(q.a2() - q.a1()));
    out.diagonal_intersection = q.a1() + xy(0) * (q.a3() - q.a1());

    const bool p13 = side_parallel_gap(q, 1, 3) <= tol;
    const bool p24 = side_parallel_gap(q, 2, 4) <= tol;
    out.is_parallelogram = p13 && p24;
    out.is_trapezoid = p13 != p24;

    // type 1: P = midpoint(D2) (the Newton line contains D1); type 2: P = midpoint(D1)
    const bool t1 = (out.diagonal_intersection - out.m2).norm() <= tol * diam;
    const bool t2 = (out.diagonal_intersection - out.m1).norm() <= tol * diam;
    out.mdq_type = t1 ? (t2 ? MdqType::both : MdqType::type1) : (t2 ? MdqType::type2 : MdqType::none);

    const double a = q.len_a(), b = q.len_b(), c = q.len_c(), d = q.len_d();
    out.is_tangential = std::abs((a + c) - (b + d)) <= tol * diam;
    out.is_orthodiagonal = std::abs(q.diag1_dir().vec().dot(q.diag2_dir().vec())) <= tol;
    out.is_kite = (std::abs(a - b) <= tol * diam && std::abs(c - d) <= tol * diam) ||
                  (std::abs(b - c) <= tol * diam && std::abs(d - a) <= tol * diam);
    return out;
}

std::pair<double, double> QstParams::interval() const {
    return s < 1 ? std::make_pair(s / 2, 0.5) : std::make_pair(0.5, s / 2);
}

std::pair<double, double> QzParams::interval() const {
    return v < s ? std::make_pair(v / 2, s / 2) : std::make_pair(s / 2, v / 2);
}

std::array<Point, 4> ParallelogramParams::vertices() const {
    return {Point(-l - d, -k), Point(-l + d, k), Point(l + d, k), Point(l - d, -k)};
}

bool qst_params_valid(const QstParams& p) {
    const double scale = std::max({1.0, std::abs(p.s), std::abs(p.t)});
    return p.s > 0 && p.t > 0 && p.s + p.t > 1 && std::abs(p.s - 1) > residual_tol() * scale;
}

bool qz_params_valid(const QzParams& p, bool require_t_gt_w) {
    const double scale = std::max({1.0, std::abs(p.s), std::abs(p.t), std::abs(p.v), std::abs(p.w)});
    const double tol = residual_tol() * scale;
    if (!(p.s > 0 && p.v > 0)) return false;
    if (std::abs(p.s - p.v) <= tol) return false;                          // (R0) s != v
    if (require_t_gt_w && !(p.t > p.w)) return false;                      // (R0) t > w
    if (!(p.v * (p.t - 1) + (1 - p.w) * p.s > 0)) return false;            // (R1)
    if (!(p.v * p.t - p.w * p.s > 0)) return false;                        // (R1)
    if (std::abs(p.w * p.s - p.v * (p.t - 1)) <= tol * scale) return false;  // (R2)
    return true;
}

MdqType mdq_param_test(const QstParams& p) {
    const double scale = std::max({1.0, std::abs(p.s), std::abs(p.t)});
    const bool t1 = std::abs(p.s - p.t) <= residual_tol() * scale;
    const bool t2 = std::abs(p.s + p.t - 2) <= residual_tol() * scale;
    return t1 ? (t2 ? MdqType::both : MdqType::type1) : (t2 ? MdqType::type2 : MdqType::none);
}

MdqType mdq_param_test(const QzParams& p) {
    const double s1 = std::max({1.0, std::abs(p.v * p.t), std::abs((p.w + 1) * p.s)});
    const double s2 = std::max({1.0, std::abs((p.t - 2) * p.v), std::abs((p.w - 1) * p.s)});
    const bool t1 = std::abs(p.v * p.t - (p.w + 1) * p.s) <= residual_tol() * s1;
    const bool t2 = std::abs((p.t - 2) * p.v - (p.w - 1) * p.s) <= residual_tol() * s2;
    return t1 ? (t2 ? MdqType::both : MdqType::type1) : (t2 ? MdqType::type2 : MdqType::none);
}

NewtonLine newton_segment(const Quadrilateral& q, const FrameEmbedding& frame) {
    const QuadClassification cls = classify_quad(q);
    NewtonLine out;
    out.m1 = cls.m1;
    out.m2 = cls.m2;
    if (cls.is_parallelogram || frame.kind == FrameKind::parallelogram) {
        out.degenerate_point = true;
        out.point = cls.diagonal_intersection;
        return out;
    }
    out.line = Line::through(cls.m1, cls.m2);
    if (frame.kind == FrameKind::qst) {
        const QstParams& p = frame.qst();
        out.slope = p.newton_slope();
        out.intercept = p.newton_intercept();
        out.interval = p.interval();
    } else {
        const QzParams& p = frame.qz();
        out.slope = p.newton_slope();
        out.intercept = p.newton_intercept();
        out.interval = p.interval();
    }
    return out;
}

namespace {

// similarity embedding of the shift-relabeled quad onto (0,0),(0,1),(s,t),(v,w)
struct QzCandidate {
    QzParams params;
    AffineMap world_from_frame;
};

QzCandidate qz_candidate(const Quadrilateral& q, int shift) {
    const Quadrilateral b = q.relabeled(shift);
    const Eigen::Vector2d d = b.a2() - b.a1();
    const double len = d.norm();
    const Eigen::Vector2d u = d / len;
    Eigen::Matrix2d rot;  // maps u to (0,1)
    rot << u.y(), -u.x(), u.x(), u.y();
    const auto frame_of = [&](const Point& p) -> Point { return rot * (p - b.a1()) / len; };
    const Point a3 = frame_of(b.a3());
    const Point a4 = frame_of(b.a4());
    QzCandidate cand;
    cand.params = QzParams{a3.x(), a3.y(), a4.x(), a4.y()};
    cand.world_from_frame = AffineMap::make(rot.transpose() * len, b.a1());
    return cand;
}

}  // namespace

FrameEmbedding to_qz(const Quadrilateral& q) {
    const QuadClassification cls = classify_quad(q);
    if (cls.is_parallelogram) throw IsParallelogramError();

    // shifts preserving the midpoint diagonal: 0/2 keep D1/D2 roles, 1/3 swap
    // them; type 2 is reduced to the type-1 relation by an odd shift.
    std::array<int, 4> shifts{0, 1, 2, 3};
    if (cls.mdq_type == MdqType::type1) shifts = {0, 2, 1, 3};
    if (cls.mdq_type == MdqType::type2) shifts = {1, 3, 0, 2};
    const bool mdq = cls.mdq_type != MdqType::none;

    for (bool require_t_gt_w : {true, false}) {
        for (int idx = 0; idx < (mdq ? 2 : 4); ++idx) {
            const int shift = shifts[idx];
            const QzCandidate cand = qz_candidate(q, shift);
            if (!qz_params_valid(cand.params, require_t_gt_w)) continue;
            FrameEmbedding emb;
            emb.kind = FrameKind::qz;
            emb.params = cand.params;
            emb.world_from_frame = cand.world_from_frame;
            emb.similarity = true;
            emb.label_shift = shift;
            return emb;
        }
    }
    throw UnreachableFrameError("no cyclic labeling satisfies (R0)-(R2); parallel side pair");
}

FrameEmbedding to_qst(const Quadrilateral& q) {
    const QuadClassification cls = classify_quad(q);
    if (cls.is_parallelogram) throw IsParallelogramError();

    Quadrilateral working = q;
    AffineMap pre = AffineMap::identity();  // original world <- working coordinates
    int shift = 0;
    if (side_parallel_gap(q, 1, 3) <= residual_tol()) {
        // S1 || S3 would force s = 1; rotate 90 degrees counterclockwise first
        const AffineMap rot = AffineMap::make(rot90ccw(), Eigen::Vector2d::Zero());
        std::array<Point, 4> rotated;
        for (int i = 0; i < 4; ++i) rotated[i] = rot(q.v[i]);
        working = canonicalize(rotated);
        pre = rot.inverse();
        for (int i = 0; i < 4; ++i)
            if ((working.a1() - rotated[i]).norm() <= 1e-12 * q.diameter()) shift = i;
        if (side_parallel_gap(working, 1, 3) <= residual_tol()) {
            // lower-left moved by two positions; fall back to a cyclic relabel
            working = working.relabeled(1);
            shift = (shift + 1) % 4;
        }
    }

    Eigen::Matrix2d m;
    m.col(0) = working.a4() - working.a1();
    m.col(1) = working.a2() - working.a1();
    const AffineMap frame_to_working = AffineMap::make(m, working.a1());
    const Point st = frame_to_working.inverse()(working.a3());

    FrameEmbedding emb;
    emb.kind = FrameKind::qst;
    emb.params = QstParams{st.x(), st.y()};
    emb.world_from_frame = pre.after(frame_to_working);
    emb.similarity = false;
    emb.label_shift = shift;
    if (!qst_params_valid(emb.qst())) throw UnreachableFrameError("(s,t) not in G after normalization");
    return emb;
}

FrameEmbedding to_qz_or_qst(const Quadrilateral& q) {
    try {
        return to_qz(q);
    } catch (const UnreachableFrameError&) {
        return to_qst(q);
    }
}

FrameEmbedding to_parallelogram_frame(const Quadrilateral& q) {
    const QuadClassification cls = classify_quad(q);
    if (!cls.is_parallelogram) throw InputError("quadrilateral is not a parallelogram");

    const Point center = (q.v[0] + q.v[1] + q.v[2] + q.v[3]) / 4;
    for (int shift : {0, 1}) {
        const Quadrilateral b = q.relabeled(shift);
        const Eigen::Vector2d p = (b.a4() - b.a1()) / 2;
        const Eigen::Vector2d r = (b.a2() - b.a1()) / 2;
        const double l = p.norm();
        const Eigen::Vector2d ph = p / l;
        Eigen::Matrix2d rot;  // maps ph to (1,0)
        rot << ph.x(), ph.y(), -ph.y(), ph.x();
        const Eigen::Vector2d dk = rot * r;
        if (!(std::abs(dk.x()) < l) && shift == 0) continue;  // prefer |d| < l
        FrameEmbedding emb;
        emb.kind = FrameKind::parallelogram;
        emb.params = ParallelogramParams{l, dk.y(), dk.x()};
        emb.world_from_frame = AffineMap::make(rot.transpose(), center);
        emb.similarity = true;
        emb.label_shift = shift;
        return emb;
    }
    throw UnreachableFrameError("degenerate parallelogram");
}

}  // namespace inellipse
