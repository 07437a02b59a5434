#include "inellipse/min_ecc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace inellipse {

namespace {

double type1_residual(const QzParams& p) {
    return std::abs(p.v * p.t - (p.w + 1) * p.s);
}

void require_type1(const QzParams& p) {
    const double scale = std::max({1.0, std::abs(p.v * p.t), std::abs((p.w + 1) * p.s)});
    const double r = type1_residual(p);
    if (r > residual_tol() * scale) throw NotType1FrameError(r);
}

}  // namespace

OPolynomial k_and_o(const QzParams& p) {
    require_type1(p);
    const double s = p.s, t = p.t, v = p.v, w = p.w;
    OPolynomial out;
    out.K = (s * s + t * t) * v * v - 2 * w * s * t * v + 2 * s * s * w * w;
    out.o = {s * out.K, -2 * out.K, -2 * (s * s + t * t) * (s - v)};
    return out;
}

double h_plus(const QzParams& p) {
    const OPolynomial op = k_and_o(p);
    const double s = p.s, t = p.t, v = p.v;
    const double inner = 2 * (s * s + t * t) * s * (s - v) + op.K;
    const double root = std::sqrt(std::max(0.0, inner));
    return std::sqrt(op.K) * (-std::sqrt(op.K) + root) / (2 * (s * s + t * t) * (s - v));
}

double EccentricityProfile::j(double h) const { return J[0] + h * (J[1] + h * J[2]); }

double EccentricityProfile::m(double h) const {
    return M[0] + h * (M[1] + h * (M[2] + h * (M[3] + h * M[4])));
}

double EccentricityProfile::g(double h) const {
    const double jj = j(h);
    const double mm = std::sqrt(std::max(0.0, m(h)));
    return (jj - mm) / (jj + mm);
}

double EccentricityProfile::p_quartic(double h) const {
    const double jd = J[1] + 2 * h * J[2];
    const double md = M[1] + h * (2 * M[2] + h * (3 * M[3] + h * 4 * M[4]));
    return 2 * jd * m(h) - j(h) * md;
}

EccentricityProfile eccentricity_profile(const QzParams& p) {
    if (!qz_params_valid(p, false)) throw InputError("(s,t,v,w) violate (R0)-(R2)");
    const double s = p.s, t = p.t, v = p.v, w = p.w;
    const double sv = s - v;
    const double L1 = (w + 1 - t) / (v - s);
    const double L0 = t / 2 - L1 * s / 2;

    // A(h) = 4(s-v)^2 L(h)^2 + 4(s-v) w (2h - s)
    const std::array<double, 3> A{4 * sv * sv * L0 * L0 - 4 * sv * w * s, 4 * sv * sv * 2 * L0 * L1 + 8 * sv * w,
                                  4 * sv * sv * L1 * L1};
    const std::array<double, 3> B{4 * sv * v * s, 4 * sv * (v * t - w * s - s - 2 * v), 8 * sv * (1 + w - t)};
    const std::array<double, 3> C{0.0, 0.0, 4 * sv * sv};

    EccentricityProfile out;
    out.params = p;
    out.K = (s * s + t * t) * v * v - 2 * w * s * t * v + 2 * s * s * w * w;
    for (int i = 0; i < 3; ++i) out.J[i] = A[i] + C[i];

    std::array<double, 3> AmC{};
    for (int i = 0; i < 3; ++i) AmC[i] = A[i] - C[i];
    out.M.fill(0.0);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) out.M[i + k] += AmC[i] * AmC[k] + B[i] * B[k];
    return out;
}

ClosedFormCoefficients coefficients_at_h_plus(const QzParams& p) {
    require_type1(p);
    const double s = p.s, t = p.t, w = p.w;
    const double st2 = s * s + t * t;
    const double K = st2 * p.v * p.v - 2 * w * s * t * p.v + 2 * s * s * w * w;
    const double fac = 2 * h_plus(p) - s;
    ClosedFormCoefficients out;
    out.A = 2 * (w - t + 1) * (t * t * K - 2 * w * s * s * st2) / (s * t * st2) * fac;
    out.B = -(4 * w * (w - t + 1) * s * s * (w * st2 + s * s - t * t) / (t * t * st2)) * fac;
    out.C = 2 * s * (w - t + 1) * K / (t * st2) * fac;
    return out;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double param_tolerance, int prescan_points) {
    // pre-scan to pick the bracket (guards against multimodality)
    double best_x = lo, best_f = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < prescan_points; ++i) {
        const double x = lo + (i + 0.5) * (hi - lo) / prescan_points;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
            best_i = i;
        }
    }
    double a = std::max(lo, lo + (best_i - 1 + 0.5) * (hi - lo) / prescan_points);
    double b = std::min(hi, lo + (best_i + 1 + 0.5) * (hi - lo) / prescan_points);

    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    const double tol = param_tolerance * std::max({1.0, std::abs(lo), std::abs(hi)});
    for (int it = 0; it < 250 && (b - a) > tol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double mid = (a + b) / 2;
    return f(mid) >= best_f ? mid : best_x;
}

namespace {

std::pair<Point, Point> order_pair(Point p, Point q) {
    if (q.x() < p.x() || (q.x() == p.x() && q.y() < p.y())) std::swap(p, q);
    return {p, q};
}

// endpoints of the intrinsic equal conjugate diameters (45-degree points)
std::array<std::pair<Point, Point>, 2> intrinsic_equal_diameters(const EllipseInfo& info) {
    const auto [major, minor] = axis_directions(info);
    const Eigen::Vector2d u = (info.a * major.vec() + info.b * minor.vec()) / std::sqrt(2.0);
    const Eigen::Vector2d v = (info.a * major.vec() - info.b * minor.vec()) / std::sqrt(2.0);
    return {order_pair(info.center - u, info.center + u), order_pair(info.center - v, info.center + v)};
}

MinEccResult finish_mdq(const Quadrilateral& q, MinEccResult res, bool tangential) {
    res.eccentricity = res.ellipse.info.eccentricity;
    res.diagonal_directions = {q.diag1_dir(), q.diag2_dir()};
    res.equal_diameters = {diameter_endpoints(res.ellipse.info, q.diag1_dir()),
                           diameter_endpoints(res.ellipse.info, q.diag2_dir())};
    res.is_circle = tangential;
    return res;
}

}  // namespace

MinEccResult min_ecc_ellipse(const Quadrilateral& q) {
    const QuadClassification cls = classify_quad(q);
    MinEccResult res;

    if (cls.is_parallelogram) {
        // the paper omits the parallelogram case; minimize numerically over
        // the tangency family (the frame map is an isometry)
        const FrameEmbedding frame = to_parallelogram_frame(q);
        const auto& pp = frame.parallelogram();
        const auto ratio = [&](double v) {
            return classify_conic(parallelogram_ellipse(pp, v)).ratio_sq;
        };
        const double v_opt = golden_section_max(ratio, -1 + 1e-9, 1 - 1e-9, param_tol());
        res.ellipse = inscribed_ellipse(q, frame, FamilyParam::of_v(v_opt));
        res.h_plus = v_opt;
        res.mode = MinEccMode::numeric_parallelogram;
        return finish_mdq(q, std::move(res), cls.is_tangential);
    }

    const bool mdq = cls.mdq_type != MdqType::none;
    if (mdq) {
        const FrameEmbedding frame = to_qz(q);  // type-1 by construction
        const double hp = h_plus(frame.qz());
        res.ellipse = inscribed_ellipse(q, frame, FamilyParam::of_h(hp));
        res.h_plus = hp;
        res.mode = MinEccMode::closed_form;
        return finish_mdq(q, std::move(res), cls.is_tangential);
    }

    // non-MDQ: numeric minimization; uniqueness assumed, not verified
    res.mode = MinEccMode::numeric;
    try {
        const FrameEmbedding frame = to_qz(q);
        const EccentricityProfile prof = eccentricity_profile(frame.qz());
        const auto iv = frame.qz().interval();
        const double span = iv.second - iv.first;
        const double h_opt = golden_section_max([&](double h) { return prof.g(h); },
                                                iv.first + 1e-12 * span, iv.second - 1e-12 * span, param_tol());
        res.ellipse = inscribed_ellipse(q, frame, FamilyParam::of_h(h_opt));
        res.h_plus = h_opt;
    } catch (const UnreachableFrameError&) {
        // trapezoid: go through the affine Q_{s,t} frame and measure the
        // eccentricity in world coordinates
        const FrameEmbedding frame = to_qst(q);
        const auto iv = frame.qst().interval();
        const double span = iv.second - iv.first;
        const auto ratio = [&](double h) {
            const Conic world = apply_map(frame.world_from_frame,
                                          qst_ellipse(frame.qst(), qst_q_from_h(frame.qst(), h)));
            return classify_conic(world).ratio_sq;
        };
        const double h_opt =
            golden_section_max(ratio, iv.first + 1e-9 * span, iv.second - 1e-9 * span, param_tol());
        res.ellipse = inscribed_ellipse(q, frame, FamilyParam::of_h(h_opt));
        res.h_plus = h_opt;
    }
    res.eccentricity = res.ellipse.info.eccentricity;
    res.diagonal_directions = {q.diag1_dir(), q.diag2_dir()};
    res.equal_diameters = intrinsic_equal_diameters(res.ellipse.info);
    res.is_circle = cls.is_tangential;
    return res;
}

}  // namespace inellipse
