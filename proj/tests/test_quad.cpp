#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "inellipse/quad.hpp"
#include "inellipse/verify.hpp"

using namespace inellipse;

namespace {

const std::array<Point, 4> kGolden{Point(0, 0), Point(8, 4), Point(0, 1), Point(6, 2)};

Quadrilateral golden_quad() { return canonicalize(kGolden); }

// random convex quadrilateral via polar sampling around the origin
Quadrilateral random_convex_quad(Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::array<double, 4> angles;
        for (auto& a : angles) a = rng.uniform(0, 2 * M_PI);
        std::sort(angles.begin(), angles.end());
        bool spaced = angles[1] - angles[0] > 0.3 && angles[2] - angles[1] > 0.3 &&
                      angles[3] - angles[2] > 0.3 && 2 * M_PI - (angles[3] - angles[0]) > 0.3;
        if (!spaced) continue;
        std::array<Point, 4> pts;
        for (int i = 0; i < 4; ++i) {
            const double r = rng.uniform(0.5, 3.0);
            pts[i] = Point(r * std::cos(angles[i]), r * std::sin(angles[i]));
        }
        try {
            return canonicalize(pts);
        } catch (const InputError&) {
            continue;
        }
    }
    throw std::runtime_error("sampling failed");
}

// independent similarity embedding with no relabeling (shift 0)
QzParams raw_qz_embedding(const Quadrilateral& q) {
    const Eigen::Vector2d d = q.a2() - q.a1();
    const double len = d.norm();
    const Eigen::Vector2d u = d / len;
    const auto frame = [&](const Point& p) -> Point {
        const Eigen::Vector2d r = p - q.a1();
        return Point((u.y() * r.x() - u.x() * r.y()) / len, (u.x() * r.x() + u.y() * r.y()) / len);
    };
    const Point a3 = frame(q.a3()), a4 = frame(q.a4());
    return QzParams{a3.x(), a3.y(), a4.x(), a4.y()};
}

}  // namespace

TEST_CASE("canonicalize the worked-example vertices from any order") {
    std::array<Point, 4> pts = kGolden;
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
    do {
        const Quadrilateral q = canonicalize(pts);
        CHECK((q.a1() - Point(0, 0)).norm() == 0.0);
        CHECK((q.a2() - Point(0, 1)).norm() == 0.0);
        CHECK((q.a3() - Point(8, 4)).norm() == 0.0);
        CHECK((q.a4() - Point(6, 2)).norm() == 0.0);
    } while (std::next_permutation(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    }));
}

TEST_CASE("canonicalize the unit square") {
    const Quadrilateral q = canonicalize({Point(1, 1), Point(0, 0), Point(1, 0), Point(0, 1)});
    CHECK((q.a1() - Point(0, 0)).norm() == 0.0);
    CHECK((q.a2() - Point(0, 1)).norm() == 0.0);
    CHECK((q.a3() - Point(1, 1)).norm() == 0.0);
    CHECK((q.a4() - Point(1, 0)).norm() == 0.0);
}

TEST_CASE("canonicalize rejections") {
    CHECK_THROWS_AS(canonicalize({Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1)}), DegenerateVerticesError);
    CHECK_THROWS_AS(canonicalize({Point(0, 0), Point(0, 0), Point(1, 0), Point(0, 1)}), DegenerateVerticesError);
    // one vertex strictly inside the triangle of the others
    CHECK_THROWS_AS(canonicalize({Point(0, 0), Point(4, 0), Point(0, 4), Point(1, 1)}), NotConvexError);
}

TEST_CASE("canonicalize idempotence and order invariance") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Quadrilateral q = random_convex_quad(rng);
        const Quadrilateral again = canonicalize(q.v);
        for (int i = 0; i < 4; ++i) CHECK((q.v[i] - again.v[i]).norm() == 0.0);
        std::array<Point, 4> shuffled = q.v;
        std::swap(shuffled[0], shuffled[2]);
        std::swap(shuffled[1], shuffled[3]);
        const Quadrilateral q2 = canonicalize(shuffled);
        for (int i = 0; i < 4; ++i) CHECK((q.v[i] - q2.v[i]).norm() == 0.0);
    }
}

TEST_CASE("classify the worked example") {
    const QuadClassification c = classify_quad(golden_quad());
    CHECK(c.mdq_type == MdqType::type1);
    CHECK_FALSE(c.is_parallelogram);
    CHECK_FALSE(c.is_tangential);
    CHECK_FALSE(c.is_orthodiagonal);
    CHECK_FALSE(c.is_trapezoid);
    CHECK_FALSE(c.is_kite);
    CHECK((c.diagonal_intersection - Point(3, 1.5)).norm() < 1e-12);
    // a + c = sqrt(40) + sqrt(73) ~ 14.87, b + d = 1 + sqrt(8) ~ 3.83
    const Quadrilateral q = golden_quad();
    CHECK(q.len_a() + q.len_c() == doctest::Approx(std::sqrt(40.0) + std::sqrt(73.0)));
    CHECK(q.len_b() + q.len_d() == doctest::Approx(1 + std::sqrt(8.0)));
}

TEST_CASE("classify the unit square") {
    const QuadClassification c = classify_quad(canonicalize({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)}));
    CHECK(c.is_parallelogram);
    CHECK(c.mdq_type == MdqType::both);
    CHECK(c.is_tangential);
    CHECK(c.is_orthodiagonal);
    CHECK(c.is_kite);
    CHECK_FALSE(c.is_trapezoid);
}

TEST_CASE("classify a kite: tangential and orthodiagonal imply midpoint diagonal") {
    // vertices on the axes: a kite with perpendicular diagonals and an incircle
    const Quadrilateral q = canonicalize({Point(-1, 0), Point(0, 1), Point(2, 0), Point(0, -1)});
    const QuadClassification c = classify_quad(q);
    CHECK(c.is_tangential);
    CHECK(c.is_orthodiagonal);
    CHECK(c.is_kite);
    CHECK(c.mdq_type != MdqType::none);
    CHECK_FALSE(c.is_parallelogram);
}

TEST_CASE("midpoint diagonal trapezoids are parallelograms (contrapositive)") {
    Rng rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const double t = [&] {
            double x = rng.uniform(0.2, 3.0);
            while (std::abs(x - 1) < 0.05) x = rng.uniform(0.2, 3.0);
            return x;
        }();
        const double ang = rng.uniform(0, 2 * M_PI), scale = rng.uniform(0.5, 2.0);
        const AffineMap T = AffineMap::make(AffineMap::rotation(ang).linear * scale,
                                            Eigen::Vector2d(rng.uniform(-2, 2), rng.uniform(-2, 2)));
        const Quadrilateral q =
            canonicalize({T(Point(0, 0)), T(Point(0, 1)), T(Point(1, t)), T(Point(1, 0))});
        const QuadClassification c = classify_quad(q);
        CHECK(c.is_trapezoid);
        CHECK(c.mdq_type == MdqType::none);
    }
}

TEST_CASE("newton segment in both canonical frames") {
    const Quadrilateral g = golden_quad();
    const NewtonLine nz = newton_segment(g, to_qz(g));
    CHECK_FALSE(nz.degenerate_point);
    CHECK(nz.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(nz.intercept) < 1e-12);
    CHECK(nz.interval.first == doctest::Approx(3.0));
    CHECK(nz.interval.second == doctest::Approx(4.0));
    CHECK(std::abs(nz.line.eval(Point(3.5, 1.75))) < 1e-12);

    // Q_{2,2}: L_Q(x) = x on I = (1/2, 1)
    const Quadrilateral q22 = canonicalize({Point(0, 0), Point(0, 1), Point(2, 2), Point(1, 0)});
    const NewtonLine ns = newton_segment(q22, to_qst(q22));
    CHECK(ns.slope == doctest::Approx(1.0));
    CHECK(std::abs(ns.intercept) < 1e-14);
    CHECK(ns.interval.first == doctest::Approx(0.5));
    CHECK(ns.interval.second == doctest::Approx(1.0));

    const Quadrilateral sq = canonicalize({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)});
    const NewtonLine np = newton_segment(sq, to_parallelogram_frame(sq));
    CHECK(np.degenerate_point);
    CHECK((np.point - Point(0.5, 0.5)).norm() < 1e-14);
}

TEST_CASE("to_qst") {
    const Quadrilateral q22 = canonicalize({Point(0, 0), Point(0, 1), Point(2, 2), Point(1, 0)});
    const FrameEmbedding e = to_qst(q22);
    CHECK(e.qst().s == doctest::Approx(2.0));
    CHECK(e.qst().t == doctest::Approx(2.0));
    CHECK((e.world_from_frame.linear - Eigen::Matrix2d::Identity()).norm() < 1e-14);

    const Quadrilateral g = golden_quad();
    const FrameEmbedding ge = to_qst(g);
    CHECK(qst_params_valid(ge.qst()));
    CHECK((ge.world_from_frame(Point(0, 0)) - g.a1()).norm() < 1e-12);
    CHECK((ge.world_from_frame(Point(0, 1)) - g.a2()).norm() < 1e-12);
    CHECK((ge.world_from_frame(Point(1, 0)) - g.a4()).norm() < 1e-12);
    CHECK((ge.world_from_frame(Point(ge.qst().s, ge.qst().t)) - g.a3()).norm() < 1e-12);

    CHECK_THROWS_AS(to_qst(canonicalize({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)})),
                    IsParallelogramError);

    // vertical parallel pair S1 || S3: the 90-degree fallback must fire
    const Quadrilateral trap = canonicalize({Point(0, 0), Point(0, 1), Point(1, 2), Point(1, 0)});
    const FrameEmbedding te = to_qst(trap);
    CHECK(qst_params_valid(te.qst()));
    // the embedding still reproduces four vertices of the quad
    const std::array<Point, 4> frame_pts{Point(0, 0), Point(0, 1), Point(te.qst().s, te.qst().t), Point(1, 0)};
    for (int j = 0; j < 4; ++j) {
        const Point w = te.world_from_frame(frame_pts[j]);
        CHECK((w - trap.v[(j + te.label_shift) % 4]).norm() < 1e-10);
    }

    // parallel pair that survives the rotation (lower-left shifts by two)
    const Quadrilateral nasty = canonicalize({Point(0, 0), Point(-1, 1), Point(-2, 3), Point(1, 0)});
    const FrameEmbedding ne = to_qst(nasty);
    CHECK(qst_params_valid(ne.qst()));
}

TEST_CASE("to_qz on the worked example is the identity embedding") {
    const FrameEmbedding e = to_qz(golden_quad());
    CHECK(e.similarity);
    CHECK(e.label_shift == 0);
    CHECK(e.qz().s == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(e.qz().t == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(e.qz().v == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(e.qz().w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((e.world_from_frame.linear - Eigen::Matrix2d::Identity()).norm() < 1e-14);
}

TEST_CASE("to_qz is similarity-invariant") {
    const AffineMap T = AffineMap::make(AffineMap::rotation(M_PI / 6).linear * 5.0, Eigen::Vector2d(3, -2));
    std::array<Point, 4> mapped;
    for (int i = 0; i < 4; ++i) mapped[i] = T(golden_quad().v[i]);
    const FrameEmbedding e = to_qz(canonicalize(mapped));
    CHECK(e.qz().s == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(e.qz().t == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(e.qz().v == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(e.qz().w == doctest::Approx(2.0).epsilon(1e-9));
    // the linear part is a scaled rotation
    const Eigen::Matrix2d m = e.world_from_frame.linear;
    CHECK(std::abs(m.col(0).norm() - m.col(1).norm()) < 1e-10 * m.norm());
    CHECK(std::abs(m.col(0).dot(m.col(1))) < 1e-10 * m.norm() * m.norm());
    CHECK(std::abs(std::abs(m.determinant()) - m.col(0).squaredNorm()) < 1e-9 * m.norm() * m.norm());
}

TEST_CASE("to_qz reduces type-2 inputs to the type-1 relation") {
    // Q_{s,t} with s + t = 2 is a type-2 midpoint diagonal quadrilateral
    const Quadrilateral q = canonicalize({Point(0, 0), Point(0, 1), Point(1.5, 0.5), Point(1, 0)});
    CHECK(classify_quad(q).mdq_type == MdqType::type2);
    const FrameEmbedding e = to_qz(q);
    CHECK(e.label_shift % 2 == 1);
    CHECK(mdq_param_test(e.qz()) == MdqType::type1);  // Lemma of the v = (w+1)s/t relation
}

TEST_CASE("to_qz handles quadrilaterals whose type-compatible labelings violate t > w") {
    const Quadrilateral q = canonicalize({Point(2.983298054117463, 0.43040265326973204),
                                          Point(1.9992435355849825, 1.389540031507531),
                                          Point(1.5854738177980157, 1.9611636257145248),
                                          Point(1.490206102491129, 2.1839948450477147)});
    CHECK(classify_quad(q).mdq_type == MdqType::type1);
    const FrameEmbedding e = to_qz(q);
    CHECK(mdq_param_test(e.qz()) == MdqType::type1);
    CHECK(qz_params_valid(e.qz(), false));
}

TEST_CASE("to_qz rejects trapezoids") {
    const Quadrilateral trap = canonicalize({Point(0, 0), Point(0, 1), Point(1, 2), Point(1, 0)});
    CHECK_THROWS_AS(to_qz(trap), UnreachableFrameError);
    CHECK(to_qz_or_qst(trap).kind == FrameKind::qst);
}

TEST_CASE("to_qz output always satisfies the frame conditions") {
    Rng rng(314);
    for (int trial = 0; trial < 500; ++trial) {
        const Quadrilateral q = random_convex_quad(rng);
        const QuadClassification c = classify_quad(q);
        if (c.is_parallelogram || c.is_trapezoid) continue;
        const FrameEmbedding e = to_qz(q);
        CHECK(qz_params_valid(e.qz(), false));
        if (c.mdq_type != MdqType::none) CHECK(mdq_param_test(e.qz()) == MdqType::type1);
        // round trip: frame vertices map to the relabeled world vertices
        const std::array<Point, 4> fr{Point(0, 0), Point(0, 1), Point(e.qz().s, e.qz().t),
                                      Point(e.qz().v, e.qz().w)};
        for (int j = 0; j < 4; ++j)
            CHECK((e.world_from_frame(fr[j]) - q.v[(j + e.label_shift) % 4]).norm() < 1e-9 * q.diameter());
    }
}

TEST_CASE("mdq_param_test") {
    CHECK(mdq_param_test(QstParams{2, 2}) == MdqType::type1);
    CHECK(mdq_param_test(QstParams{1.5, 0.5}) == MdqType::type2);
    CHECK(mdq_param_test(QstParams{2, 3}) == MdqType::none);
    CHECK(mdq_param_test(QzParams{8, 4, 6, 2}) == MdqType::type1);
    CHECK(mdq_param_test(QzParams{8, 4, 6.5, 2}) == MdqType::none);
    CHECK(mdq_param_test(QzParams{1, 4, 0.5, 2}) == MdqType::type2);  // (t-2)v = (w-1)s
}

TEST_CASE("geometric classification agrees with the parameter criteria") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const Quadrilateral q = random_convex_quad(rng);
        const QuadClassification c = classify_quad(q);
        if (c.is_parallelogram) continue;
        const QzParams raw = raw_qz_embedding(q);  // shift 0 keeps the labeling
        CHECK(c.mdq_type == mdq_param_test(raw));
    }
}

TEST_CASE("parallelogram frame") {
    const Quadrilateral sq = canonicalize({Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)});
    const FrameEmbedding e = to_parallelogram_frame(sq);
    const auto& p = e.parallelogram();
    CHECK(p.l > 0);
    CHECK(p.k > 0);
    CHECK(std::abs(p.d) < p.l);
    // frame vertices map back to the relabeled world vertices
    const auto fv = p.vertices();
    for (int j = 0; j < 4; ++j)
        CHECK((e.world_from_frame(fv[j]) - sq.v[(j + e.label_shift) % 4]).norm() < 1e-12);

    // sheared parallelogram where the canonical labeling needs the relabeling
    const Quadrilateral sheared = canonicalize({Point(0, 0), Point(2, 1), Point(3, 1), Point(1, 0)});
    const FrameEmbedding e2 = to_parallelogram_frame(sheared);
    CHECK(std::abs(e2.parallelogram().d) < e2.parallelogram().l);
    const auto fv2 = e2.parallelogram().vertices();
    for (int j = 0; j < 4; ++j)
        CHECK((e2.world_from_frame(fv2[j]) - sheared.v[(j + e2.label_shift) % 4]).norm() < 1e-12);
}
