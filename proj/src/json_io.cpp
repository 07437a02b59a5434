#include "inellipse/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace inellipse {

namespace {

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

ordered_json point_json(const Point& p) { return ordered_json::array({p.x(), p.y()}); }

ordered_json chord_json(const ChordSlope& c) {
    ordered_json j;
    if (c.vertical) {
        j["vertical"] = true;
    } else {
        j["slope"] = c.slope;
    }
    j["direction"] = ordered_json::array({c.dir.dx, c.dir.dy});
    return j;
}

const char* mdq_name(MdqType t) {
    switch (t) {
        case MdqType::none: return "none";
        case MdqType::type1: return "type1";
        case MdqType::type2: return "type2";
        case MdqType::both: return "both";
    }
    return "none";
}

// best rational approximation with bounded denominator (continued fractions)
bool approx_rational(double x, long long max_den, double tol, long long& num, long long& den) {
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double val = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(val);
        if (fl > 9e17 || fl < -9e17) return false;
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = val - fl;
        if (std::abs(static_cast<double>(p1) / q1 - x) <= tol) break;
        if (frac < 1e-15) break;
        val = 1.0 / frac;
    }
    if (q1 == 0) return false;
    num = p1;
    den = q1;
    return std::abs(static_cast<double>(num) / den - x) <= tol;
}

}  // namespace

std::optional<std::array<long long, 6>> integer_form(const Conic& c) {
    const std::array<double, 6> coeffs{c.A, c.B, c.C, c.D, c.E, c.F};
    const double maxc = c.max_abs_coeff();
    if (!(maxc > 0)) return std::nullopt;
    int ref = 0;
    for (int i = 1; i < 6; ++i)
        if (std::abs(coeffs[i]) > std::abs(coeffs[ref])) ref = i;

    long long lcm = 1;
    for (int i = 0; i < 6; ++i) {
        const double r = coeffs[i] / coeffs[ref];
        if (std::abs(r) * maxc <= 1e-9 * maxc) continue;  // treat as zero
        long long num = 0, den = 1;
        if (!approx_rational(r, 1000000, 1e-9, num, den)) return std::nullopt;
        lcm = lcm / std::gcd(lcm, den) * den;
        if (lcm > 1000000) return std::nullopt;
    }
    std::array<long long, 6> ints{};
    for (int i = 0; i < 6; ++i) ints[i] = std::llround(coeffs[i] / coeffs[ref] * static_cast<double>(lcm));
    // verify the reconstruction against the stored coefficients
    const double unit = coeffs[ref] / static_cast<double>(lcm);
    for (int i = 0; i < 6; ++i)
        if (std::abs(coeffs[i] - ints[i] * unit) > 1e-9 * maxc) return std::nullopt;
    long long g = 0;
    for (long long v : ints) g = std::gcd(g, std::llabs(v));
    if (g > 1)
        for (auto& v : ints) v /= g;
    for (long long v : ints) {
        if (v != 0) {
            if (v < 0)
                for (auto& x : ints) x = -x;
            break;
        }
    }
    return ints;
}

QuadDocument parse_quad_document(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices")) throw InputError("expected an object with a 'vertices' key");
    const auto& verts = j["vertices"];
    if (!verts.is_array() || verts.size() != 4) throw InputError("'vertices' must be an array of 4 [x,y] pairs");
    std::array<Point, 4> pts;
    for (int i = 0; i < 4; ++i) {
        const auto& v = verts[i];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw InputError("'vertices' must be an array of 4 [x,y] pairs");
        pts[i] = Point(v[0].get<double>(), v[1].get<double>());
    }
    QuadDocument doc;
    doc.quad = canonicalize(pts);
    if (j.contains("label") && j["label"].is_string()) doc.label = j["label"].get<std::string>();
    return doc;
}

ordered_json quad_json(const Quadrilateral& q) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : q.v) arr.push_back(point_json(p));
    return arr;
}

ordered_json classification_json(const QuadClassification& c) {
    ordered_json j;
    j["is_parallelogram"] = c.is_parallelogram;
    j["mdq_type"] = mdq_name(c.mdq_type);
    j["is_tangential"] = c.is_tangential;
    j["is_orthodiagonal"] = c.is_orthodiagonal;
    j["is_trapezoid"] = c.is_trapezoid;
    j["is_kite"] = c.is_kite;
    j["diagonal_intersection"] = point_json(c.diagonal_intersection);
    j["diagonal_midpoints"] = ordered_json::array({point_json(c.m1), point_json(c.m2)});
    return j;
}

ordered_json ellipse_json(const InscribedEllipseReport& rep) {
    ordered_json j;
    const Conic& c = rep.conic;
    j["conic"] = {{"A", c.A}, {"B", c.B}, {"C", c.C}, {"D", c.D}, {"E", c.E}, {"F", c.F}};
    if (auto ints = integer_form(c)) {
        ordered_json arr = ordered_json::array();
        for (long long v : *ints) arr.push_back(v);
        j["conic_integer_proportional"] = arr;
    }
    j["center"] = point_json(rep.center);
    j["semi_major"] = rep.info.a;
    j["semi_minor"] = rep.info.b;
    j["ratio_sq"] = rep.info.ratio_sq;
    j["eccentricity"] = rep.info.eccentricity;
    switch (rep.frame.kind) {
        case FrameKind::qz: {
            j["frame"] = "qz";
            const auto& p = rep.frame.qz();
            j["frame_params"] = {{"s", p.s}, {"t", p.t}, {"v", p.v}, {"w", p.w}};
            j["h"] = rep.h;
            break;
        }
        case FrameKind::qst: {
            j["frame"] = "qst";
            const auto& p = rep.frame.qst();
            j["frame_params"] = {{"s", p.s}, {"t", p.t}};
            j["h"] = rep.h;
            break;
        }
        case FrameKind::parallelogram: {
            j["frame"] = "parallelogram";
            const auto& p = rep.frame.parallelogram();
            j["frame_params"] = {{"l", p.l}, {"k", p.k}, {"d", p.d}};
            break;
        }
    }
    if (rep.q) j["q"] = *rep.q;
    if (rep.v_par) j["v"] = *rep.v_par;
    ordered_json tang = ordered_json::array();
    for (const auto& p : rep.tangency.q) tang.push_back(point_json(p));
    j["tangency_points"] = tang;
    j["chords"] = {{"q1q2", chord_json(rep.tangency.chord_q1q2)},
                   {"q2q3", chord_json(rep.tangency.chord_q2q3)},
                   {"q3q4", chord_json(rep.tangency.chord_q3q4)},
                   {"q1q4", chord_json(rep.tangency.chord_q1q4)}};
    return j;
}

ordered_json min_ecc_json(const MinEccResult& res) {
    ordered_json j;
    j["h_plus"] = res.h_plus;
    j["eccentricity"] = res.eccentricity;
    j["is_circle"] = res.is_circle;
    switch (res.mode) {
        case MinEccMode::closed_form: j["mode"] = "closed_form"; break;
        case MinEccMode::numeric_parallelogram: j["mode"] = "numeric_parallelogram"; break;
        case MinEccMode::numeric:
            j["mode"] = "numeric";
            j["warning"] = "non-MDQ input: uniqueness of the minimizer is assumed, not verified";
            break;
    }
    ordered_json diams = ordered_json::array();
    for (const auto& [p, q] : res.equal_diameters)
        diams.push_back(ordered_json::array({point_json(p), point_json(q)}));
    j["equal_diameters"] = diams;
    j["diagonal_directions"] =
        ordered_json::array({ordered_json::array({res.diagonal_directions[0].dx, res.diagonal_directions[0].dy}),
                             ordered_json::array({res.diagonal_directions[1].dx, res.diagonal_directions[1].dy})});
    j["ellipse"] = ellipse_json(res.ellipse);
    return j;
}

ordered_json check_report_json(const CheckReport& cr) {
    ordered_json j;
    j["check"] = cr.check;
    j["status"] = cr.pass ? "pass" : "fail";
    ordered_json res = ordered_json::array();
    for (const auto& r : cr.residuals)
        res.push_back(ordered_json{{"label", r.label}, {"value", r.value}, {"tolerance", r.tolerance}});
    j["residuals"] = res;
    if (!cr.witness.empty()) j["witness"] = cr.witness;
    if (!cr.notes.empty()) j["notes"] = cr.notes;
    return j;
}

namespace {

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad1 + ordered_json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out += pad1;
                dump_rec(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += num17(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json17(const ordered_json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace inellipse
