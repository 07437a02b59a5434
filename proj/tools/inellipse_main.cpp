// inellipse: inscribed-ellipse toolkit for convex quadrilaterals.
// JSON in, JSON/SVG out. Exit codes: 0 success, 1 verification failure,
// 2 input error, 3 parameter error, 4 I/O error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "inellipse/json_io.hpp"
#include "inellipse/render.hpp"

namespace {

using namespace inellipse;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json base_document(const QuadDocument& doc) {
    ordered_json j;
    if (doc.label) j["label"] = *doc.label;
    j["vertices"] = quad_json(doc.quad);
    j["classification"] = classification_json(classify_quad(doc.quad));
    return j;
}

FamilyParam family_param(const std::optional<double>& h, const std::optional<double>& q,
                         const std::optional<double>& v) {
    const int given = int(h.has_value()) + int(q.has_value()) + int(v.has_value());
    if (given != 1) throw InputError("exactly one of --h, --q, --v is required");
    if (h) return FamilyParam::of_h(*h);
    if (q) return FamilyParam::of_q(*q);
    return FamilyParam::of_v(*v);
}

int run(int argc, char** argv) {
    CLI::App app{"inscribed ellipses in convex quadrilaterals"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // frees -h/--h for the family parameter

    std::string input_path, out_path;
    std::optional<double> opt_h, opt_q, opt_v;
    bool want_min_ecc = false;
    bool random_mode = false;
    int samples = 1000;
    std::uint64_t seed = 42;
    double margin = 0.05;
    std::string checks_csv;

    auto* classify = app.add_subcommand("classify", "classify a quadrilateral");
    classify->add_option("input", input_path, "QuadDocument JSON path")->required();

    auto* ellipse = app.add_subcommand("ellipse", "inscribed ellipse for a family parameter");
    ellipse->set_help_flag("--help");
    ellipse->add_option("input", input_path)->required();
    ellipse->add_option("--h", opt_h, "center abscissa in the canonical frame");
    ellipse->add_option("--q", opt_q, "tangency parameter in (0,1)");
    ellipse->add_option("--v", opt_v, "parallelogram family parameter in (-1,1)");

    auto* minecc = app.add_subcommand("min-ecc", "minimal-eccentricity inscribed ellipse");
    minecc->add_option("input", input_path)->required();

    auto* verify = app.add_subcommand("verify", "run theorem checks");
    verify->add_option("input", input_path, "QuadDocument JSON path");
    verify->add_flag("--random", random_mode, "randomized batch instead of a single quad");
    verify->add_option("--samples", samples, "trials per check");
    verify->add_option("--seed", seed, "batch seed");
    verify->add_option("--margin", margin, "parameter margin for negative assertions");
    verify->add_option("--checks", checks_csv, "comma-separated check ids");

    auto* render = app.add_subcommand("render", "render an SVG figure");
    render->set_help_flag("--help");
    render->add_option("input", input_path)->required();
    render->add_option("--h", opt_h);
    render->add_option("--q", opt_q);
    render->add_option("--v", opt_v);
    render->add_flag("--min-ecc", want_min_ecc, "draw the minimal-eccentricity ellipse");
    render->add_option("--out", out_path, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    if (const char* tol = std::getenv("INELLIPSE_TOL")) {
        char* end = nullptr;
        const double val = std::strtod(tol, &end);
        if (end == tol || !(val > 0)) throw InputError("INELLIPSE_TOL must be a positive decimal");
        tolerances().residual = val;
    }

    if (classify->parsed()) {
        const QuadDocument doc = parse_quad_document(read_file(input_path));
        std::cout << dump_json17(base_document(doc));
        return 0;
    }

    if (ellipse->parsed()) {
        const QuadDocument doc = parse_quad_document(read_file(input_path));
        const auto rep = inscribed_ellipse(doc.quad, family_param(opt_h, opt_q, opt_v));
        ordered_json j = base_document(doc);
        j["ellipse"] = ellipse_json(rep);
        std::cout << dump_json17(j);
        return 0;
    }

    if (minecc->parsed()) {
        const QuadDocument doc = parse_quad_document(read_file(input_path));
        const MinEccResult res = min_ecc_ellipse(doc.quad);
        ordered_json j = base_document(doc);
        j["min_ecc"] = min_ecc_json(res);
        std::cout << dump_json17(j);
        return 0;
    }

    if (verify->parsed()) {
        std::vector<std::string> check_ids;
        if (!checks_csv.empty()) {
            std::stringstream ss(checks_csv);
            std::string item;
            while (std::getline(ss, item, ',')) check_ids.push_back(item);
        }
        std::vector<CheckReport> reports;
        ordered_json j;
        if (random_mode) {
            BatchConfig cfg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.margin = margin;
            cfg.checks = check_ids;
            reports = run_batch(cfg);
            j["config"] = {{"samples", samples}, {"seed", seed}, {"margin", margin}};
        } else {
            if (input_path.empty()) throw InvalidConfigError("verify needs an input path or --random");
            const QuadDocument doc = parse_quad_document(read_file(input_path));
            j = base_document(doc);
            reports = [&] {
                std::vector<CheckReport> out;
                const auto& ids = check_ids.empty() ? all_check_ids() : check_ids;
                const QuadClassification cls = classify_quad(doc.quad);
                const bool mdq = cls.mdq_type != MdqType::none;
                for (const auto& id : ids) {
                    if (id == "t3") {
                        if (mdq) {
                            out.push_back(check_t3(doc.quad));
                        } else {
                            CheckReport cr;
                            cr.check = id;
                            cr.pass = true;
                            cr.notes = "not applicable: quadrilateral is not a midpoint diagonal quadrilateral";
                            out.push_back(cr);
                        }
                        continue;
                    }
                    if (id != "newton" && id != "t1" && id != "t2")
                        throw InvalidConfigError("check '" + id + "' requires --random mode");
                    // sample the family at a deterministic grid of parameters
                    CheckReport agg;
                    agg.check = id;
                    agg.pass = true;
                    for (int i = 1; i <= 9 && agg.pass; ++i) {
                        InscribedEllipseReport rep;
                        if (cls.is_parallelogram) {
                            rep = inscribed_ellipse(doc.quad, FamilyParam::of_v(-0.9 + 1.8 * i / 10.0));
                        } else {
                            const FrameEmbedding frame = to_qz_or_qst(doc.quad);
                            const auto iv = frame.kind == FrameKind::qz ? frame.qz().interval()
                                                                        : frame.qst().interval();
                            const double h = iv.first + (iv.second - iv.first) * i / 10.0;
                            rep = inscribed_ellipse(doc.quad, frame, FamilyParam::of_h(h));
                        }
                        const CheckReport sub = id == "newton" ? check_newton(rep)
                                                : id == "t1"   ? check_t1(rep)
                                                               : check_t2(rep);
                        agg.pass = sub.pass;
                        agg.residuals = sub.residuals;
                        agg.witness = sub.witness;
                        agg.notes = sub.notes;
                    }
                    out.push_back(agg);
                }
                return out;
            }();
        }
        ordered_json arr = ordered_json::array();
        bool all_pass = true;
        for (const auto& r : reports) {
            arr.push_back(check_report_json(r));
            all_pass = all_pass && r.pass;
        }
        j["checks"] = arr;
        j["status"] = all_pass ? "pass" : "fail";
        std::cout << dump_json17(j);
        return all_pass ? 0 : 1;
    }

    if (render->parsed()) {
        const QuadDocument doc = parse_quad_document(read_file(input_path));
        RenderOptions opts;
        opts.quad = doc.quad;
        if (opt_h || opt_q || opt_v)
            opts.ellipse = inscribed_ellipse(doc.quad, family_param(opt_h, opt_q, opt_v));
        if (want_min_ecc) opts.min_ecc = min_ecc_ellipse(doc.quad);
        const std::string svg = render_svg(opts);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + out_path);
        out << svg;
        if (!out) throw IoError("error writing " + out_path);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const inellipse::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 3;
    } catch (const inellipse::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const inellipse::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
