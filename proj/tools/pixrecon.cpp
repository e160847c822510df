// pixelrecon: command-line front end for the pixrec library.
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pixrec/error.hpp"
#include "pixrec/farey.hpp"
#include "pixrec/invariants.hpp"
#include "pixrec/pixelation.hpp"
#include "pixrec/reconstruction.hpp"
#include "pixrec/render.hpp"
#include "pixrec/scene_io.hpp"
#include "pixrec/sweep.hpp"

namespace fs = std::filesystem;
using namespace pixrec;
using nlohmann::json;

namespace {

struct Common {
    std::string scene;
    std::string pbm;
    std::string epsilon = "1/64";
    std::string r = "2/3";
    std::string spread = "matrix";
    std::string out;
    std::string format;
    std::uint64_t seed = 1;
};

Rational parse_rational(const std::string& s, const char* what) {
    try {
        return Rational::parse(s);
    } catch (const std::exception&) {
        throw ParseError(std::string(what) + ": expected p/q, got '" + s + "'");
    }
}

// a file path, "random" (uses --seed) or a built-in scene name
PLScene resolve_scene(const Common& c) {
    if (fs::exists(c.scene)) return load_scene(c.scene);
    if (c.scene == "random") return random_scene(c.seed);
    try {
        return builtin_scene(c.scene);
    } catch (const PreconditionError&) {
        std::string names;
        for (const auto& n : builtin_scene_names()) names += " " + n;
        throw ParseError("unknown scene '" + c.scene + "' (not a file; built-ins:" + names + ")");
    }
}

PixelMatrix load_pbm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_pbm(in);
}

SpreadRule spread_of(const Common& c) {
    SpreadRule rule;
    rule.r = parse_rational(c.r, "--r");
    if (c.spread == "matrix")
        rule.kind = SpreadRule::Kind::MatrixPower;
    else if (c.spread == "epsilon")
        rule.kind = SpreadRule::Kind::EpsilonPower;
    else
        throw ParseError("--spread must be 'matrix' or 'epsilon'");
    return rule;
}

bool wants(const Common& c, const char* fmt) { return c.format.empty() || c.format == fmt; }

void write_file(const Common& c, const std::string& name, const std::string& content) {
    if (c.out.empty()) return;
    fs::create_directories(c.out);
    const auto path = fs::path(c.out) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParseError("cannot write " + path.string());
    os << content;
    std::cerr << "wrote " << path.string() << "\n";
}

json cubical_json(const CubicalSummary& cs) {
    return {{"V", cs.V}, {"E", cs.E}, {"F", cs.F}, {"chi", cs.chi}, {"beta0", cs.beta0}, {"beta1", cs.beta1}};
}

json metrics_json(const ShapeMetrics& m) {
    return {{"area", m.area.to_double()}, {"area_exact", m.area.str()}, {"perimeter", m.perimeter},
            {"total_curvature", m.totalCurvature}, {"boundary_loops", m.loops}};
}

int cmd_pixelate(const Common& c, const std::string& angle, long columns) {
    Pixelation pix(Rational(1));
    if (!angle.empty()) {
        long a, b, cc, d;
        char s1, s2, s3;
        std::istringstream is(angle);
        if (!(is >> a >> s1 >> b >> s2 >> cc >> s3 >> d) || s1 != ',' || s2 != ',' || s3 != ',')
            throw ParseError("--angle expects a,b,c,d");
        FareyPair p{a, b, cc, d};
        p.validate();
        pix = pixelate_angle(angle_of(p, columns > 0 ? columns : k1(p) + 2 * b * d));
    } else {
        if (c.scene.empty()) throw ParseError("pixelate needs --scene or --angle");
        pix = pixelate_scene(resolve_scene(c), parse_rational(c.epsilon, "--epsilon"));
    }
    const auto cs = cubical_homology(pix);
    const auto mx = as_matrix(pix);
    json summary = {{"epsilon", pix.epsilon().str()},
                    {"pixels", pix.count()},
                    {"bbox", {{"min_col", pix.min_col()}, {"max_col", pix.max_col()}, {"min_row", pix.min_row()},
                              {"max_row", pix.max_row()}}},
                    {"m", mx.m},
                    {"beta0", cs.beta0},
                    {"beta1", cs.beta1},
                    {"chi", cs.chi}};
    std::cout << summary.dump(1) << "\n";
    if (wants(c, "pbm")) {
        std::ostringstream os;
        write_pbm(os, mx);
        write_file(c, "pixelation.pbm", os.str());
    }
    if (wants(c, "svg")) write_file(c, "pixelation.svg", render_svg({nullptr, &pix, nullptr}));
    if (wants(c, "json")) write_file(c, "pixelation.json", summary.dump(1) + "\n");
    return 0;
}

struct Input {
    std::optional<PLScene> scene;
    PixelMatrix mx;
    Pixelation pix{Rational(1)};
};

Input load_input(const Common& c) {
    Input in;
    if (!c.pbm.empty() && !c.scene.empty()) throw ParseError("give either --scene or --pbm, not both");
    if (!c.pbm.empty()) {
        in.mx = load_pbm_file(c.pbm);
        in.pix = to_pixelation(in.mx);
    } else if (!c.scene.empty()) {
        in.scene = resolve_scene(c);
        in.pix = pixelate_scene(*in.scene, parse_rational(c.epsilon, "--epsilon"));
        in.mx = as_matrix(in.pix);
    } else {
        throw ParseError("needs --scene or --pbm");
    }
    return in;
}

int cmd_reconstruct(const Common& c) {
    const auto in = load_input(c);
    const auto rule = spread_of(c);
    const long sigma = rule.sigma(in.mx.epsilon, in.mx.m);
    const auto rec = reconstruct_with_sigma(in.mx, sigma);
    json summary = {{"m", rec.m},
                    {"sigma", sigma},
                    {"noise_intervals", rec.partition.noise.size()},
                    {"regular_intervals", rec.partition.regular.size()},
                    {"trapezoids", rec.shape.trapezoids.size()},
                    {"chi_reeb", euler_reeb(rec.graph)},
                    {"beta0", reeb_components(rec.graph)},
                    {"warnings", rec.graph.warnings}};
    std::cout << summary.dump(1) << "\n";
    if (wants(c, "json")) write_file(c, "reconstruction.json", polytrapezoid_json(rec));
    if (wants(c, "svg"))
        write_file(c, "reconstruction.svg", render_svg({in.scene ? &*in.scene : nullptr, &in.pix, &rec.shape}));
    return 0;
}

int cmd_invariants(const Common& c) {
    const auto in = load_input(c);
    const auto rule = spread_of(c);
    const long sigma = rule.sigma(in.mx.epsilon, in.mx.m);
    const auto rec = reconstruct_with_sigma(in.mx, sigma);
    const auto recMetrics = shape_metrics(rec.shape.trapezoids);
    const long chiReeb = euler_reeb(rec.graph);
    const auto raster = euler_raster_oracle(rec.shape);
    const auto nc = normal_cycle_measures(chiReeb, recMetrics.area, recMetrics.perimeter, recMetrics.totalCurvature);
    json doc;
    if (in.scene) {
        const auto truth = scene_truth(*in.scene);
        const bool convex = in.scene->polygons.size() == 1 && in.scene->polygons[0].vertices().size() >= 3;
        const auto tnc = normal_cycle_measures(truth.chi, truth.metrics.area, truth.metrics.perimeter,
                                               truth.metrics.totalCurvature, convex);
        doc["scene"] = {{"name", in.scene->name},
                        {"chi", truth.chi},
                        {"beta0", truth.beta0},
                        {"beta1", truth.beta1},
                        {"metrics", metrics_json(truth.metrics)},
                        {"lambda0", tnc.lambda0},
                        {"lambda1", tnc.lambda1},
                        {"nc_mass", tnc.ncMass},
                        {"nc_mass_is_estimate", tnc.ncMassIsEstimate}};
    }
    doc["pixelation"] = cubical_json(cubical_homology(in.pix));
    doc["reconstruction"] = {{"sigma", sigma},
                             {"chi_reeb", chiReeb},
                             {"chi_raster", raster.chi},
                             {"raster_subdivision", raster.subdivision},
                             {"beta0", reeb_components(rec.graph)},
                             {"beta1", reeb_components(rec.graph) - chiReeb},
                             {"metrics", metrics_json(recMetrics)},
                             {"lambda0", nc.lambda0},
                             {"lambda1", nc.lambda1},
                             {"nc_mass", nc.ncMass},
                             {"nc_mass_is_estimate", nc.ncMassIsEstimate}};
    const auto text = doc.dump(1) + "\n";
    std::cout << text;
    write_file(c, "invariants.json", text);
    return chiReeb == raster.chi ? 0 : 2;
}

std::vector<Rational> parse_list(const std::string& text, bool asGridCounts) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto v = parse_rational(tok, asGridCounts ? "--m" : "--epsilons");
        if (asGridCounts) {
            if (!v.is_integer() || v.sign() <= 0) throw ParseError("--m expects positive integers");
            out.push_back(Rational(1) / v);
        } else {
            out.push_back(v);
        }
    }
    return out;
}

int cmd_sweep(const Common& c, const std::string& ms, const std::string& epss, unsigned jobs) {
    if (c.scene.empty()) throw ParseError("sweep needs --scene");
    if (ms.empty() == epss.empty()) throw ParseError("sweep needs exactly one of --m or --epsilons");
    SweepConfig cfg;
    cfg.scene = resolve_scene(c);
    cfg.epsilons = ms.empty() ? parse_list(epss, false) : parse_list(ms, true);
    cfg.spread = spread_of(c);
    try {
        cfg.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    const auto truth = scene_truth(cfg.scene);
    // rows in parallel, collected in epsilon order
    std::vector<SweepRow> rows(cfg.epsilons.size());
    std::size_t next = 0;
    while (next < cfg.epsilons.size()) {
        std::vector<std::future<SweepRow>> batch;
        for (unsigned j = 0; j < std::max(1u, jobs) && next < cfg.epsilons.size(); ++j, ++next)
            batch.push_back(std::async(std::launch::async, [&, k = next] {
                return sweep_row(cfg.scene, truth, cfg.epsilons[k], cfg.spread, cfg.subdivision, cfg.subdivisionCap);
            }));
        for (std::size_t j = 0; j < batch.size(); ++j) rows[next - batch.size() + j] = batch[j].get();
    }
    std::ostringstream csv;
    csv << "# scene=" << cfg.scene.name << " spread=" << c.spread << " r=" << cfg.spread.r.str() << " seed=" << c.seed
        << "\n";
    write_sweep_csv(csv, rows);
    std::cout << csv.str();
    write_file(c, "sweep.csv", csv.str());
    const auto thr = topology_threshold(rows);
    auto rel = [](double a, double b) { return b != 0 ? std::abs(a / b - 1) : std::abs(a); };
    const auto& first = rows.front();
    const auto& last = rows.back();
    json wall = json::array();
    for (const auto& r : rows) wall.push_back(r.millis);
    json summary = {{"rows", rows.size()},
                    {"wall_ms", wall},
                    {"failed_rows", std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); })},
                    {"topology_threshold_row", thr ? json(*thr) : json(nullptr)},
                    {"last_area_error", rel(last.areaRec, last.areaTruth)},
                    {"last_perimeter_error", rel(last.perimeterRec, last.perimeterTruth)},
                    {"last_curvature_error", rel(last.curvatureRec, last.curvatureTruth)},
                    {"area_error_decreased", rel(last.areaRec, last.areaTruth) < rel(first.areaRec, first.areaTruth)},
                    {"perimeter_error_decreased",
                     rel(last.perimeterRec, last.perimeterTruth) < rel(first.perimeterRec, first.perimeterTruth)},
                    {"curvature_error_decreased",
                     rel(last.curvatureRec, last.curvatureTruth) < rel(first.curvatureRec, first.curvatureTruth)}};
    std::cerr << summary.dump(1) << "\n";
    write_file(c, "sweep_summary.json", summary.dump(1) + "\n");
    return 0;
}

int cmd_farey(const Common& c, long bMax, long dMax) {
    if (bMax < 1 || dMax < 1) throw ParseError("--b-max and --d-max must be >= 1");
    std::ostringstream os;
    os << "a,b,c,d,k1,sum,X-formula,oracle,agree\n";
    long disagree = 0;
    for (const auto& p : farey_neighbor_pairs(bMax, dMax)) {
        const long s = hole_count_sum(p), x = hole_count_X(p);
        const long o = hole_count_oracle(p).holes;
        const bool agree = s == x && x == o;
        if (!agree) ++disagree;
        os << p.a << ',' << p.b << ',' << p.c << ',' << p.d << ',' << k1(p) << ',' << s << ',' << x << ',' << o << ','
           << (agree ? "true" : "false") << '\n';
    }
    std::cout << os.str();
    write_file(c, "farey.csv", os.str());
    if (disagree) std::cerr << disagree << " pair(s) where the three counts disagree\n";
    return 0;
}

int cmd_scenes(const Common& c) {
    for (const auto& n : builtin_scene_names()) {
        std::cout << n << "\n";
        std::string file = n;
        for (auto& ch : file)
            if (ch == '/') ch = '_';
        write_file(c, file + ".json", scene_to_json(builtin_scene(n)) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pixelation-based shape reconstruction with topological guarantees"};
    app.require_subcommand(1);
    Common c;
    auto common = [&](CLI::App* sub, bool input) {
        if (input) {
            sub->add_option("--scene", c.scene, "scene JSON file, built-in name, or 'random'");
            sub->add_option("--pbm", c.pbm, "PBM pixelation written by 'pixelate'");
            sub->add_option("--epsilon", c.epsilon, "pixel size p/q")->capture_default_str();
        }
        sub->add_option("--out", c.out, "output directory");
        sub->add_option("--format", c.format, "restrict artifacts to one format")
            ->check(CLI::IsMember({"svg", "json", "csv", "pbm"}));
        sub->add_option("--seed", c.seed, "seed for --scene random")->capture_default_str();
    };
    auto spread = [&](CLI::App* sub) {
        sub->add_option("--r", c.r, "spread exponent p/q")->capture_default_str();
        sub->add_option("--spread", c.spread, "spread rule: matrix (sigma=floor(m^r)) or epsilon")
            ->capture_default_str();
    };

    std::string angle;
    long columns = 0;
    auto* pix = app.add_subcommand("pixelate", "pixelate a scene or a Farey angle");
    common(pix, true);
    pix->add_option("--angle", angle, "Farey pair a,b,c,d (angle between slopes a/b and c/d, eps = 1)");
    pix->add_option("--columns", columns, "columns of the truncated angle");

    auto* rec = app.add_subcommand("reconstruct", "reconstruct a polytrapezoid from a pixelation");
    common(rec, true);
    spread(rec);

    auto* inv = app.add_subcommand("invariants", "topological and metric invariants");
    common(inv, true);
    spread(inv);

    std::string ms, epss;
    unsigned jobs = 4;
    auto* sw = app.add_subcommand("sweep", "reconstruct over a list of resolutions");
    common(sw, true);
    spread(sw);
    sw->add_option("--m", ms, "comma-separated grid counts (epsilon = 1/m)");
    sw->add_option("--epsilons", epss, "comma-separated decreasing epsilons p/q");
    sw->add_option("--jobs", jobs, "parallel rows")->capture_default_str();

    long bMax = 12, dMax = 12;
    auto* fa = app.add_subcommand("farey", "hole counts of Farey-neighbour angles");
    common(fa, false);
    fa->add_option("--b-max", bMax, "largest denominator b of a/b")->capture_default_str();
    fa->add_option("--d-max", dMax, "largest denominator d of c/d")->capture_default_str();

    auto* sc = app.add_subcommand("scenes", "list built-in scenes; with --out, export them as JSON");
    common(sc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*pix) return cmd_pixelate(c, angle, columns);
        if (*rec) return cmd_reconstruct(c);
        if (*inv) return cmd_invariants(c);
        if (*sw) return cmd_sweep(c, ms, epss, jobs);
        if (*fa) return cmd_farey(c, bMax, dMax);
        if (*sc) return cmd_scenes(c);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
