#include "pixrec/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "pixrec/invariants.hpp"

namespace pixrec {

namespace {

struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool set = false;
    void add(double x, double y) {
        if (!set) {
            x0 = x1 = x;
            y0 = y1 = y;
            set = true;
            return;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string render_svg(const SvgLayers& layers, int widthPx) {
    Box box;
    if (layers.scene)
        for (const auto& p : layers.scene->polygons)
            for (const auto& v : p.vertices()) box.add(v.x.to_double(), v.y.to_double());
    if (layers.pixelation && !layers.pixelation->empty()) {
        const double e = layers.pixelation->epsilon().to_double();
        box.add((layers.pixelation->min_col() - 1) * e, (layers.pixelation->min_row() - 1) * e);
        box.add(layers.pixelation->max_col() * e, layers.pixelation->max_row() * e);
    }
    if (layers.shape)
        for (const auto& t : layers.shape->trapezoids) {
            box.add(t.xL.to_double(), t.yBL.to_double());
            box.add(t.xR.to_double(), t.yTR.to_double());
            box.add(t.xL.to_double(), t.yTL.to_double());
            box.add(t.xR.to_double(), t.yBR.to_double());
        }
    if (!box.set) box.add(0, 0), box.add(1, 1);
    double w = box.x1 - box.x0, h = box.y1 - box.y0;
    const double pad = 0.02 * std::max({w, h, 1e-9});
    box.x0 -= pad, box.y0 -= pad, box.x1 += pad, box.y1 += pad;
    w = box.x1 - box.x0, h = box.y1 - box.y0;
    const int heightPx = std::max(1, static_cast<int>(widthPx * h / w + 0.5));
    const double stroke = w / widthPx;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << widthPx << "\" height=\"" << heightPx
       << "\" viewBox=\"" << num(box.x0) << ' ' << num(-box.y1) << ' ' << num(w) << ' ' << num(h) << "\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    if (layers.pixelation) {
        const double e = layers.pixelation->epsilon().to_double();
        os << "<g id=\"pixelation\" fill=\"#c8c8c8\" stroke=\"none\">\n";
        for (const auto& [i, runs] : layers.pixelation->columns())
            for (const auto& r : runs)
                os << "<rect x=\"" << num((i - 1) * e) << "\" y=\"" << num((r.lo - 1) * e) << "\" width=\"" << num(e)
                   << "\" height=\"" << num((r.hi - r.lo + 1) * e) << "\"/>\n";
        os << "</g>\n";
    }
    if (layers.shape) {
        os << "<g id=\"reconstruction\" stroke=\"#1f5fbf\" stroke-width=\"" << num(stroke) << "\">\n";
        for (std::size_t k = 0; k < layers.shape->trapezoids.size(); ++k) {
            const auto& t = layers.shape->trapezoids[k];
            const bool noise = layers.shape->tags[k].kind == TrapezoidTag::Kind::Noise;
            os << "<polygon fill=\"" << (noise ? "#f2a541" : "#7fb2ff") << "\" fill-opacity=\"0.6\" points=\""
               << num(t.xL.to_double()) << ',' << num(t.yBL.to_double()) << ' ' << num(t.xR.to_double()) << ','
               << num(t.yBR.to_double()) << ' ' << num(t.xR.to_double()) << ',' << num(t.yTR.to_double()) << ' '
               << num(t.xL.to_double()) << ',' << num(t.yTL.to_double()) << "\"/>\n";
        }
        os << "</g>\n";
    }
    if (layers.scene) {
        os << "<g id=\"scene\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << num(2 * stroke) << "\">\n";
        for (const auto& p : layers.scene->polygons) {
            os << "<polygon points=\"";
            bool first = true;
            for (const auto& v : p.vertices()) {
                if (!first) os << ' ';
                first = false;
                os << num(v.x.to_double()) << ',' << num(v.y.to_double());
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string polytrapezoid_json(const Reconstruction& rec) {
    nlohmann::json doc;
    doc["epsilon"] = rec.shape.epsilon.str();
    doc["m"] = rec.m;
    doc["sigma"] = rec.partition.sigma;
    auto ivs = [](const std::vector<ColumnInterval>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& [p, q] : v) a.push_back({p, q});
        return a;
    };
    doc["noise_intervals"] = ivs(rec.partition.noise);
    doc["regular_intervals"] = ivs(rec.partition.regular);
    nlohmann::json traps = nlohmann::json::array();
    for (std::size_t k = 0; k < rec.shape.trapezoids.size(); ++k) {
        const auto& t = rec.shape.trapezoids[k];
        const auto& tag = rec.shape.tags[k];
        traps.push_back({{"xL", t.xL.str()},
                         {"xR", t.xR.str()},
                         {"yBL", t.yBL.str()},
                         {"yTL", t.yTL.str()},
                         {"yBR", t.yBR.str()},
                         {"yTR", t.yTR.str()},
                         {"kind", tag.kind == TrapezoidTag::Kind::Noise ? "noise" : "regular"},
                         {"interval", tag.interval},
                         {"component", tag.component}});
    }
    doc["trapezoids"] = traps;
    doc["reeb"] = {{"vertices", rec.graph.vertices.size()},
                   {"edges", rec.graph.edges.size()},
                   {"incidences", rec.graph.incidences.size()},
                   {"chi", euler_reeb(rec.graph)},
                   {"beta0", reeb_components(rec.graph)},
                   {"warnings", rec.graph.warnings}};
    return doc.dump(1) + "\n";
}

}  // namespace pixrec
