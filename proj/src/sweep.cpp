#include "pixrec/sweep.hpp"

#include <chrono>
#include <ostream>

#include "pixrec/error.hpp"
#include "pixrec/reconstruction.hpp"

namespace pixrec {

void SweepConfig::validate() const {
    if (epsilons.empty()) throw PreconditionError("sweep: no epsilon values");
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        if (epsilons[k].sign() <= 0) throw PreconditionError("sweep: epsilon must be positive");
        if (k > 0 && !(epsilons[k] < epsilons[k - 1])) throw PreconditionError("sweep: epsilons must strictly decrease");
    }
    if (spread.kind == SpreadRule::Kind::MatrixPower && !(Rational(1, 2) < spread.r && spread.r < Rational(1)))
        throw PreconditionError("sweep: matrix-power spread needs 1/2 < r < 1");
}

SceneTruth scene_truth(const PLScene& scene) {
    SceneTruth t;
    t.chi = scene_euler(scene);
    t.beta0 = scene_components(scene);
    t.beta1 = t.beta0 - t.chi;
    t.metrics = shape_metrics(scene_trapezoids(scene));
    return t;
}

SweepRow sweep_row(const PLScene& scene, const SceneTruth& truth, const Rational& eps, const SpreadRule& spread,
                   long subdivision, long subdivisionCap) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.epsilon = eps;
    row.chiTruth = truth.chi;
    row.beta0Truth = truth.beta0;
    row.beta1Truth = truth.beta1;
    row.areaTruth = truth.metrics.area.to_double();
    row.perimeterTruth = truth.metrics.perimeter;
    row.curvatureTruth = truth.metrics.totalCurvature;
    try {
        const auto pix = pixelate_scene(scene, eps);
        const auto cs = cubical_homology(pix);
        row.chiPixel = cs.chi;
        row.beta0Pixel = cs.beta0;
        row.beta1Pixel = cs.beta1;
        const auto mx = as_matrix(pix);
        row.m = mx.m;
        row.sigma = spread.sigma(eps, mx.m);
        const auto rec = reconstruct_with_sigma(mx, row.sigma);
        row.noiseIntervals = static_cast<long>(rec.partition.noise.size());
        row.warnings = static_cast<long>(rec.graph.warnings.size());
        row.chiReeb = euler_reeb(rec.graph);
        row.beta0Rec = reeb_components(rec.graph);
        row.beta1Rec = row.beta0Rec - row.chiReeb;
        row.chiRaster = euler_raster_oracle(rec.shape, subdivision, subdivisionCap).chi;
        const auto sm = shape_metrics(rec.shape.trapezoids);
        row.areaRec = sm.area.to_double();
        row.perimeterRec = sm.perimeter;
        row.curvatureRec = sm.totalCurvature;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto truth = scene_truth(cfg.scene);
    std::vector<SweepRow> rows;
    for (const auto& eps : cfg.epsilons)
        rows.push_back(sweep_row(cfg.scene, truth, eps, cfg.spread, cfg.subdivision, cfg.subdivisionCap));
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "epsilon,m,sigma,noise_intervals,chi_truth,beta0_truth,beta1_truth,chi_pixel,beta0_pixel,beta1_pixel,"
          "chi_reeb,chi_raster,beta0_rec,beta1_rec,area_truth,area_rec,perimeter_truth,perimeter_rec,"
          "curvature_truth,curvature_rec,warnings,error\n";
    for (const auto& r : rows) {
        os << r.epsilon.str() << ',' << r.m << ',' << r.sigma << ',' << r.noiseIntervals << ',' << r.chiTruth << ','
           << r.beta0Truth << ',' << r.beta1Truth << ',' << r.chiPixel << ',' << r.beta0Pixel << ',' << r.beta1Pixel
           << ',' << r.chiReeb << ',' << r.chiRaster << ',' << r.beta0Rec << ',' << r.beta1Rec << ',' << r.areaTruth
           << ',' << r.areaRec << ',' << r.perimeterTruth << ',' << r.perimeterRec << ',' << r.curvatureTruth << ','
           << r.curvatureRec << ',' << r.warnings << ',';
        std::string err = r.error;
        for (auto& c : err)
            if (c == ',' || c == '\n') c = ';';
        os << err << '\n';
    }
}

std::optional<std::size_t> topology_threshold(const std::vector<SweepRow>& rows) {
    if (rows.empty() || !rows.back().topology_matches()) return std::nullopt;
    std::size_t k = rows.size() - 1;
    while (k > 0 && rows[k - 1].topology_matches()) --k;
    return k;
}

}  // namespace pixrec
