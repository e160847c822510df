#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pixrec/geometry.hpp"
#include "pixrec/invariants.hpp"
#include "pixrec/profiles.hpp"

namespace pixrec {

struct SweepConfig {
    PLScene scene;
    std::vector<Rational> epsilons;  // strictly decreasing
    SpreadRule spread;
    long subdivision = 4;
    long subdivisionCap = 64;

    void validate() const;
};

/// Truth invariants of a PL scene.
struct SceneTruth {
    long chi = 0, beta0 = 0, beta1 = 0;
    ShapeMetrics metrics;
};
SceneTruth scene_truth(const PLScene& scene);

struct SweepRow {
    Rational epsilon{1};
    long m = 0;
    long sigma = 0;
    long noiseIntervals = 0;
    long chiTruth = 0, beta0Truth = 0, beta1Truth = 0;
    long chiPixel = 0, beta0Pixel = 0, beta1Pixel = 0;
    long chiReeb = 0, chiRaster = 0, beta0Rec = 0, beta1Rec = 0;
    double areaTruth = 0, areaRec = 0;
    double perimeterTruth = 0, perimeterRec = 0;
    double curvatureTruth = 0, curvatureRec = 0;
    long warnings = 0;
    double millis = 0;
    std::string error;  // nonempty when this row failed

    bool topology_matches() const {
        return error.empty() && chiReeb == chiTruth && beta0Rec == beta0Truth && beta1Rec == beta1Truth;
    }
};

/// Reconstruct at every epsilon and compare against the truth. A failing
/// row records its error and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// One row without the sweep wrapper.
SweepRow sweep_row(const PLScene& scene, const SceneTruth& truth, const Rational& eps, const SpreadRule& spread,
                   long subdivision, long subdivisionCap);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Index of the first row from which every later row matches the truth
/// topology, or nullopt if the last row does not match.
std::optional<std::size_t> topology_threshold(const std::vector<SweepRow>& rows);

}  // namespace pixrec
