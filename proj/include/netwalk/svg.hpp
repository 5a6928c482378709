#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "netwalk/model.hpp"
#include "netwalk/walks.hpp"

namespace netwalk {

struct ExperimentResult;

/// Parsed view of a CSV result bundle; the unit every figure is drawn from.
struct PlotBundle {
    struct Curve {
        Model model;
        std::uint32_t n;
        double k;
        WalkKind dynamics;
        std::vector<double> steps, mean, std;
    };
    struct Features {
        Model model;
        std::uint32_t n;
        double k;
        WalkKind dynamics;
        std::vector<double> values;
    };
    struct PcaPoint {
        Model model;
        std::uint32_t n;
        double k;
        WalkKind dynamics;
        double pc1, pc2;
    };
    std::vector<Curve> curves;
    std::vector<Features> features;
    std::vector<PcaPoint> pca_points;
    std::vector<double> variance_ratio;
    std::vector<std::pair<int, double>> profile1, profile2;
};

/// Reads curves/features/pca/variance/profiles CSVs from dir. A missing file
/// is a usage error.
PlotBundle load_plot_bundle(const std::string& dir);

PlotBundle plot_bundle_from_result(const ExperimentResult& result);

/// Writes curves.svg, rates.svg, pca.svg, profiles.svg and
/// curves_normalized.svg into out_dir. Curve grids show the largest n in the
/// bundle, row per model and column per average degree, mean line with a
/// +-1 std band. The scatter encodes dynamics as color and model as glyph.
void emit_plots(const PlotBundle& bundle, const std::string& out_dir);

} // namespace netwalk
