#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netwalk/config.hpp"
#include "netwalk/coverage.hpp"
#include "netwalk/pca.hpp"

namespace netwalk {

struct NetworkInfo {
    std::uint64_t seed = 0;
    double realized_k = 0.0; // before giant-component reduction
    std::uint32_t full_n = 0;
    std::uint32_t giant_n = 0;
};

/// One (model, n, target_k) setup; its networks are shared by every dynamics.
struct SetupResult {
    Model model = Model::ER;
    std::uint32_t n = 0;
    double target_k = 0.0;
    bool ok = false;
    std::string error;
    std::vector<NetworkInfo> networks;
};

/// One (model, n, target_k, dynamics) configuration cell.
struct CellResult {
    CurveMeta meta;
    bool ok = false;
    std::string error;
    EnsembleCurve curve;
    std::vector<double> features;
};

struct PcaBlock {
    std::uint32_t n = 0;
    PcaResult pca;
    std::vector<CurveMeta> row_meta; // aligned with pca.projections
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<SetupResult> setups;
    std::vector<CellResult> cells; // enumeration order: n, model, k, dynamics
    std::vector<PcaBlock> pca_blocks;
    double wall_seconds = 0.0;
};

/// Runs the full pipeline: generate networks per setup, walk ensembles per
/// cell, aggregate curves, extract rate features, fit one PCA per n. The
/// result is a pure function of the config; worker count only affects wall
/// time. Generation failures are retried on 5 derived seeds, then recorded on
/// the affected cells without aborting the run.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers);

/// Writes curves.csv, features.csv, pca.csv, variance.csv, profiles.csv and
/// manifest.txt into config.output_dir. CSV bytes depend only on the result;
/// the manifest additionally records wall-clock time.
void write_result_bundle(const ExperimentResult& result);

/// Walk-index sentinel used when deriving graph-generation seeds (attempt a of
/// a retry uses sentinel - a); real walk indices never reach this range.
inline constexpr std::uint64_t kGraphSeedSentinel = 0xFFFFFFFFull;

} // namespace netwalk
