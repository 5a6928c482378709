#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netwalk/generators.hpp"
#include "netwalk/model.hpp"
#include "netwalk/walks.hpp"

namespace netwalk {

struct ExperimentConfig {
    std::vector<Model> models{Model::ER, Model::BA, Model::WAX, Model::LFR};
    std::vector<std::uint32_t> ns{500, 1000, 5000};
    std::vector<double> ks{4, 6, 8, 10};
    std::vector<WalkKind> dynamics{WalkKind::RW, WalkKind::RWD, WalkKind::RWID, WalkKind::TSAW};
    int steps = 5000;
    int networks_per_config = 5;
    int walks_per_network = 50;
    std::uint64_t master_seed = 1;
    double waxman_beta = 0.1;
    LfrParams lfr;
    std::string output_dir = "out";
    int thin = 1; // write every thin-th step to curves.csv

    void validate() const; // throws UsageError

    /// Canonical key=value rendering; also what the config hash is taken over.
    std::string serialize() const;
    std::uint64_t hash() const;
};

/// Flat key=value format, comma-separated lists, '#' comments. Unknown keys are
/// rejected so typos fail loudly.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

} // namespace netwalk
