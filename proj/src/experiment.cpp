#include "netwalk/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "netwalk/csv.hpp"
#include "netwalk/errors.hpp"
#include "netwalk/generators.hpp"
#include "netwalk/parallel.hpp"
#include "netwalk/rng.hpp"

namespace netwalk {

namespace {

struct PreparedNetwork {
    Graph giant;
    NetworkInfo info;
};

PreparedNetwork prepare_network(const GeneratorSpec& spec, std::uint64_t master_seed,
                                std::uint64_t setup_index, std::uint64_t network_index) {
    std::string last_error = "no attempt made";
    for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
        const std::uint64_t seed =
            derive_seed(master_seed, setup_index, network_index, kGraphSeedSentinel - attempt);
        try {
            Rng rng(seed);
            Graph full = generate(spec, rng);
            PreparedNetwork out;
            out.info.seed = seed;
            out.info.full_n = full.node_count();
            out.info.realized_k = full.average_degree();
            out.giant = giant_component(full).graph;
            out.info.giant_n = out.giant.node_count();
            return out;
        } catch (const GenerationError& e) {
            last_error = e.what();
        }
    }
    throw GenerationError(std::string(to_string(spec.model)) +
                          " generation failed after 5 seeds: " + last_error);
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    ExperimentResult result;
    result.config = config;

    const int nets = config.networks_per_config;
    const int walks = config.walks_per_network;
    const std::size_t walks_per_cell = static_cast<std::size_t>(nets) * walks;

    std::uint64_t setup_index = 0;
    std::uint64_t cell_index = 0;
    for (std::uint32_t n : config.ns) {
        for (Model model : config.models) {
            for (double k : config.ks) {
                GeneratorSpec spec;
                spec.model = model;
                spec.n = n;
                spec.target_k = k;
                spec.waxman_beta = config.waxman_beta;
                spec.lfr = config.lfr;

                SetupResult setup;
                setup.model = model;
                setup.n = n;
                setup.target_k = k;
                std::vector<PreparedNetwork> networks(nets);
                try {
                    parallel_for(static_cast<std::size_t>(nets), workers, [&](std::size_t j) {
                        networks[j] = prepare_network(spec, config.master_seed, setup_index, j);
                    });
                    setup.ok = true;
                    for (const auto& net : networks) setup.networks.push_back(net.info);
                } catch (const GenerationError& e) {
                    setup.ok = false;
                    setup.error = e.what();
                }
                result.setups.push_back(setup);

                for (WalkKind dyn_kind : config.dynamics) {
                    CellResult cell;
                    cell.meta = CurveMeta{model, n,     k,    dyn_kind,
                                          nets,  walks, config.master_seed};
                    if (!setup.ok) {
                        cell.error = setup.error;
                        result.cells.push_back(std::move(cell));
                        ++cell_index;
                        continue;
                    }

                    // static weight tables, shared read-only across walks
                    std::vector<TransitionTable> tables(nets);
                    if (dyn_kind == WalkKind::RWD || dyn_kind == WalkKind::RWID)
                        for (int j = 0; j < nets; ++j)
                            tables[j] = TransitionTable::build(networks[j].giant, dyn_kind);

                    const WalkDynamics dyn{dyn_kind, std::numbers::ln2};
                    std::vector<LearningCurve> slots(walks_per_cell);
                    const std::uint64_t this_cell = cell_index;
                    parallel_for(walks_per_cell, workers, [&](std::size_t i) {
                        const std::size_t net = i / static_cast<std::size_t>(walks);
                        const std::size_t walk = i % static_cast<std::size_t>(walks);
                        const Graph& g = networks[net].giant;
                        Rng rng(derive_seed(config.master_seed, this_cell, net, walk));
                        const auto start = static_cast<NodeId>(rng.next_below(g.node_count()));
                        const TransitionTable* table =
                            (dyn_kind == WalkKind::RWD || dyn_kind == WalkKind::RWID)
                                ? &tables[net]
                                : nullptr;
                        const auto seq = run_walk(
                            g, dyn, start, static_cast<std::uint64_t>(config.steps), rng, table);
                        slots[i] = learning_curve(seq, g.node_count());
                    });

                    if (slots.size() >= 2) {
                        cell.curve = ensemble(slots, cell.meta);
                    } else {
                        cell.curve.meta = cell.meta;
                        cell.curve.mean = slots.front().values;
                        cell.curve.std.assign(slots.front().values.size(), 0.0);
                    }
                    cell.features = rate_features(cell.curve.mean);
                    cell.ok = true;
                    result.cells.push_back(std::move(cell));
                    ++cell_index;
                }
                ++setup_index;
            }
        }
    }

    // one PCA per n over that n's feature rows
    for (std::uint32_t n : config.ns) {
        PcaBlock block;
        block.n = n;
        std::vector<std::vector<double>> rows;
        for (const auto& cell : result.cells) {
            if (cell.ok && cell.meta.n == n) {
                rows.push_back(cell.features);
                block.row_meta.push_back(cell.meta);
            }
        }
        if (rows.size() < 2) continue;
        block.pca = pca_fit(rows);
        result.pca_blocks.push_back(std::move(block));
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

namespace {

std::string meta_prefix(const CurveMeta& meta) {
    std::string out = to_string(meta.model);
    out += ',';
    out += std::to_string(meta.n);
    out += ',';
    out += format_double(meta.target_k);
    out += ',';
    out += to_string(meta.dynamics);
    return out;
}

} // namespace

void write_result_bundle(const ExperimentResult& result) {
    namespace fs = std::filesystem;
    const auto& config = result.config;
    fs::create_directories(config.output_dir);
    const auto path = [&](const char* name) { return (fs::path(config.output_dir) / name).string(); };

    {
        std::string csv = "model,n,k,dynamics,step,mean,std\n";
        for (const auto& cell : result.cells) {
            if (!cell.ok) continue;
            const std::string prefix = meta_prefix(cell.meta);
            for (std::size_t t = 0; t < cell.curve.mean.size(); ++t) {
                if (t % static_cast<std::size_t>(config.thin) != 0) continue;
                csv += prefix;
                csv += ',';
                csv += std::to_string(t);
                csv += ',';
                csv += format_double(cell.curve.mean[t]);
                csv += ',';
                csv += format_double(cell.curve.std[t]);
                csv += '\n';
            }
        }
        write_text_file(path("curves.csv"), csv);
    }

    {
        const int n_features = config.steps / 100;
        std::string csv = "model,n,k,dynamics";
        for (int j = 0; j < n_features; ++j) csv += ",f" + std::to_string(j);
        csv += '\n';
        for (const auto& cell : result.cells) {
            if (!cell.ok) continue;
            csv += meta_prefix(cell.meta);
            for (double f : cell.features) {
                csv += ',';
                csv += format_double(f);
            }
            csv += '\n';
        }
        write_text_file(path("features.csv"), csv);
    }

    {
        std::string csv = "model,n,k,dynamics,pc1,pc2\n";
        for (const auto& block : result.pca_blocks) {
            for (std::size_t i = 0; i < block.row_meta.size(); ++i) {
                csv += meta_prefix(block.row_meta[i]);
                csv += ',';
                csv += format_double(block.pca.projections[i][0]);
                csv += ',';
                csv += format_double(block.pca.projections[i][1]);
                csv += '\n';
            }
        }
        write_text_file(path("pca.csv"), csv);
    }

    // variance and profile tables describe a single fit; with several n in one
    // run they carry the largest n, which is the scale the scatter is read at
    const PcaBlock* headline = nullptr;
    for (const auto& block : result.pca_blocks)
        if (!headline || block.n > headline->n) headline = &block;

    {
        std::string csv = "component,eigenvalue,ratio,cumulative\n";
        if (headline) {
            double cumulative = 0.0;
            for (std::size_t c = 0; c < headline->pca.eigenvalues.size(); ++c) {
                cumulative += headline->pca.explained_variance_ratio[c];
                csv += std::to_string(c + 1);
                csv += ',';
                csv += format_double(headline->pca.eigenvalues[c]);
                csv += ',';
                csv += format_double(headline->pca.explained_variance_ratio[c]);
                csv += ',';
                csv += format_double(cumulative);
                csv += '\n';
            }
        }
        write_text_file(path("variance.csv"), csv);
    }

    {
        std::string csv = "axis,epoch,loading\n";
        if (headline) {
            for (int axis : {1, 2}) {
                for (const auto& [epoch, loading] : axis_profile(headline->pca, axis)) {
                    csv += std::to_string(axis);
                    csv += ',';
                    csv += std::to_string(epoch);
                    csv += ',';
                    csv += format_double(loading);
                    csv += '\n';
                }
            }
        }
        write_text_file(path("profiles.csv"), csv);
    }

    {
        std::ostringstream man;
        char hash_hex[32];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(config.hash()));
        man << "config_hash = " << hash_hex << "\n";
        man << config.serialize();
        man << "std_pooling = all_realizations\n";
        for (const auto& setup : result.setups) {
            std::string prefix = std::string("setup.") + to_string(setup.model) + ".n" +
                                 std::to_string(setup.n) + ".k" + format_double(setup.target_k);
            if (!setup.ok) {
                man << prefix << ".error = " << setup.error << "\n";
                continue;
            }
            for (std::size_t j = 0; j < setup.networks.size(); ++j) {
                const auto& net = setup.networks[j];
                man << prefix << ".net" << j << ".seed = " << net.seed << "\n";
                man << prefix << ".net" << j << ".realized_k = " << format_double(net.realized_k)
                    << "\n";
                man << prefix << ".net" << j << ".giant_n = " << net.giant_n << "\n";
            }
        }
        man << "wall_clock_sec = " << format_double(result.wall_seconds) << "\n";
        write_text_file(path("manifest.txt"), man.str());
    }
}

} // namespace netwalk
