#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "netwalk/config.hpp"
#include "netwalk/coverage.hpp"
#include "netwalk/csv.hpp"
#include "netwalk/edge_list.hpp"
#include "netwalk/errors.hpp"
#include "netwalk/experiment.hpp"
#include "netwalk/generators.hpp"
#include "netwalk/oracle.hpp"
#include "netwalk/pca.hpp"
#include "netwalk/rng.hpp"
#include "netwalk/svg.hpp"
#include "netwalk/walks.hpp"

namespace {

using namespace netwalk;

int do_generate(const std::string& model_s, std::uint32_t n, double k, double beta,
                const LfrParams& lfr, std::uint64_t seed, const std::string& out_file,
                bool reduce_giant) {
    GeneratorSpec spec;
    spec.model = model_from_string(model_s);
    spec.n = n;
    spec.target_k = k;
    spec.waxman_beta = beta;
    spec.lfr = lfr;
    spec.validate();

    Rng rng(seed);
    const Graph full = generate(spec, rng);
    const auto giant = giant_component(full);
    const Graph& to_write = reduce_giant ? giant.graph : full;
    save_edge_list_file(to_write, out_file);

    std::string meta;
    meta += "model = " + std::string(to_string(spec.model)) + "\n";
    meta += "n = " + std::to_string(full.node_count()) + "\n";
    meta += "target_k = " + format_double(k) + "\n";
    meta += "realized_k = " + format_double(full.average_degree()) + "\n";
    meta += "seed = " + std::to_string(seed) + "\n";
    meta += "giant_n = " + std::to_string(giant.graph.node_count()) + "\n";
    write_text_file(out_file + ".meta", meta);

    std::cout << "wrote " << out_file << " (" << to_write.node_count() << " nodes, "
              << to_write.edge_count() << " edges, realized <k> "
              << format_double(full.average_degree()) << ")\n";
    return 0;
}

int do_walk(const std::string& graph_file, const std::string& dyn_s, double lambda,
            std::int64_t start, std::uint64_t steps, std::uint64_t seed) {
    const auto loaded = load_edge_list_file(graph_file);
    WalkDynamics dyn{walk_kind_from_string(dyn_s), lambda};
    Rng rng(seed);
    NodeId start_node;
    if (start < 0)
        start_node = static_cast<NodeId>(rng.next_below(loaded.graph.node_count()));
    else
        start_node = static_cast<NodeId>(start);
    const auto seq = run_walk(loaded.graph, dyn, start_node, steps, rng);
    std::fputs(format_visit_sequence(seq).c_str(), stdout);
    return 0;
}

int do_run(const std::string& config_file, std::int64_t seed_override,
           const std::string& out_override, int workers, int thin_override) {
    ExperimentConfig config = load_config_file(config_file);
    if (seed_override >= 0) config.master_seed = static_cast<std::uint64_t>(seed_override);
    if (!out_override.empty()) config.output_dir = out_override;
    if (thin_override > 0) config.thin = thin_override;
    config.validate();

    const auto result = run_experiment(config, workers);
    write_result_bundle(result);
    emit_plots(plot_bundle_from_result(result), config.output_dir);

    std::size_t ok = 0;
    for (const auto& cell : result.cells) ok += cell.ok ? 1 : 0;
    std::cout << "completed " << ok << "/" << result.cells.size() << " cells in "
              << format_double(result.wall_seconds) << " s; bundle in " << config.output_dir
              << "\n";
    for (const auto& setup : result.setups)
        if (!setup.ok)
            std::cerr << "warning: " << to_string(setup.model) << " n=" << setup.n
                      << " k=" << format_double(setup.target_k) << ": " << setup.error << "\n";
    return 0;
}

int do_pca(const std::string& features_file, const std::string& out_dir) {
    const CsvTable table = read_csv_file(features_file);
    const auto cm = table.column("model"), cn = table.column("n"), ck = table.column("k"),
               cd = table.column("dynamics");

    std::map<std::uint32_t, std::vector<std::size_t>> rows_by_n;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        rows_by_n[static_cast<std::uint32_t>(std::stoul(table.rows[i][cn]))].push_back(i);

    ExperimentResult shim; // reuse the bundle writer through its pca blocks
    shim.config.output_dir = out_dir;
    shim.config.ns.clear();
    for (const auto& [n, indices] : rows_by_n) {
        if (indices.size() < 2) continue;
        PcaBlock block;
        block.n = n;
        std::vector<std::vector<double>> matrix;
        for (std::size_t i : indices) {
            const auto& row = table.rows[i];
            std::vector<double> features;
            for (std::size_t j = cd + 1; j < row.size(); ++j)
                features.push_back(std::stod(row[j]));
            matrix.push_back(std::move(features));
            CurveMeta meta;
            meta.model = model_from_string(row[cm]);
            meta.n = n;
            meta.target_k = std::stod(row[ck]);
            meta.dynamics = walk_kind_from_string(row[cd]);
            block.row_meta.push_back(meta);
        }
        block.pca = pca_fit(matrix);
        shim.pca_blocks.push_back(std::move(block));
    }
    if (shim.pca_blocks.empty()) throw UsageError("features.csv has fewer than 2 usable rows");

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    // write only the PCA trio; reuse write_result_bundle would clobber curves
    std::string pca_csv = "model,n,k,dynamics,pc1,pc2\n";
    const PcaBlock* headline = nullptr;
    for (const auto& block : shim.pca_blocks) {
        for (std::size_t i = 0; i < block.row_meta.size(); ++i) {
            const auto& meta = block.row_meta[i];
            pca_csv += std::string(to_string(meta.model)) + "," + std::to_string(meta.n) + "," +
                       format_double(meta.target_k) + "," + to_string(meta.dynamics) + "," +
                       format_double(block.pca.projections[i][0]) + "," +
                       format_double(block.pca.projections[i][1]) + "\n";
        }
        if (!headline || block.n > headline->n) headline = &block;
    }
    write_text_file((fs::path(out_dir) / "pca.csv").string(), pca_csv);

    std::string var_csv = "component,eigenvalue,ratio,cumulative\n";
    double cumulative = 0.0;
    for (std::size_t c = 0; c < headline->pca.eigenvalues.size(); ++c) {
        cumulative += headline->pca.explained_variance_ratio[c];
        var_csv += std::to_string(c + 1) + "," + format_double(headline->pca.eigenvalues[c]) + "," +
                   format_double(headline->pca.explained_variance_ratio[c]) + "," +
                   format_double(cumulative) + "\n";
    }
    write_text_file((fs::path(out_dir) / "variance.csv").string(), var_csv);

    std::string prof_csv = "axis,epoch,loading\n";
    for (int axis : {1, 2})
        for (const auto& [epoch, loading] : axis_profile(headline->pca, axis))
            prof_csv += std::to_string(axis) + "," + std::to_string(epoch) + "," +
                        format_double(loading) + "\n";
    write_text_file((fs::path(out_dir) / "profiles.csv").string(), prof_csv);

    std::cout << "PCA over " << table.rows.size() << " feature rows; first ratios:";
    for (std::size_t c = 0; c < std::min<std::size_t>(3, headline->pca.eigenvalues.size()); ++c)
        std::cout << " " << format_double(headline->pca.explained_variance_ratio[c]);
    std::cout << "\n";
    return 0;
}

int do_plot(const std::string& in_dir, const std::string& out_dir) {
    const auto bundle = load_plot_bundle(in_dir);
    emit_plots(bundle, out_dir.empty() ? in_dir : out_dir);
    std::cout << "plots written to " << (out_dir.empty() ? in_dir : out_dir) << "\n";
    return 0;
}

int do_oracle(const std::string& graph_file, const std::string& dyn_s, std::uint32_t start,
              int steps, std::uint64_t mc_walks, std::uint64_t seed) {
    const auto loaded = load_edge_list_file(graph_file);
    const WalkKind kind = walk_kind_from_string(dyn_s);
    const auto expected = oracle_expected_coverage(loaded.graph, kind, start, steps);

    std::vector<double> mc;
    if (mc_walks > 0) {
        mc.assign(expected.size(), 0.0);
        const WalkDynamics dyn{kind, std::numbers::ln2};
        Rng rng(seed);
        for (std::uint64_t w = 0; w < mc_walks; ++w) {
            const auto seq =
                run_walk(loaded.graph, dyn, start, static_cast<std::uint64_t>(steps), rng);
            const auto curve = learning_curve(seq, loaded.graph.node_count());
            for (std::size_t t = 0; t < curve.values.size(); ++t) mc[t] += curve.values[t];
        }
        for (double& v : mc) v /= static_cast<double>(mc_walks);
    }

    std::cout << "step,expected_coverage" << (mc.empty() ? "" : ",mc_mean") << "\n";
    for (std::size_t t = 0; t < expected.size(); ++t) {
        std::cout << t << "," << format_double(expected[t]);
        if (!mc.empty()) std::cout << "," << format_double(mc[t]);
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"netwalk: random-walk node-discovery experiments on network models"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a network and write an edge list");
    std::string gen_model = "ER", gen_out = "graph.edges";
    std::uint32_t gen_n = 1000;
    double gen_k = 4.0, gen_beta = 0.1;
    LfrParams gen_lfr_params;
    std::uint64_t gen_seed = 1;
    bool gen_giant = false;
    gen->add_option("--model", gen_model, "ER, BA, WAX or LFR")->required();
    gen->add_option("--n", gen_n, "number of nodes")->required();
    gen->add_option("--k", gen_k, "target average degree")->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--beta", gen_beta, "Waxman decay length");
    gen->add_option("--mu", gen_lfr_params.mu, "LFR mixing parameter");
    gen->add_option("--communities", gen_lfr_params.n_communities, "LFR community count");
    gen->add_option("--t1", gen_lfr_params.t1, "LFR degree exponent");
    gen->add_option("--t2", gen_lfr_params.t2, "LFR size exponent (0 = equal sizes)");
    gen->add_option("--max-k", gen_lfr_params.max_k, "LFR degree cap (0 = auto)");
    gen->add_option("--out", gen_out, "output edge-list path");
    gen->add_flag("--giant", gen_giant, "write only the giant component");

    // walk
    auto* walk = app.add_subcommand("walk", "run one walk, print the visit sequence");
    std::string walk_graph, walk_dyn = "RW";
    double walk_lambda = std::numbers::ln2;
    std::int64_t walk_start = -1;
    std::uint64_t walk_steps = 5000, walk_seed = 1;
    walk->add_option("--graph", walk_graph, "edge-list file")->required();
    walk->add_option("--dynamics", walk_dyn, "RW, RWD, RWID or TSAW");
    walk->add_option("--lambda", walk_lambda, "TSAW decay rate");
    walk->add_option("--start", walk_start, "start node (-1 draws uniformly)");
    walk->add_option("--steps", walk_steps, "number of steps");
    walk->add_option("--seed", walk_seed, "random seed");

    // run
    auto* run = app.add_subcommand("run", "full experiment from a config file");
    std::string run_config, run_out;
    std::int64_t run_seed = -1;
    int run_workers = static_cast<int>(std::thread::hardware_concurrency());
    int run_thin = 0;
    run->add_option("--config", run_config, "experiment config file")->required();
    run->add_option("--seed", run_seed, "override master_seed");
    run->add_option("--workers", run_workers, "worker threads");
    run->add_option("--out", run_out, "override output directory");
    run->add_option("--thin", run_thin, "override curve thinning");

    // pca
    auto* pca = app.add_subcommand("pca", "refit PCA from a features.csv");
    std::string pca_features, pca_out = ".";
    pca->add_option("--features", pca_features, "features.csv path")->required();
    pca->add_option("--out", pca_out, "output directory");

    // plot
    auto* plot = app.add_subcommand("plot", "render SVG figures from a CSV bundle");
    std::string plot_in, plot_out;
    plot->add_option("--in", plot_in, "directory holding the CSV bundle")->required();
    plot->add_option("--out", plot_out, "output directory (defaults to --in)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact expected coverage on a small graph");
    std::string oracle_graph, oracle_dyn = "RW";
    std::uint32_t oracle_start = 0;
    int oracle_steps = 40;
    std::uint64_t oracle_mc = 0, oracle_seed = 1;
    oracle->add_option("--graph", oracle_graph, "edge-list file (N <= 12)")->required();
    oracle->add_option("--dynamics", oracle_dyn, "RW, RWD or RWID");
    oracle->add_option("--start", oracle_start, "start node");
    oracle->add_option("--steps", oracle_steps, "steps (<= 60)");
    oracle->add_option("--mc", oracle_mc, "also average this many Monte Carlo walks");
    oracle->add_option("--seed", oracle_seed, "seed for --mc");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return do_generate(gen_model, gen_n, gen_k, gen_beta, gen_lfr_params, gen_seed,
                               gen_out, gen_giant);
        if (walk->parsed())
            return do_walk(walk_graph, walk_dyn, walk_lambda, walk_start, walk_steps, walk_seed);
        if (run->parsed()) return do_run(run_config, run_seed, run_out, run_workers, run_thin);
        if (pca->parsed()) return do_pca(pca_features, pca_out);
        if (plot->parsed()) return do_plot(plot_in, plot_out);
        if (oracle->parsed())
            return do_oracle(oracle_graph, oracle_dyn, oracle_start, oracle_steps, oracle_mc,
                             oracle_seed);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const GenerationError& e) {
        std::cerr << "generation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
