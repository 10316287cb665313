// polarcc: polar-code construction, latency analysis, and Monte Carlo
// simulation from the command line.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "polarcc/codec.hpp"
#include "polarcc/construction.hpp"
#include "polarcc/io.hpp"
#include "polarcc/reliability.hpp"
#include "polarcc/sim.hpp"
#include "polarcc/tree.hpp"

namespace {

using namespace polarcc;
namespace fs = std::filesystem;

std::vector<OverheadMode> parse_modes(const std::string& name) {
    if (name == "sum") return {OverheadMode::SumOfLeaves};
    if (name == "plus2") return {OverheadMode::PlusTwoPerMixed};
    if (name == "calibrated") return {OverheadMode::Calibrated};
    if (name == "all" || name == "both")
        return {OverheadMode::SumOfLeaves, OverheadMode::PlusTwoPerMixed,
                OverheadMode::Calibrated};
    throw std::invalid_argument("unknown mode: " + name +
                                " (expected sum, plus2, calibrated, or all)");
}

DecoderKind parse_decoder(const std::string& name) {
    if (name == "fast") return DecoderKind::FastSsc;
    if (name == "sc") return DecoderKind::Sc;
    if (name == "fast-n0n1" || name == "n0n1") return DecoderKind::FastN0N1;
    throw std::invalid_argument("unknown decoder: " + name +
                                " (expected fast, sc, or fast-n0n1)");
}

int resolve_k(int n, std::optional<int> k, std::optional<double> rate) {
    if (k && rate) throw std::invalid_argument("specify --k or --rate, not both");
    if (k) return *k;
    if (rate) return static_cast<int>(std::lround(n * *rate));
    throw std::invalid_argument("one of --k or --rate is required");
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

struct ConstructArgs {
    int n = 8;
    std::optional<int> k;
    std::optional<double> rate;
    double epsilon = 0.3;
    double threshold = 0.0;
    std::string out_dir = ".";
};

void print_latency_block(const PrunedTree& tree, const PrunedTree& baseline_tree) {
    std::printf("  %-20s %8s %10s %10s\n", "mode", "cycles", "baseline", "reduction");
    for (OverheadMode mode : parse_modes("all")) {
        LatencyReport report = total_latency(tree, mode);
        set_baseline(report, total_latency(baseline_tree, mode).total_cycles);
        std::printf("  %-20s %8lld %10lld %9.1f%%\n", to_string(mode),
                    static_cast<long long>(report.total_cycles),
                    static_cast<long long>(report.baseline_cycles),
                    report.reduction_percent);
    }
}

int run_construct(const ConstructArgs& args) {
    const int k = resolve_k(args.n, args.k, args.rate);
    const ReliabilityProfile profile = bec_profile(args.epsilon, args.n);
    const BitLayout baseline = baseline_layout(profile, k);
    const OptimizeResult optimized = optimize_layout(baseline, profile, args.threshold);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    const io::json config{{"n", args.n},       {"k", k},
                          {"epsilon", args.epsilon}, {"threshold", args.threshold}};
    io::json baseline_json = io::construction_json(profile, baseline);
    baseline_json["manifest"] = "manifest.json";
    io::json optimized_json = io::construction_json(profile, optimized.layout);
    optimized_json["manifest"] = "manifest.json";
    optimized_json["T_h"] = args.threshold;
    const io::json swaps{{"T_h", args.threshold},
                         {"swaps", io::swap_log_json(optimized.swaps)},
                         {"manifest", "manifest.json"}};

    io::write_text(dir / "baseline.json", baseline_json.dump(2) + "\n");
    io::write_text(dir / "optimized.json", optimized_json.dump(2) + "\n");
    io::write_text(dir / "swaps.json", swaps.dump(2) + "\n");
    io::write_text(dir / "manifest.json",
                   io::manifest_json("construct", config,
                                     {"baseline.json", "optimized.json", "swaps.json"})
                           .dump(2) +
                       "\n");

    std::printf("construct: n=%d k=%d epsilon=%g threshold=%g\n", args.n, k,
                args.epsilon, args.threshold);
    if (args.n <= 64) {
        std::printf("  baseline:  %s\n", baseline.to_string().c_str());
        std::printf("  optimized: %s\n", optimized.layout.to_string().c_str());
    }
    std::printf("  swaps applied: %zu\n", optimized.swaps.size());
    print_latency_block(build_pruned_tree(optimized.layout), build_pruned_tree(baseline));
    std::printf("  wrote %s\n", (dir / "manifest.json").string().c_str());
    return 0;
}

struct LatencyArgs {
    std::string layout_file;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<double> rate;
    double epsilon = 0.3;
    double threshold = 0.0;
    std::string mode = "all";
    bool show_tree = false;
    std::string out_dir;
};

int run_latency(const LatencyArgs& args) {
    BitLayout layout;
    BitLayout baseline;
    double rate = 0.0;
    if (!args.layout_file.empty()) {
        layout = io::layout_from_json(io::json::parse(io::read_text(args.layout_file)));
        baseline = layout;  // external layouts carry no construction baseline
        rate = static_cast<double>(layout.k) / layout.n();
    } else {
        if (!args.n) throw std::invalid_argument("--n (with --k or --rate) or --layout-file is required");
        const int k = resolve_k(*args.n, args.k, args.rate);
        const ReliabilityProfile profile = bec_profile(args.epsilon, *args.n);
        baseline = baseline_layout(profile, k);
        layout = optimize_layout(baseline, profile, args.threshold).layout;
        rate = static_cast<double>(k) / *args.n;
    }

    const PrunedTree tree = build_pruned_tree(layout);
    const PrunedTree baseline_tree = build_pruned_tree(baseline);
    const std::vector<OverheadMode> modes = parse_modes(args.mode);

    std::printf("latency: n=%d k=%d T_h=%g\n", layout.n(), layout.k, args.threshold);
    std::vector<std::string> csv_rows;
    for (OverheadMode mode : modes) {
        LatencyReport report = total_latency(tree, mode);
        set_baseline(report, total_latency(baseline_tree, mode).total_cycles);
        std::printf("  %-20s %8lld cycles  (baseline %lld, reduction %.1f%%)\n",
                    to_string(mode), static_cast<long long>(report.total_cycles),
                    static_cast<long long>(report.baseline_cycles),
                    report.reduction_percent);
        csv_rows.push_back(io::latency_csv_row(report, layout.n(), rate, args.threshold));
    }
    const LatencyReport tally = total_latency(tree, OverheadMode::SumOfLeaves);
    std::printf("  leaves: N0=%lld N1=%lld REP=%lld SPC=%lld  internal=%lld\n",
                static_cast<long long>(tally.tally(NodeClass::N0).count),
                static_cast<long long>(tally.tally(NodeClass::N1).count),
                static_cast<long long>(tally.tally(NodeClass::Rep).count),
                static_cast<long long>(tally.tally(NodeClass::Spc).count),
                static_cast<long long>(tally.tally(NodeClass::Mixed).count));
    if (layout.n() >= 2)
        std::printf("  conventional bit-by-bit SC: %lld cycles\n",
                    static_cast<long long>(conventional_latency(layout.n())));
    if (args.show_tree) std::printf("%s", render_tree(tree).c_str());

    if (!args.out_dir.empty()) {
        const fs::path dir(args.out_dir);
        fs::create_directories(dir);
        const io::json config{{"n", layout.n()},       {"k", layout.k},
                              {"epsilon", args.epsilon}, {"threshold", args.threshold},
                              {"mode", args.mode},       {"layout_file", args.layout_file}};
        std::string csv = "# manifest: manifest.json\n" + io::latency_csv_header() + "\n";
        for (const std::string& row : csv_rows) csv += row + "\n";
        io::json tree_dump = io::tree_json(tree);
        tree_dump["manifest"] = "manifest.json";
        io::write_text(dir / "latency.csv", csv);
        io::write_text(dir / "tree.json", tree_dump.dump(2) + "\n");
        io::write_text(dir / "manifest.json",
                       io::manifest_json("latency", config, {"latency.csv", "tree.json"})
                               .dump(2) +
                           "\n");
        std::printf("  wrote %s\n", (dir / "manifest.json").string().c_str());
    }
    return 0;
}

struct SimulateArgs {
    std::string config_file;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<double> rate;
    std::optional<double> epsilon;
    std::optional<std::string> thresholds;
    std::optional<std::string> ebno;
    std::optional<std::int64_t> max_frames;
    std::optional<std::int64_t> min_frame_errors;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> kernel;
    std::string decoder = "fast";
    int workers = 0;
    std::string out_dir = ".";
};

int run_simulate(const SimulateArgs& args) {
    SimConfig config;
    if (!args.config_file.empty())
        config = io::parse_sim_config(io::read_text(args.config_file));

    if (args.n) config.n = *args.n;
    if (args.k && args.rate) throw std::invalid_argument("specify --k or --rate, not both");
    if (args.k) config.k = *args.k;
    if (args.rate) config.k = static_cast<int>(std::lround(config.n * *args.rate));
    if (args.epsilon) config.epsilon_design = *args.epsilon;
    if (args.thresholds) config.thresholds = io::parse_double_list(*args.thresholds);
    if (args.ebno) config.ebno_db = io::parse_double_list(*args.ebno);
    if (args.max_frames) config.max_frames = *args.max_frames;
    if (args.min_frame_errors) config.min_frame_errors = *args.min_frame_errors;
    if (args.seed) config.master_seed = *args.seed;
    if (args.kernel)
        config.kernel = *args.kernel == "exact" ? Kernel::Exact : Kernel::MinSum;
    validate(config);

    const int workers = args.workers > 0 ? args.workers : default_workers();
    const DecoderKind decoder = parse_decoder(args.decoder);
    const ComparisonResult result = compare_constructions(config, workers, decoder);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    io::write_text(dir / "results.csv", io::sim_csv(result));
    io::write_text(dir / "results.json", io::sim_json(result).dump(2) + "\n");
    io::write_text(dir / "manifest.json",
                   io::manifest_json("simulate", io::config_json(config),
                                     {"results.csv", "results.json"})
                           .dump(2) +
                       "\n");

    std::printf("simulate: n=%d k=%d epsilon=%g decoder=%s kernel=%s workers=%d\n",
                config.n, config.k, config.epsilon_design, args.decoder.c_str(),
                to_string(config.kernel), workers);
    for (const ConstructionRun& run : result.runs) {
        const LatencyReport& calibrated = run.latency.back();
        std::printf("  T_h=%-8g swaps=%-4zu cycles=%lld (%s, reduction %.1f%%)\n",
                    run.threshold, run.swaps.size(),
                    static_cast<long long>(calibrated.total_cycles),
                    to_string(calibrated.mode), calibrated.reduction_percent);
        for (const SimResult& point : run.points)
            std::printf("    Eb/N0=%-5g frames=%-8lld ber=%.3e fer=%.3e\n",
                        point.ebno_db, static_cast<long long>(point.frames), point.ber,
                        point.fer);
    }
    std::printf("  wrote %s\n", (dir / "manifest.json").string().c_str());
    return 0;
}

struct SweepArgs {
    std::string config_file;
    std::optional<int> n;
    std::optional<double> rate;
    std::optional<std::string> thresholds;
    double epsilon = 0.3;
    std::string mode = "all";
    std::string out_dir;
};

struct SweepEntry {
    int n = 0;
    double rate = 0.0;
    std::vector<double> thresholds;
};

int run_sweep(const SweepArgs& args) {
    double epsilon = args.epsilon;
    std::string mode = args.mode;
    std::vector<SweepEntry> entries;

    if (!args.config_file.empty()) {
        const io::json j = io::json::parse(io::read_text(args.config_file));
        if (j.contains("epsilon")) epsilon = j.at("epsilon").get<double>();
        if (j.contains("mode")) mode = j.at("mode").get<std::string>();
        for (const io::json& e : j.at("entries"))
            entries.push_back(SweepEntry{e.at("n").get<int>(), e.at("rate").get<double>(),
                                         e.at("thresholds").get<std::vector<double>>()});
    } else {
        if (!args.n || !args.rate || !args.thresholds)
            throw std::invalid_argument(
                "sweep needs --config, or --n with --rate and --thresholds");
        entries.push_back(SweepEntry{*args.n, *args.rate,
                                     io::parse_double_list(*args.thresholds)});
    }

    const std::vector<OverheadMode> modes = parse_modes(mode);
    std::string csv = "# manifest: manifest.json\n" + io::latency_csv_header() + "\n";
    std::printf("%s\n", io::latency_csv_header().c_str());
    for (const SweepEntry& entry : entries) {
        const int k = static_cast<int>(std::lround(entry.n * entry.rate));
        const ReliabilityProfile profile = bec_profile(epsilon, entry.n);
        const BitLayout baseline = baseline_layout(profile, k);
        const PrunedTree baseline_tree = build_pruned_tree(baseline);

        // The unoptimized row is always emitted first; drop explicit zeros so
        // a user-supplied 0 does not duplicate it.
        std::vector<double> thresholds{0.0};
        for (double threshold : entry.thresholds)
            if (threshold != 0.0) thresholds.push_back(threshold);
        for (double threshold : thresholds) {
            const BitLayout layout =
                threshold == 0.0 ? baseline
                                 : optimize_layout(baseline, profile, threshold).layout;
            const PrunedTree tree = build_pruned_tree(layout);
            for (OverheadMode m : modes) {
                LatencyReport report = total_latency(tree, m);
                set_baseline(report, total_latency(baseline_tree, m).total_cycles);
                const std::string row =
                    io::latency_csv_row(report, entry.n, entry.rate, threshold);
                csv += row + "\n";
                std::printf("%s\n", row.c_str());
            }
        }
    }

    if (!args.out_dir.empty()) {
        const fs::path dir(args.out_dir);
        fs::create_directories(dir);
        io::json config{{"epsilon", epsilon}, {"mode", mode}, {"entries", io::json::array()}};
        for (const SweepEntry& entry : entries)
            config["entries"].push_back(io::json{{"n", entry.n},
                                                 {"rate", entry.rate},
                                                 {"thresholds", entry.thresholds}});
        io::write_text(dir / "sweep.csv", csv);
        io::write_text(dir / "manifest.json",
                       io::manifest_json("sweep", config, {"sweep.csv"}).dump(2) + "\n");
        std::printf("wrote %s\n", (dir / "manifest.json").string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar code construction, latency, and simulation toolkit"};
    app.require_subcommand(1);

    ConstructArgs construct_args;
    CLI::App* construct = app.add_subcommand(
        "construct", "build baseline and threshold-optimized bit layouts");
    construct->add_option("--n", construct_args.n, "block length (power of two)");
    auto* ck = construct->add_option("--k", construct_args.k, "information bits");
    auto* cr = construct->add_option("--rate", construct_args.rate, "code rate (k = round(n*rate))");
    cr->excludes(ck);
    construct->add_option("--epsilon", construct_args.epsilon, "design erasure rate");
    construct->add_option("--threshold", construct_args.threshold, "swap threshold T_h");
    construct->add_option("--out-dir", construct_args.out_dir, "output directory");

    LatencyArgs latency_args;
    CLI::App* latency = app.add_subcommand("latency", "cycle counts for a pruned decode tree");
    auto* lf = latency->add_option("--layout-file", latency_args.layout_file,
                                   "JSON file with a kinds string");
    auto* ln = latency->add_option("--n", latency_args.n, "block length (power of two)");
    auto* lk = latency->add_option("--k", latency_args.k, "information bits");
    auto* lr = latency->add_option("--rate", latency_args.rate, "code rate");
    lf->excludes(ln);
    lr->excludes(lk);
    latency->add_option("--epsilon", latency_args.epsilon, "design erasure rate");
    latency->add_option("--threshold", latency_args.threshold, "swap threshold T_h");
    latency->add_option("--mode", latency_args.mode, "sum | plus2 | calibrated | all");
    latency->add_flag("--show-tree", latency_args.show_tree, "print the pruned tree");
    latency->add_option("--out-dir", latency_args.out_dir, "write latency.csv and tree.json");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo BER/FER comparison");
    simulate->add_option("--config", sim_args.config_file, "JSON or key=value config file");
    simulate->add_option("--n", sim_args.n, "block length (power of two)");
    auto* sk = simulate->add_option("--k", sim_args.k, "information bits");
    auto* sr = simulate->add_option("--rate", sim_args.rate, "code rate");
    sr->excludes(sk);
    simulate->add_option("--epsilon", sim_args.epsilon, "design erasure rate");
    simulate->add_option("--thresholds", sim_args.thresholds,
                         "comma-separated optimizer thresholds");
    simulate->add_option("--ebno", sim_args.ebno, "comma-separated Eb/N0 grid (dB)");
    simulate->add_option("--max-frames", sim_args.max_frames, "frame budget per point");
    simulate->add_option("--min-frame-errors", sim_args.min_frame_errors,
                         "early-stop error count (0 disables)");
    simulate->add_option("--seed", sim_args.seed, "master seed");
    simulate->add_option("--kernel", sim_args.kernel, "min_sum | exact");
    simulate->add_option("--decoder", sim_args.decoder, "fast | sc | fast-n0n1");
    simulate->add_option("--workers", sim_args.workers, "worker threads (default: hardware)");
    simulate->add_option("--out-dir", sim_args.out_dir, "output directory");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "latency table across (n, rate, T_h)");
    sweep->add_option("--config", sweep_args.config_file,
                      "JSON sweep config with an entries list");
    sweep->add_option("--n", sweep_args.n, "block length (power of two)");
    sweep->add_option("--rate", sweep_args.rate, "code rate");
    sweep->add_option("--thresholds", sweep_args.thresholds,
                      "comma-separated thresholds for one entry");
    sweep->add_option("--epsilon", sweep_args.epsilon, "design erasure rate");
    sweep->add_option("--mode", sweep_args.mode, "sum | plus2 | calibrated | all");
    sweep->add_option("--out-dir", sweep_args.out_dir, "write sweep.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(construct)) return run_construct(construct_args);
        if (app.got_subcommand(latency)) return run_latency(latency_args);
        if (app.got_subcommand(simulate)) return run_simulate(sim_args);
        if (app.got_subcommand(sweep)) return run_sweep(sweep_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
