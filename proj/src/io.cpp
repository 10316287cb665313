#include "polarcc/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polarcc::io {

namespace {

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::string iso_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Kernel kernel_from_string(const std::string& name) {
    if (name == "min_sum" || name == "minsum") return Kernel::MinSum;
    if (name == "exact") return Kernel::Exact;
    throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        parts.push_back(trimmed(text.substr(pos, next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return parts;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    for (const std::string& part : split(text, ','))
        if (!part.empty()) values.push_back(std::stod(part));
    return values;
}

json construction_json(const ReliabilityProfile& profile, const BitLayout& layout) {
    if (profile.n() != layout.n())
        throw std::invalid_argument("profile and layout lengths differ");
    return json{{"n", layout.n()},
                {"epsilon", profile.epsilon},
                {"z", profile.z},
                {"kinds", layout.to_string()},
                {"k", layout.k}};
}

BitLayout layout_from_json(const json& j) {
    BitLayout layout = BitLayout::from_string(j.at("kinds").get<std::string>());
    if (j.contains("n") && j.at("n").get<int>() != layout.n())
        throw std::invalid_argument("layout JSON: n does not match kinds length");
    if (j.contains("k") && j.at("k").get<int>() != layout.k)
        throw std::invalid_argument("layout JSON: k does not match kinds content");
    return layout;
}

json swap_log_json(const std::vector<SwapRecord>& swaps) {
    json log = json::array();
    for (const SwapRecord& swap : swaps)
        log.push_back(json{{"i", swap.info_index}, {"f", swap.frozen_index},
                           {"delta", swap.delta}});
    return log;
}

json tree_json(const PrunedTree& tree) {
    json nodes = json::array();
    for (const TreeNode& node : tree.nodes)
        nodes.push_back(json{{"start", node.start},
                             {"size", node.size},
                             {"class", to_string(node.cls)},
                             {"left", node.left},
                             {"right", node.right}});
    return json{{"n", tree.n()}, {"kinds", tree.layout.to_string()}, {"nodes", nodes}};
}

json latency_json(const LatencyReport& report, int n, double rate, double threshold) {
    json per_class;
    static constexpr NodeClass kClasses[] = {NodeClass::N0, NodeClass::N1, NodeClass::Rep,
                                             NodeClass::Spc, NodeClass::Mixed};
    for (NodeClass cls : kClasses)
        per_class[to_string(cls)] = json{{"count", report.tally(cls).count},
                                         {"cycles", report.tally(cls).cycles}};
    return json{{"n", n},
                {"rate", rate},
                {"T_h", threshold},
                {"mode", to_string(report.mode)},
                {"cycles", report.total_cycles},
                {"baseline_cycles", report.baseline_cycles},
                {"reduction_percent", report.reduction_percent},
                {"per_class", per_class}};
}

std::string latency_csv_header() { return "n,rate,T_h,mode,cycles,reduction_percent"; }

std::string latency_csv_row(const LatencyReport& report, int n, double rate,
                            double threshold) {
    std::ostringstream row;
    row << n << ',' << fmt("%.10g", rate) << ',' << fmt("%g", threshold) << ','
        << to_string(report.mode) << ',' << report.total_cycles << ','
        << fmt("%.6g", report.reduction_percent);
    return row.str();
}

json config_json(const SimConfig& config) {
    return json{{"n", config.n},
                {"k", config.k},
                {"epsilon", config.epsilon_design},
                {"thresholds", config.thresholds},
                {"ebno_db", config.ebno_db},
                {"max_frames", config.max_frames},
                {"min_frame_errors", config.min_frame_errors},
                {"seed", config.master_seed},
                {"kernel", to_string(config.kernel)}};
}

namespace {

void apply_config_field(SimConfig& config, bool& have_rate, double& rate,
                        const std::string& key, const json& value) {
    if (key == "n") {
        config.n = value.get<int>();
    } else if (key == "k") {
        config.k = value.get<int>();
    } else if (key == "rate") {
        rate = value.get<double>();
        have_rate = true;
    } else if (key == "epsilon") {
        config.epsilon_design = value.get<double>();
    } else if (key == "thresholds") {
        config.thresholds = value.get<std::vector<double>>();
    } else if (key == "ebno_db") {
        config.ebno_db = value.get<std::vector<double>>();
    } else if (key == "max_frames") {
        config.max_frames = value.get<std::int64_t>();
    } else if (key == "min_frame_errors") {
        config.min_frame_errors = value.get<std::int64_t>();
    } else if (key == "seed") {
        config.master_seed = value.get<std::uint64_t>();
    } else if (key == "kernel") {
        config.kernel = kernel_from_string(value.get<std::string>());
    } else {
        throw std::invalid_argument("unknown config key: " + key);
    }
}

}  // namespace

SimConfig parse_sim_config(const std::string& text) {
    SimConfig config;
    bool have_rate = false, have_k = false;
    double rate = 0.0;

    const std::string body = trimmed(text);
    if (!body.empty() && body.front() == '{') {
        const json j = json::parse(body);
        for (const auto& [key, value] : j.items()) {
            if (key == "k") have_k = true;
            apply_config_field(config, have_rate, rate, key, value);
        }
    } else {
        std::istringstream lines(body);
        std::string line;
        while (std::getline(lines, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trimmed(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line is not key=value: " + line);
            const std::string key = trimmed(line.substr(0, eq));
            const std::string value = trimmed(line.substr(eq + 1));
            if (key == "k") have_k = true;
            if (key == "thresholds" || key == "ebno_db")
                apply_config_field(config, have_rate, rate, key, json(parse_double_list(value)));
            else if (key == "kernel")
                apply_config_field(config, have_rate, rate, key, json(value));
            else
                apply_config_field(config, have_rate, rate, key, json::parse(value));
        }
    }

    if (have_rate && have_k)
        throw std::invalid_argument("config may set k or rate, not both");
    if (have_rate) config.k = static_cast<int>(std::lround(config.n * rate));
    return config;
}

std::string sim_csv(const ComparisonResult& result, const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# tool: polarcc " << kToolVersion << '\n';
    out << "# manifest: " << manifest_ref << '\n';
    out << "# config: " << config_json(result.config).dump() << '\n';
    out << "n,rate,T_h,ebno_db,frames,bit_errors,frame_errors,ber,fer\n";
    const double rate = result.config.rate();
    for (const ConstructionRun& run : result.runs)
        for (const SimResult& point : run.points)
            out << result.config.n << ',' << fmt("%.10g", rate) << ','
                << fmt("%g", run.threshold) << ',' << fmt("%g", point.ebno_db) << ','
                << point.frames << ',' << point.bit_errors << ',' << point.frame_errors
                << ',' << fmt("%.8e", point.ber) << ',' << fmt("%.8e", point.fer) << '\n';
    return out.str();
}

json sim_json(const ComparisonResult& result, const std::string& manifest_ref) {
    json runs = json::array();
    for (const ConstructionRun& run : result.runs) {
        json latencies = json::array();
        for (const LatencyReport& report : run.latency)
            latencies.push_back(latency_json(report, result.config.n, result.config.rate(),
                                             run.threshold));
        json points = json::array();
        for (const SimResult& point : run.points)
            points.push_back(json{{"ebno_db", point.ebno_db},
                                  {"frames", point.frames},
                                  {"bit_errors", point.bit_errors},
                                  {"frame_errors", point.frame_errors},
                                  {"ber", point.ber},
                                  {"fer", point.fer},
                                  {"seed_provenance", point.seed_provenance}});
        runs.push_back(json{{"threshold", run.threshold},
                            {"kinds", run.layout.to_string()},
                            {"k", run.layout.k},
                            {"swaps", swap_log_json(run.swaps)},
                            {"latency", latencies},
                            {"points", points}});
    }
    return json{{"config", config_json(result.config)},
                {"manifest", manifest_ref},
                {"runs", runs}};
}

json manifest_json(const std::string& command, const json& config_echo,
                   const std::vector<std::string>& outputs) {
    return json{{"command", command},
                {"config", config_echo},
                {"tool_version", kToolVersion},
                {"timestamp", iso_timestamp_utc()},
                {"outputs", outputs}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace polarcc::io
