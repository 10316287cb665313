// Serialization: construction/tree/latency/simulation JSON and CSV, config
// files, and run manifests.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarcc/construction.hpp"
#include "polarcc/sim.hpp"
#include "polarcc/tree.hpp"

namespace polarcc {

inline constexpr const char* kToolVersion = "0.1.0";

namespace io {

using nlohmann::json;

// {"n", "epsilon", "z", "kinds", "k"}; kinds is the F/I string.
json construction_json(const ReliabilityProfile& profile, const BitLayout& layout);

// Reads any JSON object carrying a "kinds" string (n/k cross-checked when present).
BitLayout layout_from_json(const json& j);

// [{"i", "f", "delta"}, ...] in application order.
json swap_log_json(const std::vector<SwapRecord>& swaps);

json tree_json(const PrunedTree& tree);

json latency_json(const LatencyReport& report, int n, double rate, double threshold);
std::string latency_csv_header();  // n,rate,T_h,mode,cycles,reduction_percent
std::string latency_csv_row(const LatencyReport& report, int n, double rate,
                            double threshold);

json config_json(const SimConfig& config);

// Accepts a JSON object or key=value lines ('#' comments; comma-separated
// lists; "rate" accepted in place of "k").  Unknown keys are rejected.
SimConfig parse_sim_config(const std::string& text);

// Full results file contents; every output embeds the config echo and a
// reference to the manifest that produced it.
std::string sim_csv(const ComparisonResult& result,
                    const std::string& manifest_ref = "manifest.json");
json sim_json(const ComparisonResult& result,
              const std::string& manifest_ref = "manifest.json");

json manifest_json(const std::string& command, const json& config_echo,
                   const std::vector<std::string>& outputs);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

std::vector<std::string> split(const std::string& text, char sep);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace io
}  // namespace polarcc
