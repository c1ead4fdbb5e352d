#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "monoeit/engine.hpp"
#include "monoeit/metrics.hpp"

namespace monoeit {

/// End-to-end pipeline configuration; serializes to/from JSON and maps
/// onto the CLI flags.
struct RunConfig {
  std::string phantom_file;
  std::vector<std::string> methods{"nonlinear", "linear"};
  std::vector<double> deltas{0.0, 1e-5, 1e-4, 1e-3, 1e-2};
  std::uint64_t seed = 1;
  double mu = 1.0;
  int order = 16;
  int assembly_order = 200;
  int precision_bits = 256;
  double hex_radius = 0.025;
  double beta_lower = 4.0;
  double mesh_h = 0.0125;
  bool fem_check = true;  // cross-check exact single-ball data against FEM
  bool svg = true;
  int threads = 0;
  std::string data_dir = "data";
  std::string out_dir = "out";

  TruncationPlan plan() const;
};

std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& file);

/// Per-noise-level seeds: fresh realization per delta, derived from the
/// base seed and recorded in the data manifest.
std::uint64_t seed_for_delta(std::uint64_t base_seed, std::size_t index);

/// Simulates the noiseless ND datum (exact characterization for a single
/// ball, finite elements otherwise), adds calibrated noise per delta, and
/// writes matrices plus a manifest under data_dir. Returns the manifest
/// path.
std::filesystem::path cmd_gen_data(const RunConfig& config);

/// Runs the reconstruction per method and delta against the generated
/// data; emits CSV results, JSON metadata and an SVG rendering per run.
void cmd_reconstruct(const RunConfig& config);

/// Collects linear-vs-nonlinear differences per delta into a table CSV.
/// Returns the rows (delta, diff).
std::vector<std::pair<double, DiffReport>> cmd_compare(
    const RunConfig& config);

/// Re-renders an SVG from stored result files.
void cmd_render(const std::filesystem::path& csv_file,
                const std::filesystem::path& meta_file,
                const std::optional<std::filesystem::path>& phantom_file,
                const std::filesystem::path& out_file);

/// Result file stem for a (method, delta) pair.
std::string result_stem(const std::string& method, double delta);

/// Cache directory from the MONOEIT_CACHE_DIR environment variable, empty
/// when unset.
std::filesystem::path cache_dir_from_env();

}  // namespace monoeit
