#include "monoeit/runner.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monoeit/fem.hpp"
#include "monoeit/io.hpp"
#include "monoeit/phantom.hpp"
#include "monoeit/svg.hpp"

namespace monoeit {

namespace {

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["phantom_file"] = c.phantom_file;
  j["methods"] = c.methods;
  j["deltas"] = c.deltas;
  j["seed"] = c.seed;
  j["mu"] = c.mu;
  j["order"] = c.order;
  j["assembly_order"] = c.assembly_order;
  j["precision_bits"] = c.precision_bits;
  j["hex_radius"] = c.hex_radius;
  j["beta_lower"] = c.beta_lower;
  j["mesh_h"] = c.mesh_h;
  j["fem_check"] = c.fem_check;
  j["svg"] = c.svg;
  j["threads"] = c.threads;
  j["data_dir"] = c.data_dir;
  j["out_dir"] = c.out_dir;
  return j;
}

RunConfig config_from(const nlohmann::json& j) {
  RunConfig c;
  c.phantom_file = j.value("phantom_file", c.phantom_file);
  c.methods = j.value("methods", c.methods);
  c.deltas = j.value("deltas", c.deltas);
  c.seed = j.value("seed", c.seed);
  c.mu = j.value("mu", c.mu);
  c.order = j.value("order", c.order);
  c.assembly_order = j.value("assembly_order", c.assembly_order);
  c.precision_bits = j.value("precision_bits", c.precision_bits);
  c.hex_radius = j.value("hex_radius", c.hex_radius);
  c.beta_lower = j.value("beta_lower", c.beta_lower);
  c.mesh_h = j.value("mesh_h", c.mesh_h);
  c.fem_check = j.value("fem_check", c.fem_check);
  c.svg = j.value("svg", c.svg);
  c.threads = j.value("threads", c.threads);
  c.data_dir = j.value("data_dir", c.data_dir);
  c.out_dir = j.value("out_dir", c.out_dir);
  for (double d : c.deltas) {
    if (d < 0.0) throw std::invalid_argument("config: deltas must be >= 0");
  }
  return c;
}

SpectralMatrix load_noisy(const std::filesystem::path& data_dir,
                          const nlohmann::json& manifest, double delta) {
  for (const auto& item : manifest.at("noisy")) {
    if (item.at("delta").get<double>() == delta) {
      return load_matrix(data_dir / item.at("file").get<std::string>());
    }
  }
  throw std::runtime_error("no data file for requested delta");
}

}  // namespace

TruncationPlan RunConfig::plan() const {
  TruncationPlan p;
  p.order = order;
  p.assembly_order = assembly_order;
  p.precision_bits = precision_bits;
  return p;
}

std::string run_config_to_json(const RunConfig& config) {
  return config_json(config).dump(2);
}

RunConfig run_config_from_json(const std::string& text) {
  return config_from(nlohmann::json::parse(text));
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return run_config_from_json(buf.str());
}

std::uint64_t seed_for_delta(std::uint64_t base_seed, std::size_t index) {
  // splitmix64 step keeps per-delta streams well separated.
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string result_stem(const std::string& method, double delta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", delta);
  return method + "_delta" + buf;
}

std::filesystem::path cache_dir_from_env() {
  const char* dir = std::getenv("MONOEIT_CACHE_DIR");
  return dir ? std::filesystem::path(dir) : std::filesystem::path{};
}

std::filesystem::path cmd_gen_data(const RunConfig& config) {
  const Phantom phantom = load_phantom(config.phantom_file);
  std::filesystem::create_directories(config.data_dir);
  const std::filesystem::path dir(config.data_dir);

  nlohmann::json manifest;
  manifest["phantom_file"] = config.phantom_file;
  manifest["order"] = config.order;
  manifest["assembly_order"] = config.assembly_order;
  manifest["seed"] = config.seed;

  SpectralMatrix noiseless;
  if (phantom.empty()) {
    noiseless = background_nd(config.order);
    manifest["source"] = "background";
  } else if (const BallShape* ball = phantom.single_ball()) {
    noiseless = nd_ball(ball->ball, ball->contrast, config.plan());
    manifest["source"] = "exact";
    save_matrix(noiseless, dir / "nd_exact.bin");
    if (config.fem_check) {
      const DiskMesh mesh = mesh_disk(phantom, config.mesh_h);
      const SpectralMatrix fem =
          nd_matrix_fem(mesh, phantom, config.order);
      save_matrix(fem, dir / "nd_fem.bin");
      SpectralMatrix gap(config.order);
      gap.entries = noiseless.entries - fem.entries;
      const double discrepancy = operator_norm(gap);
      manifest["fem_discrepancy"] = discrepancy;
      manifest["fem_nodes"] = mesh.vertices.size();
      std::cerr << "gen-data: exact vs FEM operator-norm discrepancy "
                << discrepancy << "\n";
    }
  } else {
    const DiskMesh mesh = mesh_disk(phantom, config.mesh_h);
    noiseless = nd_matrix_fem(mesh, phantom, config.order);
    manifest["source"] = "fem";
    manifest["fem_nodes"] = mesh.vertices.size();
  }
  save_matrix(noiseless, dir / "noiseless.bin");
  save_matrix(noiseless, dir / "noiseless.csv");

  manifest["noisy"] = nlohmann::json::array();
  for (std::size_t i = 0; i < config.deltas.size(); ++i) {
    const double delta = config.deltas[i];
    NoiseSpec spec{delta, seed_for_delta(config.seed, i)};
    const SpectralMatrix noise = make_noise(noiseless, spec);
    SpectralMatrix noisy = noiseless;
    noisy.entries += noise.entries;
    noisy.hermitian = noisy.centrohermitian = true;
    noisy.block_diagonal = false;
    const std::string name = "noisy_" + std::to_string(i) + ".bin";
    save_matrix(noisy, dir / name);
    manifest["noisy"].push_back(
        {{"delta", delta}, {"seed", spec.seed}, {"file", name}});
  }

  const std::filesystem::path manifest_file = dir / "manifest.json";
  std::ofstream out(manifest_file);
  if (!out) throw std::runtime_error("cannot write manifest");
  out << manifest.dump(2) << "\n";
  return manifest_file;
}

void cmd_reconstruct(const RunConfig& config) {
  const std::filesystem::path dir(config.data_dir);
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("missing data manifest; run gen-data");
  const nlohmann::json manifest = nlohmann::json::parse(in);
  std::filesystem::create_directories(config.out_dir);

  Phantom phantom;
  bool have_phantom = false;
  try {
    phantom = load_phantom(manifest.at("phantom_file").get<std::string>());
    have_phantom = true;
  } catch (const std::exception&) {
    // Outline overlay is optional.
  }

  HBlockCache cache(config.plan(), cache_dir_from_env());
  for (std::size_t i = 0; i < config.deltas.size(); ++i) {
    const double delta = config.deltas[i];
    const SpectralMatrix data = load_noisy(dir, manifest, delta);
    for (const std::string& method : config.methods) {
      ReconConfig rc;
      rc.method = method_from_name(method);
      rc.beta_lower = config.beta_lower;
      rc.mu = config.mu;
      rc.plan = config.plan();
      rc.hex_radius = config.hex_radius;
      rc.noise.delta = delta;
      rc.noise.seed = seed_for_delta(config.seed, i);
      rc.threads = config.threads;
      const ReconResult result = reconstruct(rc, data, &cache);

      const std::filesystem::path out(config.out_dir);
      const std::string stem = result_stem(method, delta);
      save_recon_csv(result, out / (stem + ".csv"));
      save_recon_meta(result, out / (stem + ".meta.json"));
      if (config.svg) {
        render_svg(result, have_phantom ? &phantom : nullptr,
                   out / (stem + ".svg"));
      }
      std::cerr << "reconstruct: " << stem << " accepted "
                << result.accepted_indices().size() << "/"
                << result.cells.size() << " cells in " << result.runtime_ms
                << " ms\n";
    }
  }
}

std::vector<std::pair<double, DiffReport>> cmd_compare(
    const RunConfig& config) {
  if (config.methods.size() != 2) {
    throw std::invalid_argument("compare: exactly two methods required");
  }
  const std::filesystem::path out(config.out_dir);
  std::vector<std::pair<double, DiffReport>> rows;
  for (double delta : config.deltas) {
    const std::string stem_a = result_stem(config.methods[0], delta);
    const std::string stem_b = result_stem(config.methods[1], delta);
    const ReconResult a = load_recon_csv(out / (stem_a + ".csv"),
                                         out / (stem_a + ".meta.json"));
    const ReconResult b = load_recon_csv(out / (stem_b + ".csv"),
                                         out / (stem_b + ".meta.json"));
    rows.emplace_back(delta, diff(a, b));
  }
  save_diff_table(rows, out / "diff_table.csv");
  return rows;
}

void cmd_render(const std::filesystem::path& csv_file,
                const std::filesystem::path& meta_file,
                const std::optional<std::filesystem::path>& phantom_file,
                const std::filesystem::path& out_file) {
  const ReconResult result = load_recon_csv(csv_file, meta_file);
  Phantom phantom;
  bool have_phantom = false;
  if (phantom_file) {
    phantom = load_phantom(*phantom_file);
    have_phantom = true;
  }
  render_svg(result, have_phantom ? &phantom : nullptr, out_file);
}

}  // namespace monoeit
