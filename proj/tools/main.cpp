#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "monoeit/runner.hpp"

namespace {

void add_common_flags(CLI::App* cmd, monoeit::RunConfig& config,
                      std::string& config_file) {
  cmd->add_option("--config", config_file, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--phantom", config.phantom_file, "phantom JSON file");
  cmd->add_option("--method", config.methods,
                  "method(s): linear / nonlinear");
  cmd->add_option("--delta", config.deltas, "noise levels");
  cmd->add_option("--seed", config.seed, "base noise seed");
  cmd->add_option("--mu", config.mu, "regularization tuning factor");
  cmd->add_option("--order", config.order, "data truncation N");
  cmd->add_option("--assembly-order", config.assembly_order,
                  "assembly truncation");
  cmd->add_option("--precision-bits", config.precision_bits,
                  "extended-precision floor for the H assembly");
  cmd->add_option("--hex-radius", config.hex_radius, "hexagon circumradius");
  cmd->add_option("--beta-lower", config.beta_lower,
                  "contrast lower bound beta^L");
  cmd->add_option("--mesh-h", config.mesh_h, "FEM target edge length");
  cmd->add_option("--threads", config.threads, "worker threads (0 = auto)");
  cmd->add_option("--data", config.data_dir, "data directory");
  cmd->add_option("--out", config.out_dir, "output directory");
  cmd->add_flag("!--no-svg", config.svg, "skip SVG rendering");
  cmd->add_flag("!--no-fem-check", config.fem_check,
                "skip the FEM cross-check for single-ball phantoms");
}

// Re-parse so explicit flags override values from the config file.
monoeit::RunConfig effective_config(const CLI::App* cmd,
                                    const monoeit::RunConfig& parsed,
                                    const std::string& config_file) {
  if (config_file.empty()) return parsed;
  monoeit::RunConfig config = monoeit::load_run_config(config_file);
  auto take = [&](const std::string& flag, auto member) {
    if (cmd->count(flag) > 0) config.*member = parsed.*member;
  };
  take("--phantom", &monoeit::RunConfig::phantom_file);
  take("--method", &monoeit::RunConfig::methods);
  take("--delta", &monoeit::RunConfig::deltas);
  take("--seed", &monoeit::RunConfig::seed);
  take("--mu", &monoeit::RunConfig::mu);
  take("--order", &monoeit::RunConfig::order);
  take("--assembly-order", &monoeit::RunConfig::assembly_order);
  take("--precision-bits", &monoeit::RunConfig::precision_bits);
  take("--hex-radius", &monoeit::RunConfig::hex_radius);
  take("--beta-lower", &monoeit::RunConfig::beta_lower);
  take("--mesh-h", &monoeit::RunConfig::mesh_h);
  take("--threads", &monoeit::RunConfig::threads);
  take("--data", &monoeit::RunConfig::data_dir);
  take("--out", &monoeit::RunConfig::out_dir);
  take("--no-svg", &monoeit::RunConfig::svg);
  take("--no-fem-check", &monoeit::RunConfig::fem_check);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotonicity-based EIT reconstruction in the unit disk"};
  app.require_subcommand(1);

  monoeit::RunConfig config;
  std::string config_file;

  CLI::App* gen = app.add_subcommand(
      "gen-data", "simulate ND data for a phantom and add calibrated noise");
  add_common_flags(gen, config, config_file);

  CLI::App* recon = app.add_subcommand(
      "reconstruct", "run the monotonicity reconstruction per method/delta");
  add_common_flags(recon, config, config_file);

  CLI::App* compare = app.add_subcommand(
      "compare", "tabulate linear vs non-linear reconstruction differences");
  add_common_flags(compare, config, config_file);

  CLI::App* render =
      app.add_subcommand("render", "re-render an SVG from stored results");
  std::string result_csv, result_meta, render_out;
  std::string render_phantom;
  render->add_option("--result", result_csv, "result CSV file")->required();
  render->add_option("--meta", result_meta, "result metadata JSON")
      ->required();
  render->add_option("--phantom", render_phantom, "phantom outline overlay");
  render->add_option("--out", render_out, "output SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto cfg = effective_config(gen, config, config_file);
      const auto manifest = monoeit::cmd_gen_data(cfg);
      std::cout << "wrote " << manifest.string() << "\n";
    } else if (recon->parsed()) {
      const auto cfg = effective_config(recon, config, config_file);
      monoeit::cmd_reconstruct(cfg);
    } else if (compare->parsed()) {
      const auto cfg = effective_config(compare, config, config_file);
      const auto rows = monoeit::cmd_compare(cfg);
      std::cout << "delta,e_abs,e_rel\n";
      for (const auto& [delta, report] : rows) {
        std::cout << delta << "," << report.e_abs << "," << report.e_rel
                  << "\n";
      }
    } else if (render->parsed()) {
      std::optional<std::filesystem::path> phantom;
      if (!render_phantom.empty()) phantom = render_phantom;
      monoeit::cmd_render(result_csv, result_meta, phantom, render_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
