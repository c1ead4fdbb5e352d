#include "monoeit/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <thread>

namespace monoeit {

namespace {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::string method_name(Method m) {
  return m == Method::linear ? "linear" : "nonlinear";
}

Method method_from_name(const std::string& name) {
  if (name == "linear") return Method::linear;
  if (name == "nonlinear") return Method::nonlinear;
  throw std::invalid_argument("unknown method: " + name);
}

BetaValues beta_values(double beta_lower) {
  if (!(beta_lower > 0.0)) {
    throw std::invalid_argument("beta_values: lower bound must be > 0");
  }
  return BetaValues{beta_lower, beta_lower / (1.0 + beta_lower)};
}

double reg_alpha(const SpectralMatrix& background, const SpectralMatrix& data,
                 double mu) {
  if (background.order != data.order) {
    throw std::invalid_argument("reg_alpha: order mismatch");
  }
  SpectralMatrix gap(background.order);
  gap.entries = background.entries - data.entries;
  const double smallest = smallest_eigenvalue(gap);
  return std::max(0.0, -mu * smallest);
}

double test_cell_nonlinear(const Ball& ball, double beta,
                           const SpectralMatrix& data, double alpha,
                           const TruncationPlan& plan, HBlockCache* cache,
                           NdInfo* info) {
  const SpectralMatrix test = nd_ball(ball, beta, plan, cache, info);
  SpectralMatrix shifted(test.order);
  shifted.entries = test.entries - data.entries;
  shifted.entries.diagonal().array() += alpha;
  return smallest_eigenvalue(shifted);
}

double test_cell_linear(const Ball& ball, double beta,
                        const SpectralMatrix& background,
                        const SpectralMatrix& data, double alpha, int order) {
  const SpectralMatrix frechet = frechet_ball(ball, order);
  SpectralMatrix shifted(order);
  shifted.entries =
      background.entries + beta * frechet.entries - data.entries;
  shifted.entries.diagonal().array() += alpha;
  return smallest_eigenvalue(shifted);
}

std::vector<int> ReconResult::accepted_indices() const {
  std::vector<int> out;
  for (const CellResult& cell : cells) {
    if (cell.accepted) out.push_back(cell.index);
  }
  return out;
}

ReconResult reconstruct(const ReconConfig& config, const SpectralMatrix& data,
                        HBlockCache* cache) {
  config.plan.validate();
  if (data.order != config.plan.order) {
    throw std::invalid_argument("reconstruct: data order != plan order");
  }
  const auto start = std::chrono::steady_clock::now();

  const HexTiling tiling = hex_tiling(config.hex_radius);
  const SpectralMatrix background = background_nd(config.plan.order);
  const double alpha = reg_alpha(background, data, config.mu);
  const BetaValues betas = beta_values(config.beta_lower);
  const double beta =
      config.method == Method::linear ? betas.linear : betas.nonlinear;

  const int count = static_cast<int>(tiling.cells.size());
  std::vector<CellResult> cells(count);
  std::vector<double> residuals(count, 0.0);

  if (config.method == Method::nonlinear) {
    // Warm the rho-keyed block cache serially so the parallel phase only
    // reads it.
    if (cache) {
      for (const HexCell& cell : tiling.cells) {
        const Ball ball = cell.ball(config.hex_radius);
        cache->get(ball_to_concentric(ball).rho());
      }
    }
    parallel_for(count, config.threads, [&](int i) {
      const Ball ball = tiling.cells[i].ball(config.hex_radius);
      NdInfo info;
      const double value =
          test_cell_nonlinear(ball, beta, data, alpha, config.plan, cache,
                              &info);
      cells[i] = CellResult{tiling.cells[i].index, tiling.cells[i].center,
                            value, value >= -kAcceptanceMargin};
      residuals[i] = info.involution_residual;
    });
  } else {
    parallel_for(count, config.threads, [&](int i) {
      const Ball ball = tiling.cells[i].ball(config.hex_radius);
      const double value = test_cell_linear(ball, beta, background, data,
                                            alpha, config.plan.order);
      cells[i] = CellResult{tiling.cells[i].index, tiling.cells[i].center,
                            value, value >= -kAcceptanceMargin};
    });
  }

  ReconResult result;
  result.method = config.method;
  result.beta = beta;
  result.alpha = alpha;
  result.mu = config.mu;
  result.delta = config.noise.delta;
  result.seed = config.noise.seed;
  result.hex_radius = config.hex_radius;
  result.order = config.plan.order;
  result.assembly_order = config.plan.assembly_order;
  result.max_involution_residual =
      *std::max_element(residuals.begin(), residuals.end());
  result.cells = std::move(cells);
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace monoeit
