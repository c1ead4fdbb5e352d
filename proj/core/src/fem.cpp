#include "monoeit/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace monoeit {

namespace {

// 3-point Gauss on [0,1].
constexpr double kGaussT[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kGaussW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// int_0^1 e^{-ixt} dt and int_0^1 t e^{-ixt} dt.
void linear_oscillatory_moments(double x, Complex& e0, Complex& e1) {
  if (std::abs(x) < 1e-6) {
    const Complex ix{0.0, x};
    e0 = 1.0 - ix / 2.0 - x * x / 6.0;
    e1 = 0.5 - ix / 3.0 - x * x / 8.0;
    return;
  }
  const Complex eix = std::polar(1.0, -x);
  e0 = (1.0 - eix) / Complex{0.0, x};
  e1 = Complex{0.0, 1.0} * eix / x - (1.0 - eix) / (x * x);
}

}  // namespace

NeumannSolver::NeumannSolver(const DiskMesh& mesh, const Phantom& phantom)
    : mesh_(mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  boundary_angles_.reserve(mesh.boundary.size());
  for (int v : mesh.boundary) {
    boundary_angles_.push_back(std::arg(mesh.vertices[v]));
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.triangles.size() * 9 + mesh.boundary.size() * 4 + 1);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Complex p0 = mesh.vertices[tri[0]];
    const Complex p1 = mesh.vertices[tri[1]];
    const Complex p2 = mesh.vertices[tri[2]];
    const double area = mesh.triangle_area(static_cast<int>(t));
    if (!(area > 0.0)) throw std::runtime_error("fem: non-positive element");
    const int label = mesh.labels[t];
    const double gamma =
        label < 0 ? 1.0 : 1.0 + shape_contrast(phantom.shapes[label]);
    // grad lambda_k = perp(opposite edge) / (2 area)
    const Complex e0 = p2 - p1, e1 = p0 - p2, e2 = p1 - p0;
    const double gx[3] = {-e0.imag(), -e1.imag(), -e2.imag()};
    const double gy[3] = {e0.real(), e1.real(), e2.real()};
    const double scale = gamma / (4.0 * area);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        trips.emplace_back(tri[i], tri[j],
                           scale * (gx[i] * gx[j] + gy[i] * gy[j]));
      }
    }
  }
  // Border column/row: c_i = int phi_i ds along the boundary polygon.
  const std::size_t nb = mesh.boundary.size();
  for (std::size_t j = 0; j < nb; ++j) {
    const int va = mesh.boundary[j];
    const int vb = mesh.boundary[(j + 1) % nb];
    const double len = std::abs(mesh.vertices[vb] - mesh.vertices[va]);
    trips.emplace_back(va, n, 0.5 * len);
    trips.emplace_back(n, va, 0.5 * len);
    trips.emplace_back(vb, n, 0.5 * len);
    trips.emplace_back(n, vb, 0.5 * len);
  }

  Eigen::SparseMatrix<double> system(n + 1, n + 1);
  system.setFromTriplets(trips.begin(), trips.end());
  lu_.compute(system);
  if (lu_.info() != Eigen::Success) {
    throw std::runtime_error(
        "fem: singular system (broken grounding constraint or mesh)");
  }
}

Eigen::VectorXd NeumannSolver::solve(
    const std::function<double(double)>& g) const {
  const int n = static_cast<int>(mesh_.vertices.size());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  const std::size_t nb = mesh_.boundary.size();
  for (std::size_t j = 0; j < nb; ++j) {
    const int va = mesh_.boundary[j];
    const int vb = mesh_.boundary[(j + 1) % nb];
    const Complex pa = mesh_.vertices[va];
    const Complex pb = mesh_.vertices[vb];
    const double len = std::abs(pb - pa);
    for (int q = 0; q < 3; ++q) {
      const double t = kGaussT[q];
      const Complex p = pa + t * (pb - pa);
      const double gv = g(std::arg(p));
      rhs(va) += kGaussW[q] * len * gv * (1.0 - t);
      rhs(vb) += kGaussW[q] * len * gv * t;
    }
  }
  const Eigen::VectorXd full = lu_.solve(rhs);
  if (lu_.info() != Eigen::Success) {
    throw std::runtime_error("fem: solve failed");
  }
  return full.head(n);
}

Eigen::VectorXd NeumannSolver::solve_trace(
    const std::function<double(double)>& g) const {
  const Eigen::VectorXd u = solve(g);
  Eigen::VectorXd trace(mesh_.boundary.size());
  for (std::size_t j = 0; j < mesh_.boundary.size(); ++j) {
    trace(j) = u(mesh_.boundary[j]);
  }
  return trace;
}

Eigen::VectorXd solve_neumann(const DiskMesh& mesh, const Phantom& phantom,
                              const std::function<double(double)>& g) {
  return NeumannSolver(mesh, phantom).solve_trace(g);
}

SpectralMatrix nd_matrix_fem(const DiskMesh& mesh, const Phantom& phantom,
                             int order, FemDiagnostics* diag) {
  if (order < 1) throw std::invalid_argument("nd_matrix_fem: order >= 1");
  NeumannSolver solver(mesh, phantom);
  const std::size_t nb = mesh.boundary.size();
  const auto& angle = solver.boundary_angles();

  // Traces for the N cosine/sine current pairs.
  std::vector<Eigen::VectorXd> cos_trace(order), sin_trace(order);
  for (int m = 1; m <= order; ++m) {
    cos_trace[m - 1] =
        solver.solve_trace([m](double th) { return std::cos(m * th); });
    sin_trace[m - 1] =
        solver.solve_trace([m](double th) { return std::sin(m * th); });
  }

  // fourier(n, m-1) = int u_m(theta) e^{-in theta} dtheta with the trace
  // piecewise linear in theta; each boundary segment integrates exactly.
  auto boundary_fourier = [&](const Eigen::VectorXd& u, int n) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      const std::size_t j2 = (j + 1) % nb;
      double th0 = angle[j];
      double th1 = angle[j2];
      if (th1 <= th0) th1 += kTwoPi;
      const double dth = th1 - th0;
      Complex e0, e1;
      linear_oscillatory_moments(n * dth, e0, e1);
      sum += dth * std::polar(1.0, -n * th0) *
             (u(j) * e0 + (u(j2) - u(j)) * e1);
    }
    return sum;
  };

  SpectralMatrix out(order);
  for (int m = 1; m <= order; ++m) {
    for (int n = -order; n <= order; ++n) {
      if (n == 0) continue;
      const Complex tc = boundary_fourier(cos_trace[m - 1], n);
      const Complex ts = boundary_fourier(sin_trace[m - 1], n);
      out.entries(out.pos(n), out.pos(m)) = (tc + Complex{0, 1} * ts) / kTwoPi;
      out.entries(out.pos(n), out.pos(-m)) = (tc - Complex{0, 1} * ts) / kTwoPi;
    }
  }

  if (diag) {
    diag->raw_asymmetry = hermitian_defect(out);
    diag->raw_centro_defect = centrohermitian_defect(out);
  }
  out = hermitian_part(centrohermitian_part(out));
  out.hermitian = out.centrohermitian = true;
  out.block_diagonal = false;
  return out;
}

}  // namespace monoeit
