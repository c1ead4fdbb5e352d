#include "monoeit/io.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace monoeit {

namespace {

constexpr char kMatrixMagic[8] = {'M', 'O', 'N', 'O', 'E', 'I', 'T', 'M'};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

}  // namespace

void save_matrix(const SpectralMatrix& m, const std::filesystem::path& file) {
  const int n2 = 2 * m.order;
  if (file.extension() == ".csv") {
    std::ofstream out(file);
    require(static_cast<bool>(out), "cannot write " + file.string());
    for (int i = 0; i < n2; ++i) {
      for (int j = 0; j < n2; ++j) {
        if (j) out << ",";
        out << format_double(m.entries(i, j).real()) << ","
            << format_double(m.entries(i, j).imag());
      }
      out << "\n";
    }
    return;
  }
  std::ofstream out(file, std::ios::binary);
  require(static_cast<bool>(out), "cannot write " + file.string());
  out.write(kMatrixMagic, sizeof kMatrixMagic);
  const std::int32_t version = 1;
  const std::int32_t size = n2;
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&size), sizeof size);
  for (int i = 0; i < n2; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double re = m.entries(i, j).real();
      const double im = m.entries(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
}

SpectralMatrix load_matrix(const std::filesystem::path& file) {
  if (file.extension() == ".csv") {
    std::ifstream in(file);
    require(static_cast<bool>(in), "cannot read " + file.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string token;
      while (std::getline(ss, token, ',')) row.push_back(std::stod(token));
      rows.push_back(std::move(row));
    }
    const int n2 = static_cast<int>(rows.size());
    require(n2 > 0 && n2 % 2 == 0, "matrix csv: bad row count");
    SpectralMatrix m(n2 / 2);
    for (int i = 0; i < n2; ++i) {
      require(static_cast<int>(rows[i].size()) == 2 * n2,
              "matrix csv: bad column count");
      for (int j = 0; j < n2; ++j) {
        m.entries(i, j) = Complex{rows[i][2 * j], rows[i][2 * j + 1]};
      }
    }
    return m;
  }
  std::ifstream in(file, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + file.string());
  char magic[8];
  in.read(magic, sizeof magic);
  require(in && std::equal(magic, magic + 8, kMatrixMagic),
          "matrix bin: bad magic");
  std::int32_t version = 0, size = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&size), sizeof size);
  require(in && version == 1 && size > 0 && size % 2 == 0,
          "matrix bin: bad header");
  SpectralMatrix m(size / 2);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      double re = 0.0, im = 0.0;
      in.read(reinterpret_cast<char*>(&re), sizeof re);
      in.read(reinterpret_cast<char*>(&im), sizeof im);
      m.entries(i, j) = Complex{re, im};
    }
  }
  require(static_cast<bool>(in), "matrix bin: truncated file");
  return m;
}

void save_recon_csv(const ReconResult& r, const std::filesystem::path& file) {
  std::ofstream out(file);
  require(static_cast<bool>(out), "cannot write " + file.string());
  out << "cell_index,center_x,center_y,min_eigenvalue,accepted\n";
  for (const CellResult& cell : r.cells) {
    out << cell.index << "," << format_double(cell.center.real()) << ","
        << format_double(cell.center.imag()) << ","
        << format_double(cell.min_eigenvalue) << ","
        << (cell.accepted ? 1 : 0) << "\n";
  }
}

void save_recon_meta(const ReconResult& r, const std::filesystem::path& file) {
  nlohmann::json meta;
  meta["method"] = method_name(r.method);
  meta["beta"] = r.beta;
  meta["alpha"] = r.alpha;
  meta["mu"] = r.mu;
  meta["delta"] = r.delta;
  meta["seed"] = r.seed;
  meta["hex_radius"] = r.hex_radius;
  meta["order"] = r.order;
  meta["assembly_order"] = r.assembly_order;
  meta["cell_count"] = r.cells.size();
  meta["accepted_count"] = r.accepted_indices().size();
  meta["max_involution_residual"] = r.max_involution_residual;
  meta["runtime_ms"] = r.runtime_ms;
  std::ofstream out(file);
  require(static_cast<bool>(out), "cannot write " + file.string());
  out << meta.dump(2) << "\n";
}

ReconResult load_recon_csv(const std::filesystem::path& csv_file,
                           const std::filesystem::path& meta_file) {
  ReconResult r;
  {
    std::ifstream in(meta_file);
    require(static_cast<bool>(in), "cannot read " + meta_file.string());
    nlohmann::json meta = nlohmann::json::parse(in);
    r.method = method_from_name(meta.at("method").get<std::string>());
    r.beta = meta.at("beta").get<double>();
    r.alpha = meta.at("alpha").get<double>();
    r.mu = meta.at("mu").get<double>();
    r.delta = meta.at("delta").get<double>();
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.hex_radius = meta.at("hex_radius").get<double>();
    r.order = meta.at("order").get<int>();
    r.assembly_order = meta.at("assembly_order").get<int>();
    r.max_involution_residual =
        meta.at("max_involution_residual").get<double>();
    r.runtime_ms = meta.at("runtime_ms").get<double>();
  }
  std::ifstream in(csv_file);
  require(static_cast<bool>(in), "cannot read " + csv_file.string());
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CellResult cell;
    double x = 0.0, y = 0.0;
    int accepted = 0;
    require(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%d", &cell.index, &x,
                        &y, &cell.min_eigenvalue, &accepted) == 5,
            "recon csv: bad row");
    cell.center = Complex{x, y};
    cell.accepted = accepted != 0;
    r.cells.push_back(cell);
  }
  return r;
}

void save_diff_table(const std::vector<std::pair<double, DiffReport>>& rows,
                     const std::filesystem::path& file) {
  std::ofstream out(file);
  require(static_cast<bool>(out), "cannot write " + file.string());
  out << "delta,e_abs,e_rel\n";
  for (const auto& [delta, report] : rows) {
    out << format_double(delta) << "," << report.e_abs << ","
        << format_double(report.e_rel) << "\n";
  }
}

}  // namespace monoeit
