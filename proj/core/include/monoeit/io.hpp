#pragma once

#include <filesystem>

#include "monoeit/engine.hpp"
#include "monoeit/metrics.hpp"

namespace monoeit {

/// Matrix dumps, row-major in index order -N..-1, 1..N, complex entries as
/// interleaved real/imaginary doubles. `.bin` is bit-exact; `.csv` prints
/// with enough digits to round-trip doubles exactly.
void save_matrix(const SpectralMatrix& m, const std::filesystem::path& file);
SpectralMatrix load_matrix(const std::filesystem::path& file);

void save_recon_csv(const ReconResult& r, const std::filesystem::path& file);
ReconResult load_recon_csv(const std::filesystem::path& csv_file,
                           const std::filesystem::path& meta_file);
void save_recon_meta(const ReconResult& r, const std::filesystem::path& file);

/// Table-shaped report: one row per noise level with the difference counts.
void save_diff_table(const std::vector<std::pair<double, DiffReport>>& rows,
                     const std::filesystem::path& file);

}  // namespace monoeit
