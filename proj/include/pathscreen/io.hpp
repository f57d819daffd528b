#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pathscreen/path.hpp"

namespace pathscreen {

/// CSV ingestion. Comma-separated, '.' decimal point, rows = observations.
/// A single leading header row is skipped when any of its cells is not
/// numeric. Malformed cells raise ParseError with the 1-based line number;
/// inconsistent field counts raise RaggedRows.
Eigen::MatrixXd load_matrix(const std::string& path);

/// One value per line (same header rule as load_matrix).
Eigen::VectorXd load_vector(const std::string& path);

/// One integer group id per feature line. Ids must label contiguous runs
/// (a run's id may not reappear later); returns the run lengths in order.
std::vector<int> load_groups(const std::string& path);

/// Round-trip-safe decimal rendering (17 significant digits).
std::string format_double(double value);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);
void write_groups_csv(const std::string& path,
                      const std::vector<int>& group_sizes);

/// One row per grid point: lambda,b1,...,bp.
void write_coefficients_csv(const std::string& path, const PathSolution& sol);

/// Per-λ solver and screening counters, one row per grid point.
void write_diagnostics_csv(const std::string& path, const PathSolution& sol,
                           const PathDiagnostics& diag);

/// Plot-ready per-λ rejection fractions by mechanism.
void write_rejections_csv(const std::string& path,
                          const PathDiagnostics& diag);

}  // namespace pathscreen
