#include "pathscreen/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "pathscreen/errors.hpp"

namespace pathscreen {

namespace {

// Physical lines of a text file, 1-based, CR stripped. Trailing blank lines
// are dropped; interior blank lines are malformed input.
struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    lines.push_back({number, std::move(text)});
  }
  while (!lines.empty() && lines.back().text.empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "empty file: " + path);
  return lines;
}

std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::size_t lo = start, hi = end;
    while (lo < hi && (text[lo] == ' ' || text[lo] == '\t')) ++lo;
    while (hi > lo && (text[hi - 1] == ' ' || text[hi - 1] == '\t')) --hi;
    fields.push_back(text.substr(lo, hi - lo));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool try_parse_double(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !field.empty();
}

bool try_parse_long(const std::string& field, long& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !field.empty();
}

bool all_numeric(const std::vector<std::string>& fields) {
  double ignored;
  for (const auto& f : fields) {
    if (!try_parse_double(f, ignored)) return false;
  }
  return true;
}

// Rows of parsed doubles with the header (if any) skipped.
std::vector<std::vector<double>> load_rows(const std::string& path) {
  const auto lines = read_lines(path);
  std::size_t start = 0;
  if (!all_numeric(split_fields(lines[0].text))) start = 1;
  if (start == lines.size()) {
    throw ParseError(lines[0].number, "no data rows after header");
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size() - start);
  std::size_t expected = 0;
  for (std::size_t i = start; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i].text);
    if (expected == 0) expected = fields.size();
    if (fields.size() != expected) {
      throw RaggedRows(lines[i].number, expected, fields.size());
    }
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!try_parse_double(fields[j], row[j])) {
        throw ParseError(lines[i].number, "column " + std::to_string(j + 1) +
                                              ": not a number: '" + fields[j] +
                                              "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

}  // namespace

Eigen::MatrixXd load_matrix(const std::string& path) {
  const auto rows = load_rows(path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return m;
}

Eigen::VectorXd load_vector(const std::string& path) {
  const auto rows = load_rows(path);
  if (rows[0].size() != 1) {
    throw ParseError(1, "expected one value per line in '" + path + "', got " +
                            std::to_string(rows[0].size()) + " columns");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = rows[i][0];
  }
  return v;
}

std::vector<int> load_groups(const std::string& path) {
  const auto lines = read_lines(path);
  std::size_t start = 0;
  {
    long ignored;
    if (!try_parse_long(lines[0].text, ignored)) start = 1;
  }
  if (start == lines.size()) {
    throw ParseError(lines[0].number, "no data rows after header");
  }

  std::vector<int> sizes;
  std::vector<long> seen;
  long current = 0;
  for (std::size_t i = start; i < lines.size(); ++i) {
    long id;
    if (!try_parse_long(lines[i].text, id)) {
      throw ParseError(lines[i].number,
                       "not an integer group id: '" + lines[i].text + "'");
    }
    if (sizes.empty() || id != current) {
      for (long old : seen) {
        if (old == id) {
          throw ParseError(lines[i].number,
                           "group id " + std::to_string(id) +
                               " reappears after its run ended; groups must "
                               "be contiguous");
        }
      }
      seen.push_back(id);
      sizes.push_back(0);
      current = id;
    }
    ++sizes.back();
  }
  return sizes;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << format_double(v[i]) << '\n';
  }
}

void write_groups_csv(const std::string& path,
                      const std::vector<int>& group_sizes) {
  auto out = open_out(path);
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    for (int k = 0; k < group_sizes[g]; ++k) {
      out << g << '\n';
    }
  }
}

void write_coefficients_csv(const std::string& path, const PathSolution& sol) {
  auto out = open_out(path);
  out << "lambda";
  for (Eigen::Index j = 1; j <= sol.p; ++j) out << ",b" << j;
  out << '\n';
  for (std::size_t k = 0; k < sol.points.size(); ++k) {
    const Eigen::VectorXd beta = sol.dense(k);
    out << format_double(sol.points[k].lambda);
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      out << ',' << format_double(beta[j]);
    }
    out << '\n';
  }
}

void write_diagnostics_csv(const std::string& path, const PathSolution& sol,
                           const PathDiagnostics& diag) {
  if (diag.rows.size() != sol.points.size()) {
    throw DimensionMismatch("diagnostics rows do not match path points");
  }
  auto out = open_out(path);
  out << "lambda,sweeps,kkt_resolves,violations,safe_size,strong_size,"
         "safe_rejected,strong_rejected,safe_flag,nonzero,converged,"
         "wall_seconds\n";
  for (std::size_t k = 0; k < sol.points.size(); ++k) {
    const auto& pt = sol.points[k];
    const auto& row = diag.rows[k];
    out << format_double(pt.lambda) << ',' << pt.sweeps << ','
        << pt.kkt_resolves << ',' << pt.violations << ',' << pt.safe_size
        << ',' << pt.strong_size << ',' << row.safe_rejected << ','
        << row.strong_rejected << ',' << (pt.safe_flag ? 1 : 0) << ','
        << pt.nonzero_index.size() << ',' << (pt.converged ? 1 : 0) << ','
        << format_double(pt.wall_seconds) << '\n';
  }
}

void write_rejections_csv(const std::string& path,
                          const PathDiagnostics& diag) {
  const RejectionProfile profile = rejection_profile(diag);
  auto out = open_out(path);
  out << "lambda,safe_fraction,strong_fraction,total_fraction,safe_flag\n";
  for (std::size_t k = 0; k < profile.lambda.size(); ++k) {
    out << format_double(profile.lambda[k]) << ','
        << format_double(profile.safe_fraction[k]) << ','
        << format_double(profile.strong_fraction[k]) << ','
        << format_double(profile.total_fraction[k]) << ','
        << (diag.rows[k].safe_flag ? 1 : 0) << '\n';
  }
}

}  // namespace pathscreen
