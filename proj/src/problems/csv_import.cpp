#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trish/errors.hpp"
#include "trish/problems.hpp"

namespace trish {

namespace {

using Rows = std::vector<std::vector<double>>;

Rows read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  Rows rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path.string() + ": no data rows");
  return rows;
}

void split_labeled(const Rows& rows, const std::filesystem::path& path, Matrix& a, Vector& y) {
  const std::size_t width = rows.front().size();
  if (width < 2) throw InputError(path.string() + ": need a label and at least one feature per row");
  a.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
  y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      throw InputError(path.string() + ": row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " columns, expected " + std::to_string(width));
    }
    const double label = rows[i][0];
    if (label == 1.0) {
      y(static_cast<Eigen::Index>(i)) = 1.0;
    } else if (label == -1.0 || label == 0.0) {
      y(static_cast<Eigen::Index>(i)) = -1.0;
    } else {
      throw InputError(path.string() + ": row " + std::to_string(i + 1) + ": label must be -1, 0 or 1");
    }
    for (std::size_t j = 1; j < width; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = rows[i][j];
  }
}

}  // namespace

QuadraticProblem load_quadratic_csv(const std::filesystem::path& matrix_path, const std::filesystem::path& rhs_path) {
  const Rows m = read_numeric_csv(matrix_path);
  const std::size_t n = m.size();
  Matrix A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InputError(matrix_path.string() + ": matrix must be square");
    for (std::size_t j = 0; j < n; ++j) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
  }
  const Rows r = read_numeric_csv(rhs_path);
  std::vector<double> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  if (flat.size() != n) throw InputError(rhs_path.string() + ": expected " + std::to_string(n) + " values");
  Vector b = Eigen::Map<Vector>(flat.data(), static_cast<Eigen::Index>(n));
  return QuadraticProblem(std::move(A), std::move(b), "quadratic_csv");
}

LogisticProblem load_logistic_csv(const std::filesystem::path& train_path, double lambda_reg,
                                  const std::optional<std::filesystem::path>& validation_path) {
  Matrix a, va;
  Vector y, vy;
  split_labeled(read_numeric_csv(train_path), train_path, a, y);
  if (validation_path) {
    split_labeled(read_numeric_csv(*validation_path), *validation_path, va, vy);
  }
  return LogisticProblem(std::move(a), std::move(y), lambda_reg, std::move(va), std::move(vy));
}

}  // namespace trish
