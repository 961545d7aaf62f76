#include "pflr/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "pflr/errors.hpp"

namespace pflr {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  out << "y";
  for (Eigen::Index j = 0; j < data.p(); ++j) out << ",z" << (j + 1);
  for (Eigen::Index s = 0; s < data.X.grid.size(); ++s)
    out << ",x@" << format_double(data.X.grid[s]);
  out << "\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out << format_double(data.Y[i]);
    for (Eigen::Index j = 0; j < data.p(); ++j)
      out << "," << format_double(data.Z(i, j));
    for (Eigen::Index s = 0; s < data.X.grid.size(); ++s)
      out << "," << format_double(data.X.curves(i, s));
    out << "\n";
  }
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_dataset_csv(out, data);
  out.flush();
  if (!out) throw DataError("failed writing '" + path + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, long line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
      throw DataError("trailing characters in numeric field '" + s + "'",
                      line_no);
    return v;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception&) {
    throw DataError("cannot parse numeric field '" + s + "'", line_no);
  }
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty dataset file", 1);
  const std::vector<std::string> head = split_csv_line(line);
  if (head.empty() || head[0] != "y")
    throw DataError("header must start with column 'y'", 1);

  Eigen::Index p = 0;
  std::size_t col = 1;
  while (col < head.size() &&
         head[col] == "z" + std::to_string(col)) {
    ++p;
    ++col;
  }
  if (p == 0) throw DataError("header has no z columns", 1);

  std::vector<double> grid_points;
  for (; col < head.size(); ++col) {
    if (head[col].rfind("x@", 0) != 0)
      throw DataError("unexpected header column '" + head[col] + "'", 1);
    grid_points.push_back(parse_double(head[col].substr(2), 1));
  }
  if (grid_points.size() < 2)
    throw DataError("header must define at least two x@ grid columns", 1);

  Eigen::VectorXd gp(static_cast<Eigen::Index>(grid_points.size()));
  for (std::size_t s = 0; s < grid_points.size(); ++s)
    gp[static_cast<Eigen::Index>(s)] = grid_points[s];
  std::optional<Grid> grid;
  try {
    grid.emplace(std::move(gp));
  } catch (const Error& e) {
    throw DataError(std::string("invalid grid in header: ") + e.what(), 1);
  }
  const Eigen::Index m = grid->size();

  std::vector<double> ys;
  std::vector<double> zrows, xrows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (static_cast<Eigen::Index>(f.size()) != 1 + p + m)
      throw DataError("expected " + std::to_string(1 + p + m) +
                          " fields, found " + std::to_string(f.size()),
                      line_no);
    ys.push_back(parse_double(f[0], line_no));
    for (Eigen::Index j = 0; j < p; ++j)
      zrows.push_back(parse_double(f[1 + j], line_no));
    for (Eigen::Index s = 0; s < m; ++s)
      xrows.push_back(parse_double(f[1 + p + s], line_no));
  }

  const Eigen::Index n = static_cast<Eigen::Index>(ys.size());
  if (n == 0) throw DataError("dataset has no observation rows", line_no);

  Eigen::VectorXd Y(n);
  Eigen::MatrixXd Z(n, p), X(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    Y[i] = ys[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < p; ++j)
      Z(i, j) = zrows[static_cast<std::size_t>(i * p + j)];
    for (Eigen::Index s = 0; s < m; ++s)
      X(i, s) = xrows[static_cast<std::size_t>(i * m + s)];
  }

  try {
    return Dataset(std::move(Z), std::move(Y),
                   FunctionalSample(*grid, std::move(X)));
  } catch (const Error& e) {
    throw DataError(std::string("inconsistent dataset: ") + e.what(), line_no);
  }
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return read_dataset_csv(in);
}

}  // namespace pflr
