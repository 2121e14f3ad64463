#include "lrlab/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lrlab {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

void Trajectory::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("trajectory: row width does not match header");
  rows.push_back(std::move(row));
}

int Trajectory::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> Trajectory::column(std::string_view name) const {
  const int idx = column_index(name);
  if (idx < 0)
    throw std::invalid_argument("trajectory: no column named " +
                                std::string(name));
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[idx]);
  return out;
}

void Trajectory::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_full(row[i]);
    }
    out << '\n';
  }
}

void Trajectory::write_csv_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("trajectory: cannot open " + path);
  write_csv(out);
}

Trajectory Trajectory::read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("trajectory: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("trajectory: empty csv " + path);
  Trajectory traj;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) traj.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(traj.columns.size());
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    traj.add_row(std::move(row));
  }
  return traj;
}

}  // namespace lrlab
