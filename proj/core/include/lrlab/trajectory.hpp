#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lrlab {

/// Column-named time series produced by every dynamics run.
/// CSV output uses full double precision scientific notation with a
/// mandatory header row.
struct Trajectory {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  explicit Trajectory(std::vector<std::string> cols = {})
      : columns(std::move(cols)) {}

  void add_row(std::vector<double> row);
  std::size_t size() const { return rows.size(); }

  int column_index(std::string_view name) const;  // -1 when absent
  std::vector<double> column(std::string_view name) const;

  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;
  static Trajectory read_csv_file(const std::string& path);
};

/// "%.17e" — enough digits to round-trip a double exactly.
std::string format_full(double v);

}  // namespace lrlab
