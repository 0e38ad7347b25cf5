#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selbias/model.hpp"

namespace selbias {

// Reference bias (MSE) pair; mse absent for single-valued cells.
struct ReferenceCell {
  double value = 0.0;
  std::optional<double> mse;
};

struct TableCell {
  std::string column;
  std::optional<double> observed;      // absent when the cell was not run
  std::optional<double> observed_mse;
  std::optional<double> observed_se;
  std::optional<ReferenceCell> reference;
  std::optional<double> tolerance;     // about 4 Monte Carlo SE at the R used
  std::uint64_t R = 0;
  double seconds = 0.0;                // wall time; kept out of the CSV
};

struct TableRow {
  std::string group;  // e.g. "S1"
  std::string key;    // e.g. "(1, 1, 1.2)" or "B=80"
  std::vector<TableCell> cells;
};

struct ReproducedTable {
  std::string name;
  std::string title;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
  std::vector<std::string> notes;
  std::uint64_t R = 0;         // replications used for single/double columns
  std::uint64_t triple_R = 0;  // replications used for triple columns (0 if none)
  double seconds = 0.0;
};

struct ReproduceOptions {
  bool quick = false;
  std::optional<std::uint64_t> R;         // replications for single/double columns
  std::optional<std::uint64_t> triple_R;  // replications for triple-bootstrap columns
  std::uint64_t seed = 20211;
  unsigned workers = 1;
  // Restricts a table to rows whose key contains this text (empty = all).
  std::string row_filter;
};

std::vector<std::string> table_names();

// AWARD-5 Stage 1 summary statistics (seven dulaglutide doses); the same
// values ship as data/award5.csv.
Dataset award5_dataset();

// Throws ValidationError on unknown names.
ReproducedTable reproduce_table(const std::string& name, const ReproduceOptions& options);

// CSV: one line per cell with observed, reference and |observed - reference| columns.
// Contains no timing data, so it is byte-identical across worker counts.
std::string table_csv(const ReproducedTable& table);
std::string table_markdown(const ReproducedTable& table);

}  // namespace selbias
