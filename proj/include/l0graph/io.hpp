#pragma once

#include "l0graph/types.hpp"

#include <optional>
#include <string>

namespace l0graph {

/// A CSV dataset: samples are rows in the file, stored column-major here.
struct CsvData {
  DataMatrix X;
  std::optional<Eigen::VectorXi> labels;  ///< present iff a label column was requested
  std::vector<std::string> label_names;   ///< label id -> original token
};

/// Loads a CSV file of one sample per row. If labels_col is set, that column
/// (0-based; -1 means the last column) holds class labels, which may be
/// arbitrary tokens; they are mapped to ids 0..k-1 in order of first
/// appearance. A header row is detected (any non-numeric field outside the
/// label column) and skipped. Ragged rows, unparseable numeric fields,
/// missing files, and datasets with fewer than two samples raise DataError
/// naming the offending line; an out-of-range labels_col is a usage error
/// (std::invalid_argument).
CsvData load_csv(const std::string& path, std::optional<int> labels_col);

/// Writes a symmetric weight matrix as "source,target,weight" lines for the
/// upper-triangle nonzeros, ascending.
void write_edge_list(const std::string& path, const Eigen::MatrixXd& W);

void write_text_file(const std::string& path, const std::string& content);

/// Shortest round-trippable decimal formatting used by every report writer
/// (printf %.17g), so identical runs serialize identically.
std::string format_double(double value);

}  // namespace l0graph
