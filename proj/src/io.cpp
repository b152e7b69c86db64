#include "l0graph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace l0graph {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && (std::isspace(static_cast<unsigned char>(s[begin])))) ++begin;
  while (end > begin && (std::isspace(static_cast<unsigned char>(s[end - 1])))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

bool parse_number(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

}  // namespace

CsvData load_csv(const std::string& path, std::optional<int> labels_col) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw DataError("'" + path + "' has no data rows");

  const int field_count = static_cast<int>(split_fields(lines[0]).size());
  int label_index = -1;
  if (labels_col) {
    label_index = *labels_col < 0 ? field_count + *labels_col : *labels_col;
    if (label_index < 0 || label_index >= field_count) {
      throw std::invalid_argument("label column " + std::to_string(*labels_col) +
                                  " is out of range for " +
                                  std::to_string(field_count) + " columns");
    }
    if (field_count < 2) {
      throw DataError("'" + path + "' has no feature columns besides labels");
    }
  }

  // Header row: any non-numeric field outside the label column.
  std::size_t first_row = 0;
  {
    const std::vector<std::string> fields = split_fields(lines[0]);
    for (int j = 0; j < field_count; ++j) {
      double ignored;
      if (j != label_index && !parse_number(fields[j], ignored)) {
        first_row = 1;
        break;
      }
    }
  }
  if (first_row >= lines.size()) throw DataError("'" + path + "' has no data rows");

  const int feature_count = labels_col ? field_count - 1 : field_count;
  const int sample_count = static_cast<int>(lines.size() - first_row);
  if (sample_count < 2) {
    throw DataError("'" + path + "' has " + std::to_string(sample_count) +
                    " samples; need at least 2");
  }

  Eigen::MatrixXd X(feature_count, sample_count);
  Eigen::VectorXi labels(sample_count);
  std::vector<std::string> names;

  for (int r = 0; r < sample_count; ++r) {
    const std::size_t line_number = first_row + r + 1;  // 1-based, as in editors
    const std::vector<std::string> fields = split_fields(lines[first_row + r]);
    if (static_cast<int>(fields.size()) != field_count) {
      throw DataError("line " + std::to_string(line_number) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(field_count));
    }
    int feature = 0;
    for (int j = 0; j < field_count; ++j) {
      if (j == label_index) {
        const std::string& token = fields[j];
        const auto found = std::find(names.begin(), names.end(), token);
        if (found == names.end()) {
          labels(r) = static_cast<int>(names.size());
          names.push_back(token);
        } else {
          labels(r) = static_cast<int>(found - names.begin());
        }
        continue;
      }
      double value;
      if (!parse_number(fields[j], value)) {
        throw DataError("line " + std::to_string(line_number) + ", column " +
                        std::to_string(j + 1) + ": cannot parse '" + fields[j] +
                        "' as a number");
      }
      X(feature++, r) = value;
    }
  }

  CsvData out;
  out.X = DataMatrix(std::move(X));
  if (labels_col) {
    out.labels = std::move(labels);
    out.label_names = std::move(names);
  }
  return out;
}

void write_edge_list(const std::string& path, const Eigen::MatrixXd& W) {
  std::ostringstream text;
  text << "source,target,weight\n";
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < W.cols(); ++j) {
      if (W(i, j) != 0.0) {
        text << i << ',' << j << ',' << format_double(W(i, j)) << '\n';
      }
    }
  }
  write_text_file(path, text.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("failed while writing '" + path + "'");
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace l0graph
