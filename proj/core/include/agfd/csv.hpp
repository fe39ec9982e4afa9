#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

#include "agfd/errors.hpp"

namespace agfd {

// CSV conventions: comma separated, one header row, doubles written with
// 17 significant digits so values round-trip losslessly.

struct CsvTable {
    std::vector<std::string> header;
    Eigen::MatrixXd values;
};

std::string format_double(double value);

// Writes header + matrix. Throws IoError on failure; never leaves a
// partial file behind (writes to a temp file, then renames).
void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values);

// Reads a numeric CSV with one header row. All data rows must have the
// same number of fields as the header.
CsvTable read_matrix_csv(const std::filesystem::path& path);

}  // namespace agfd
