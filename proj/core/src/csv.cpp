#include "agfd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace agfd {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values) {
    if (static_cast<Eigen::Index>(header.size()) != values.cols())
        throw InvalidInputError("write_matrix_csv: header size does not match column count");

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out << ',';
            out << header[i];
        }
        out << '\n';
        for (Eigen::Index r = 0; r < values.rows(); ++r) {
            for (Eigen::Index c = 0; c < values.cols(); ++c) {
                if (c) out << ',';
                out << format_double(values(r, c));
            }
            out << '\n';
        }
        if (!out) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                      "': " + ec.message());
    }
}

CsvTable read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

    auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream stream(line);
        while (std::getline(stream, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        return fields;
    };

    std::string line;
    if (!std::getline(in, line))
        throw ParseError("'" + path.string() + "': empty file, expected a header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CsvTable table;
    table.header = split(line);
    const std::size_t cols = table.header.size();
    if (cols == 0) throw ParseError("'" + path.string() + "': empty header row");

    std::vector<double> data;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != cols)
            throw ParseError("'" + path.string() + "' line " + std::to_string(rows + 2) + ": got " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(cols));
        for (const auto& f : fields) {
            std::size_t consumed = 0;
            double v = 0.0;
            try {
                v = std::stod(f, &consumed);
            } catch (const std::exception&) {
                throw ParseError("'" + path.string() + "' line " + std::to_string(rows + 2) +
                                 ": '" + f + "' is not a number");
            }
            if (consumed != f.size())
                throw ParseError("'" + path.string() + "' line " + std::to_string(rows + 2) +
                                 ": trailing characters in '" + f + "'");
            data.push_back(v);
        }
        ++rows;
    }

    table.values.resize(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) table.values(r, c) = data[r * cols + c];
    return table;
}

}  // namespace agfd
