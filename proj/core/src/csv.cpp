#include "waveshell/csv.hpp"

#include "waveshell/config.hpp"
#include "waveshell/errors.hpp"

namespace waveshell {

CsvWriter::CsvWriter(const std::string& path, const std::string& schema,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), columns_(columns.size()), path_(path) {
    if (!out_) throw Error("CsvWriter: cannot open '" + path + "' for writing");
    out_ << "# schema: " << schema << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_)
        throw Error("CsvWriter: row width " + std::to_string(values.size()) + " != header width " +
                    std::to_string(columns_) + " in " + path_);
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format_double(values[i]);
    out_ << "\n";
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw Error("CsvWriter: row width " + std::to_string(cells.size()) + " != header width " +
                    std::to_string(columns_) + " in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

}  // namespace waveshell
