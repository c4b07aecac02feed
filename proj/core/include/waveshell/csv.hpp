#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace waveshell {

/// CSV writer: UTF-8, comma separated, one schema comment line followed by a
/// header row; floats rendered at 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& schema,
              const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);
    void row_raw(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t columns_;
    std::string path_;
};

}  // namespace waveshell
