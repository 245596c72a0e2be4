#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace bsraman {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    // Index of a column; throws std::out_of_range if absent.
    std::size_t column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
};

// '#'-prefixed "key=value" header lines, a column header, then rows with
// 12 significant digits. Output depends only on the arguments.
void write_csv(const std::filesystem::path& path, const Metadata& meta, const Table& table);

struct CsvFile {
    Metadata meta;
    Table table;
};

CsvFile read_csv(const std::filesystem::path& path);

}  // namespace bsraman
