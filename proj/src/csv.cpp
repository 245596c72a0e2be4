#include "bsraman/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "bsraman/error.hpp"

namespace bsraman {

std::size_t Table::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.at(c));
    return v;
}

void write_csv(const std::filesystem::path& path, const Metadata& meta, const Table& table) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    fmt::memory_buffer buf;
    for (const auto& [k, v] : meta) fmt::format_to(std::back_inserter(buf), "# {}={}\n", k, v);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        fmt::format_to(std::back_inserter(buf), "{}{}", i ? "," : "", table.columns[i]);
    }
    buf.push_back('\n');
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            fmt::format_to(std::back_inserter(buf), "{}{:.12g}", i ? "," : "", row[i]);
        }
        buf.push_back('\n');
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw Error(fmt::format("write to '{}' failed", path.string()));
}

CsvFile read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
    CsvFile f;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) f.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!header) {
            while (std::getline(ss, cell, ',')) f.table.columns.push_back(cell);
            header = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        f.table.rows.push_back(std::move(row));
    }
    return f;
}

}  // namespace bsraman
