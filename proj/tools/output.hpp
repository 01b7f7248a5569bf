#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace cli {

// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(const std::vector<double>& values);
    void write(const std::filesystem::path& path) const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

// Sorted keys, two-space indent, trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace cli
