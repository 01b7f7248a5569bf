#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw std::logic_error("CSV row width differs from header");
    rows_.push_back(values);
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << value.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace cli
