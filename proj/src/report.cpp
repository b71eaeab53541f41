#include "mswave/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace mswave::report {

Json complex_json(const Complex& z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + temp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("short write to '" + temp.string() + "'");
        }
    }
    fs::rename(temp, target);
}

void write_json_atomic(const std::string& path, const Json& doc) {
    write_text_atomic(path, doc.dump(2) + "\n");
}

std::string csv_cell(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
    add_row(header);
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw std::invalid_argument("csv row width does not match the header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            text_ += ',';
        }
        text_ += cells[i];
    }
    text_ += '\n';
}

}  // namespace mswave::report
