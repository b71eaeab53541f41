#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mswave/types.hpp"

namespace mswave::report {

// Key order is preserved so identical inputs give byte-identical files.
using Json = nlohmann::ordered_json;

inline constexpr const char* SCHEMA_VERSION = "1";

Json complex_json(const Complex& z);

// All writers go through a temp file in the target directory followed by a
// rename, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);
void write_json_atomic(const std::string& path, const Json& doc);

// CSV cells at 12 significant digits.
std::string csv_cell(double v);

class CsvBuilder {
  public:
    explicit CsvBuilder(const std::vector<std::string>& header);

    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }

  private:
    std::string text_;
    std::size_t columns_;
};

}  // namespace mswave::report
