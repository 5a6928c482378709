#pragma once

#include <string>
#include <vector>

namespace netwalk {

/// 12 significant digits, '.' decimal separator; round-trips every double the
/// pipeline emits at the precision the golden-file tests compare at.
std::string format_double(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const; // throws UsageError if absent
};

CsvTable read_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace netwalk
