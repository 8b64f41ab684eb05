// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace authec {

/// Shortest form that keeps 17 significant digits ("%.17g").
std::string format_double(double v);

/// Comma-separated output with a header row. Throws ConfigError if the file
/// cannot be opened.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(std::uint64_t v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(long v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(std::string_view v);
    CsvWriter& cell(const char* v) { return cell(std::string_view(v)); }
    void end_row();

private:
    void separator();

    std::ofstream out_;
    std::size_t columns_;
    std::size_t filled_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column; throws ConfigError if absent.
    std::size_t column(std::string_view name) const;
    std::vector<double> numeric(std::string_view name) const;
};

/// Reads a headered CSV file. Blank lines are skipped.
CsvTable read_csv(const std::string& path);

/// Reads one number per line (no header); blank lines and lines starting with
/// '#' are skipped. A non-numeric first line is treated as a header.
std::vector<double> read_number_column(const std::string& path);

double parse_double(std::string_view text);

}  // namespace authec
