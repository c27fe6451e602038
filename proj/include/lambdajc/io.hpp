#pragma once

#include <string>
#include <vector>

namespace lambdajc::io {

inline constexpr const char* kCodeVersion = "lambdajc 0.1.0";

// Rectangular numeric table with named columns; the on-disk format is CSV
// with a header row, UNIX newlines and floats printed to 15 significant
// digits (so a parse round-trip stays within 1e-12 relative).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_csv(const Table& table);
Table parse_csv(const std::string& text);

// Single-writer atomic file replacement (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& content);

void emit_csv(const Table& table, const std::string& path);

}  // namespace lambdajc::io
