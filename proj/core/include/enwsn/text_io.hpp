#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Small helpers shared by the CSV readers and writers.
namespace enwsn::text {

struct Line {
    std::size_t number;  // 1-based
    std::string_view text;
};

// Splits on '\n', strips a trailing '\r', skips blank lines.
std::vector<Line> lines(std::string_view doc);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_ws(std::string_view s);

// Strict full-field numeric parsing; throws ParseError on failure.
double parse_double(std::string_view field, std::size_t line);
long long parse_int(std::string_view field, std::size_t line);
bool try_parse_double(std::string_view field, double& out);

// Shortest decimal form that round-trips to the same double.
std::string format_exact(double v);
// printf("%.{digits}g").
std::string format_sig(double v, int digits = 6);
// printf("%.{decimals}f").
std::string format_fixed(double v, int decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace enwsn::text
