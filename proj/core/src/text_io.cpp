#include "enwsn/text_io.hpp"

#include "enwsn/error.hpp"
#include "enwsn/piecewise_linear.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace enwsn::text {

std::vector<Line> lines(std::string_view doc) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= doc.size()) {
        const auto nl = doc.find('\n', pos);
        const auto end = nl == std::string_view::npos ? doc.size() : nl;
        auto line = doc.substr(pos, end - pos);
        ++number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim(line).empty()) out.push_back({number, line});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto i = s.find(sep, pos);
        if (i == std::string_view::npos) {
            out.push_back(trim(s.substr(pos)));
            return out;
        }
        out.push_back(trim(s.substr(pos, i - pos)));
        pos = i + 1;
    }
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        if (pos >= s.size()) break;
        auto e = pos;
        while (e < s.size() && s[e] != ' ' && s[e] != '\t') ++e;
        out.push_back(s.substr(pos, e - pos));
        pos = e;
    }
    return out;
}

bool try_parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

double parse_double(std::string_view field, std::size_t line) {
    double v = 0.0;
    if (!try_parse_double(field, v)) throw ParseError("expected a number, got '" + std::string(field) + "'", line);
    return v;
}

long long parse_int(std::string_view field, std::size_t line) {
    field = trim(field);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("expected an integer, got '" + std::string(field) + "'", line);
    return v;
}

std::string format_exact(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_sig(double v, int digits) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*g", digits, v);
    return buf.data();
}

std::string format_fixed(double v, int decimals) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, v);
    return buf.data();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("no such input: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace enwsn::text

namespace enwsn {

PiecewiseLinear::PiecewiseLinear(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw ConfigError("piecewise-linear map needs at least 2 breakpoints");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].first > points_[i - 1].first))
            throw ConfigError("breakpoint x values must be strictly increasing");
    }
}

double PiecewiseLinear::operator()(double x) const {
    if (points_.empty()) throw ConfigError("empty piecewise-linear map");
    if (x <= points_.front().first) return points_.front().second;
    if (x >= points_.back().first) return points_.back().second;
    const auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                     [](double lhs, const Point& p) { return lhs < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (x - lo.first) / (hi.first - lo.first);
    return lo.second + f * (hi.second - lo.second);
}

bool PiecewiseLinear::non_decreasing() const {
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (points_[i].second < points_[i - 1].second) return false;
    return true;
}

PiecewiseLinear PiecewiseLinear::parse_csv(std::string_view doc) {
    std::vector<Point> pts;
    bool header_seen = false;
    for (const auto& line : text::lines(doc)) {
        const auto t = text::trim(line.text);
        if (t.front() == '#') continue;
        const auto fields = text::split(t, ',');
        if (fields.size() != 2) throw ParseError("expected 2 fields", line.number);
        double x = 0.0;
        if (!header_seen && !text::try_parse_double(fields[0], x)) {
            header_seen = true;
            continue;
        }
        header_seen = true;
        pts.emplace_back(text::parse_double(fields[0], line.number), text::parse_double(fields[1], line.number));
    }
    return PiecewiseLinear(std::move(pts));
}

}  // namespace enwsn
