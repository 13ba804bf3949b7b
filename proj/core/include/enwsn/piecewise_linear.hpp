#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace enwsn {

// Monotone piecewise-linear map defined by breakpoints with strictly
// increasing x. Evaluation interpolates linearly and clamps outside the range.
class PiecewiseLinear {
public:
    using Point = std::pair<double, double>;

    PiecewiseLinear() = default;
    // Throws ConfigError on fewer than two points or non-increasing x.
    explicit PiecewiseLinear(std::vector<Point> points);

    double operator()(double x) const;

    std::span<const Point> points() const { return points_; }
    bool non_decreasing() const;

    // Two-column CSV with a header line (e.g. `raw,value` or `lux,watts`).
    static PiecewiseLinear parse_csv(std::string_view doc);

private:
    std::vector<Point> points_;
};

}  // namespace enwsn
