#pragma once

#include <string>
#include <vector>

namespace hyperdecay::cli {

struct ChartSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

// log-log line chart; non-positive points are dropped
std::string loglog_chart_svg(const std::string& title, const std::vector<ChartSeries>& series,
                             const std::string& x_label = "t", const std::string& y_label = "norm");

}  // namespace hyperdecay::cli
