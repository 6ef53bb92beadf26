#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace pushrec {

struct SvgSeries {
    std::string label;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    bool dashed = false;
};

struct SvgOptions {
    int width = 900;
    int height = 600;
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Self-contained SVG document: axes with ticks, one polyline per series,
/// a legend when labels are set. Output is deterministic for fixed input.
std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& options);

}  // namespace pushrec
