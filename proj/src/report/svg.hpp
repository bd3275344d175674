// Hand-rolled SVG charts. Output is a pure function of the inputs: fixed
// canvas, fixed palette, fixed-precision coordinates, no timestamps or
// random ids, so identical runs produce identical bytes.
#pragma once

#include <string>
#include <vector>

namespace heartml::report {

struct Series {
    std::string name;
    std::vector<double> ys;
};

std::string svg_bar_chart(const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& title,
                          const std::string& y_label);

// All series share the x coordinates.
std::string svg_line_chart(const std::vector<double>& xs,
                           const std::vector<Series>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label);

} // namespace heartml::report
