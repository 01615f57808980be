#pragma once

// CSV export and self-contained SVG line plots.
//
// CSV: header "t,<name>", then one record per sample with both values printed
// to 17 significant digits, '\n' line endings.
// SVG: 800x500 viewBox, one polyline per trace, auto-ranged axes with a 5%
// margin, six tick labels per axis, no fonts, styles or scripts.

#include <span>
#include <string>
#include <vector>

namespace dqed {

struct Series2D {
    std::string name; // column / trace label, e.g. "W" or "V"
    std::vector<double> t;
    std::vector<double> y;
};

std::string format_csv(const Series2D& s);
void write_csv(const std::string& path, const Series2D& s);

/// Parses text produced by format_csv. Throws std::runtime_error on
/// malformed input.
Series2D parse_csv(const std::string& text);
Series2D read_csv(const std::string& path);

struct SvgOptions {
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    bool logy = false;
};

/// Renders one or more traces that share the axes. The output is a pure
/// function of the inputs. Non-positive values are clamped to the smallest
/// positive sample when logy is set.
std::string render_svg(std::span<const Series2D> traces, const SvgOptions& opts);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

} // namespace dqed
