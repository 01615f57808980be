#include "dqed/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dqed {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr int kTicks = 6;

const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(const char* spec, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo, hi;
};

// Expands [lo, hi] by 5% on each side; degenerate ranges get a unit width.
Range padded(double lo, double hi)
{
    if (!(hi > lo)) {
        const double half = lo == 0.0 ? 0.5 : 0.5 * std::abs(lo);
        return {lo - half, hi + half};
    }
    const double m = 0.05 * (hi - lo);
    return {lo - m, hi + m};
}

} // namespace

std::string format_csv(const Series2D& s)
{
    if (s.t.size() != s.y.size()) throw std::invalid_argument("format_csv: size mismatch");
    std::string out = "t," + s.name + "\n";
    out.reserve(out.size() + s.t.size() * 50);
    char buf[96];
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.t[i], s.y[i]);
        out += buf;
    }
    return out;
}

void write_csv(const std::string& path, const Series2D& s)
{
    write_text(path, format_csv(s));
}

Series2D parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,", 0) != 0) {
        throw std::runtime_error("parse_csv: missing 't,<name>' header");
    }
    Series2D s;
    s.name = line.substr(2);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("parse_csv: row " + std::to_string(row) + " has no comma");
        try {
            std::size_t used = 0;
            const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
            const double t = std::stod(a, &used);
            if (used != a.size()) throw std::invalid_argument("t");
            const double y = std::stod(b, &used);
            if (used != b.size()) throw std::invalid_argument("y");
            s.t.push_back(t);
            s.y.push_back(y);
        } catch (const std::logic_error&) {
            throw std::runtime_error("parse_csv: row " + std::to_string(row) + " is not numeric");
        }
    }
    return s;
}

Series2D read_csv(const std::string& path)
{
    return parse_csv(read_text(path));
}

std::string render_svg(std::span<const Series2D> traces, const SvgOptions& opts)
{
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    double ymin = tmin, ymax = -tmin;
    double min_positive = std::numeric_limits<double>::infinity();
    for (const auto& s : traces) {
        if (s.t.size() != s.y.size()) throw std::invalid_argument("render_svg: size mismatch");
        for (double v : s.y)
            if (v > 0.0) min_positive = std::min(min_positive, v);
    }
    if (opts.logy && !std::isfinite(min_positive)) min_positive = 1.0;
    auto ymap = [&](double v) { return opts.logy ? std::log10(std::max(v, min_positive)) : v; };

    for (const auto& s : traces) {
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            tmin = std::min(tmin, s.t[i]);
            tmax = std::max(tmax, s.t[i]);
            const double v = ymap(s.y[i]);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(tmin)) tmin = 0.0, tmax = 1.0, ymin = 0.0, ymax = 1.0;
    const Range xr = padded(tmin, tmax);
    const Range yr = padded(ymin, ymax);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double t) { return kLeft + (t - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double v) { return kTop + (yr.hi - v) / (yr.hi - yr.lo) * ph; };

    std::string o;
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" width=\"800\" height=\"500\">\n";
    o += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    o += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" + fmt("%.2f", pw) +
         "\" height=\"" + fmt("%.2f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k < kTicks; ++k) {
        const double f = static_cast<double>(k) / (kTicks - 1);
        const double tx = xr.lo + f * (xr.hi - xr.lo);
        const double x = px(tx);
        o += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" + fmt("%.2f", x) +
             "\" y2=\"" + fmt("%.2f", kTop + ph + 5.0) + "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", kTop + ph + 20.0) +
             "\" text-anchor=\"middle\" font-size=\"12\">" + fmt("%.4g", tx) + "</text>\n";

        const double vy = yr.lo + f * (yr.hi - yr.lo);
        const double y = py(vy);
        const double label = opts.logy ? std::pow(10.0, vy) : vy;
        o += "<line x1=\"" + fmt("%.2f", kLeft - 5.0) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" + fmt("%.2f", kLeft) +
             "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + fmt("%.2f", kLeft - 8.0) + "\" y=\"" + fmt("%.2f", y + 4.0) +
             "\" text-anchor=\"end\" font-size=\"12\">" + fmt("%.4g", label) + "</text>\n";
    }

    if (!opts.title.empty()) {
        o += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + escape_xml(opts.title) + "</text>\n";
    }
    o += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"492\" text-anchor=\"middle\" font-size=\"12\">" +
         escape_xml(opts.x_label) + "</text>\n";
    if (!opts.y_label.empty()) {
        o += "<text x=\"16\" y=\"" + fmt("%.2f", kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"12\" " +
             "transform=\"rotate(-90 16 " + fmt("%.2f", kTop + ph / 2) + ")\">" + escape_xml(opts.y_label) +
             "</text>\n";
    }

    std::size_t idx = 0;
    for (const auto& s : traces) {
        o += "<polyline fill=\"none\" stroke=\"";
        o += kColours[idx++ % std::size(kColours)];
        o += "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            if (i) o += ' ';
            o += fmt("%.2f", px(s.t[i]));
            o += ',';
            o += fmt("%.2f", py(ymap(s.y[i])));
        }
        o += "\"/>\n";
    }
    o += "</svg>\n";
    return o;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace dqed
