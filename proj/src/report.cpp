#include "tfsdr/bench.hpp"
#include "tfsdr/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace tfsdr {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SdrError(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw SdrError(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_csv(const std::vector<ReplicateResult>& results, const std::vector<SummaryStats>& stats) {
    std::string out = "replicate,method,distance,iterations,converged\n";
    if (results.empty()) return out;
    for (const auto& r : results) {
        out += std::to_string(r.replicate) + ',' + std::string(to_string(r.method)) + ',' + num(r.distance) + ',' +
               std::to_string(r.iterations) + ',' + (r.converged ? "1" : "0") + '\n';
    }
    out += "# summary\n";
    out += "method,mean,median,q1,q3,min,max,converged_rate\n";
    for (const auto& s : stats) {
        out += std::string(to_string(s.method)) + ',' + num(s.mean) + ',' + num(s.median) + ',' + num(s.q1) + ',' +
               num(s.q3) + ',' + num(s.min) + ',' + num(s.max) + ',' + num(s.converged_rate) + '\n';
    }
    return out;
}

void write_csv(const std::vector<ReplicateResult>& results, const std::vector<SummaryStats>& stats,
               const std::filesystem::path& path) {
    write_text(path, format_csv(results, stats));
}

std::string render_boxplot_svg(const std::vector<SummaryStats>& stats, const std::vector<ReplicateResult>& results) {
    if (stats.empty()) throw SdrError(ErrorCode::InvalidInput, "boxplot needs at least one method");

    constexpr double left = 60.0;
    constexpr double top = 20.0;
    constexpr double plot_h = 300.0;
    constexpr double slot = 90.0;
    const double width = left + slot * static_cast<double>(stats.size()) + 20.0;
    const double height = top + plot_h + 50.0;

    double y_max = 0.0;
    for (const auto& r : results) {
        if (!r.failed()) y_max = std::max(y_max, r.distance);
    }
    for (const auto& s : stats) {
        if (!s.all_failed()) y_max = std::max(y_max, s.mean);
    }
    y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;
    const auto ypix = [&](double v) { return top + plot_h * (1.0 - v / y_max); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) + "\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
           fixed(top + plot_h) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = y_max * t / 4.0;
        const double y = ypix(v);
        svg += "<line x1=\"" + fixed(left - 4) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
               fixed(y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(y + 4) + "\" text-anchor=\"end\">" + fixed(v) +
               "</text>\n";
    }
    svg += "<text x=\"14\" y=\"" + fixed(top + plot_h / 2) + "\" transform=\"rotate(-90 14 " +
           fixed(top + plot_h / 2) + ")\" text-anchor=\"middle\">distance</text>\n";

    for (std::size_t k = 0; k < stats.size(); ++k) {
        const SummaryStats& s = stats[k];
        const double cx = left + slot * (static_cast<double>(k) + 0.5);
        svg += "<text x=\"" + fixed(cx) + "\" y=\"" + fixed(top + plot_h + 20) + "\" text-anchor=\"middle\">" +
               std::string(to_string(s.method)) + "</text>\n";
        if (s.all_failed()) continue;

        std::vector<double> values;
        for (const auto& r : results) {
            if (r.method == s.method && !r.failed()) values.push_back(r.distance);
        }
        std::sort(values.begin(), values.end());
        const double iqr = s.q3 - s.q1;
        const double lo_fence = s.q1 - 1.5 * iqr;
        const double hi_fence = s.q3 + 1.5 * iqr;
        double whisk_lo = s.q1;
        double whisk_hi = s.q3;
        for (double v : values) {
            if (v >= lo_fence) whisk_lo = std::min(whisk_lo, v);
            if (v <= hi_fence) whisk_hi = std::max(whisk_hi, v);
        }
        const double half = 25.0;
        svg += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(ypix(whisk_lo)) + "\" x2=\"" + fixed(cx) +
               "\" y2=\"" + fixed(ypix(s.q1)) + "\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(ypix(s.q3)) + "\" x2=\"" + fixed(cx) + "\" y2=\"" +
               fixed(ypix(whisk_hi)) + "\" stroke=\"black\"/>\n";
        for (double w : {whisk_lo, whisk_hi}) {
            svg += "<line x1=\"" + fixed(cx - half / 2) + "\" y1=\"" + fixed(ypix(w)) + "\" x2=\"" +
                   fixed(cx + half / 2) + "\" y2=\"" + fixed(ypix(w)) + "\" stroke=\"black\"/>\n";
        }
        svg += "<rect x=\"" + fixed(cx - half) + "\" y=\"" + fixed(ypix(s.q3)) + "\" width=\"" + fixed(2 * half) +
               "\" height=\"" + fixed(ypix(s.q1) - ypix(s.q3)) + "\" fill=\"#cfe0f3\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + fixed(cx - half) + "\" y1=\"" + fixed(ypix(s.median)) + "\" x2=\"" +
               fixed(cx + half) + "\" y2=\"" + fixed(ypix(s.median)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        for (double v : values) {
            if (v < lo_fence || v > hi_fence) {
                svg += "<circle cx=\"" + fixed(cx) + "\" cy=\"" + fixed(ypix(v)) +
                       "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
            }
        }
        const double my = ypix(s.mean);
        svg += "<polygon points=\"" + fixed(cx) + "," + fixed(my - 4) + " " + fixed(cx + 4) + "," + fixed(my) + " " +
               fixed(cx) + "," + fixed(my + 4) + " " + fixed(cx - 4) + "," + fixed(my) + "\" fill=\"#c0392b\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_boxplot_svg(const std::vector<SummaryStats>& stats, const std::vector<ReplicateResult>& results,
                      const std::filesystem::path& path) {
    write_text(path, render_boxplot_svg(stats, results));
}

}  // namespace tfsdr
