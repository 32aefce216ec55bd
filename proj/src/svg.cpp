#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "flab/svg.hpp"

namespace flab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMargin = 60.0;
// Dense inputs are thinned to at most this many polyline vertices.
constexpr std::int64_t kMaxVertices = 16384;

std::string fmt(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    require_internal(ec == std::errc{}, "svg number formatting failed");
    return {buf, ptr};
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;

    double px(double x) const {
        return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2.0 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2.0 * kMargin);
    }
};

Frame padded_frame(double x_lo, double x_hi, double y_lo, double y_hi) {
    if (y_hi - y_lo <= 0.0) {
        y_lo -= 1.0;
        y_hi += 1.0;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }
    return {x_lo, x_hi, y_lo, y_hi};
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

std::string axes(const Frame& fr) {
    std::string out = "<path d=\"M " + fmt(kMargin) + " " + fmt(kMargin) + " L " + fmt(kMargin) +
                      " " + fmt(kHeight - kMargin) + " L " + fmt(kWidth - kMargin) + " " +
                      fmt(kHeight - kMargin) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
    auto label = [](double x, double y, const std::string& text, const char* anchor) {
        return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"12\" font-family=\"monospace\" text-anchor=\"" + anchor + "\">" + text + "</text>\n";
    };
    out += label(kMargin, kHeight - kMargin + 16.0, fmt(fr.x_lo), "middle");
    out += label(kWidth - kMargin, kHeight - kMargin + 16.0, fmt(fr.x_hi), "middle");
    out += label(kMargin - 6.0, kHeight - kMargin, fmt(fr.y_lo), "end");
    out += label(kMargin - 6.0, kMargin + 4.0, fmt(fr.y_hi), "end");
    return out;
}

std::string polyline(const SampledFunction& f, bool imag, const Frame& fr, const char* color) {
    const std::int64_t stride = std::max<std::int64_t>(1, (f.size() + kMaxVertices - 1) / kMaxVertices);
    std::string out = "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1\" points=\"";
    for (std::int64_t j = 0; j < f.size(); j += stride) {
        const double v = imag ? f.value(j).imag() : f.value(j).real();
        out += fmt(fr.px(f.t(j))) + "," + fmt(fr.py(v)) + " ";
    }
    const double v_last = imag ? f.value(f.size() - 1).imag() : f.value(f.size() - 1).real();
    out += fmt(fr.px(f.x1())) + "," + fmt(fr.py(v_last));
    out += "\"/>\n";
    return out;
}

} // namespace

std::string render_samples_svg(const SampledFunction& f) {
    bool has_imag = false;
    double y_lo = f.value(0).real(), y_hi = y_lo;
    for (const cplx& v : f.values()) {
        y_lo = std::min(y_lo, v.real());
        y_hi = std::max(y_hi, v.real());
        if (v.imag() != 0.0) {
            has_imag = true;
            y_lo = std::min(y_lo, v.imag());
            y_hi = std::max(y_hi, v.imag());
        }
    }
    const Frame fr = padded_frame(f.x0(), f.x1(), y_lo, y_hi);

    std::string out = svg_open();
    out += axes(fr);
    out += polyline(f, false, fr, "#1f77b4");
    if (has_imag) out += polyline(f, true, fr, "#ff7f0e");
    out += "</svg>\n";
    return out;
}

std::string render_series_svg(const BoxCountSeries& series) {
    require_input(series.deltas.size() == series.counts.size(), "series sizes disagree");
    require_input(series.deltas.size() >= 2, "need at least two scales");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.deltas.size(); ++i) {
        xs.push_back(-std::log(series.deltas[i]));
        ys.push_back(std::log(static_cast<double>(series.counts[i])));
    }
    const auto [x_lo_it, x_hi_it] = std::minmax_element(xs.begin(), xs.end());
    const auto [y_lo_it, y_hi_it] = std::minmax_element(ys.begin(), ys.end());
    const Frame fr = padded_frame(*x_lo_it, *x_hi_it, *y_lo_it, *y_hi_it);

    // Least-squares fit over the whole series, drawn as the single line.
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    const double intercept = my - slope * mx;

    std::string out = svg_open();
    out += axes(fr);
    out += "<line x1=\"" + fmt(fr.px(*x_lo_it)) + "\" y1=\"" +
           fmt(fr.py(slope * *x_lo_it + intercept)) + "\" x2=\"" + fmt(fr.px(*x_hi_it)) +
           "\" y2=\"" + fmt(fr.py(slope * *x_hi_it + intercept)) +
           "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += "<circle cx=\"" + fmt(fr.px(xs[i])) + "\" cy=\"" + fmt(fr.py(ys[i])) +
               "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    out += "</svg>\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require_input(out.good(), "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    require_input(out.good(), "write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require_input(in.good(), "cannot read '" + path + "'");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    require_input(!in.bad(), "read failed for '" + path + "'");
    return content;
}

} // namespace flab
