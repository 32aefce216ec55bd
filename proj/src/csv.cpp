#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <vector>

#include "flab/csv.hpp"
#include "flab/svg.hpp"

namespace flab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

double parse_field(const std::string& field, std::size_t line_no, const char* name) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw parse_error("line " + std::to_string(line_no) + ": bad " + name + " '" + field + "'");
    return v;
}

std::vector<std::string> data_lines(const std::string& text, const char* header,
                                    std::size_t columns) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(std::move(line));
            start = i + 1;
        }
    }
    if (lines.empty()) throw parse_error("empty file");
    if (lines.front() != header)
        throw parse_error("line 1: expected header '" + std::string(header) + "'");
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (split(lines[i], ',').size() != columns)
            throw parse_error("line " + std::to_string(i + 1) + ": expected " +
                              std::to_string(columns) + " columns");
    return lines;
}

} // namespace

std::string format_double(double v) {
    // to_chars is locale-independent, so the decimal separator stays '.'.
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    require_internal(ec == std::errc{}, "double formatting failed");
    return {buf, ptr};
}

void write_samples_csv(const std::string& path, const SampledFunction& f) {
    std::string out = "t,re,im\n";
    for (std::int64_t j = 0; j < f.size(); ++j) {
        out += format_double(f.t(j));
        out += ',';
        out += format_double(f.value(j).real());
        out += ',';
        out += format_double(f.value(j).imag());
        out += '\n';
    }
    write_text_file(path, out);
}

SampledFunction read_samples_csv(const std::string& path) {
    const auto lines = data_lines(read_text_file(path), "t,re,im", 3);
    if (lines.size() < 3) throw parse_error("need at least two samples");
    std::vector<double> ts;
    std::vector<cplx> values;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        ts.push_back(parse_field(fields[0], i + 1, "t"));
        values.emplace_back(parse_field(fields[1], i + 1, "re"), parse_field(fields[2], i + 1, "im"));
    }
    // The grid must be uniform; re-derive it from the end points and verify.
    const double x0 = ts.front();
    const double x1 = ts.back();
    if (!(x1 > x0)) throw parse_error("t column must increase");
    const auto m = static_cast<std::int64_t>(ts.size());
    for (std::int64_t j = 0; j < m; ++j) {
        const double expect = x0 + (x1 - x0) * (static_cast<double>(j) / static_cast<double>(m - 1));
        if (std::abs(ts[static_cast<std::size_t>(j)] - expect) > 1e-9 * (x1 - x0))
            throw parse_error("line " + std::to_string(j + 2) + ": t column is not a uniform grid");
    }
    return {x0, x1, std::move(values)};
}

void write_series_csv(const std::string& path, const BoxCountSeries& series) {
    std::string out = "delta,count,log_delta,log_count\n";
    for (std::size_t i = 0; i < series.deltas.size(); ++i) {
        out += format_double(series.deltas[i]);
        out += ',';
        out += std::to_string(series.counts[i]);
        out += ',';
        out += format_double(std::log(series.deltas[i]));
        out += ',';
        out += format_double(std::log(static_cast<double>(series.counts[i])));
        out += '\n';
    }
    write_text_file(path, out);
}

BoxCountSeries read_series_csv(const std::string& path) {
    const auto lines = data_lines(read_text_file(path), "delta,count,log_delta,log_count", 4);
    BoxCountSeries series;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        series.deltas.push_back(parse_field(fields[0], i + 1, "delta"));
        const double count = parse_field(fields[1], i + 1, "count");
        if (count < 1.0 || count != std::floor(count))
            throw parse_error("line " + std::to_string(i + 1) + ": count must be a positive integer");
        series.counts.push_back(static_cast<std::int64_t>(count));
    }
    for (std::size_t i = 1; i < series.deltas.size(); ++i)
        if (!(series.deltas[i] < series.deltas[i - 1]))
            throw parse_error("delta column must strictly decrease");
    return series;
}

} // namespace flab
