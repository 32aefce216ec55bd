// Command-line front end; talks to the library exclusively through the C API.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fractal_lab.h"

namespace {

int to_exit_code(fl_status status) {
    switch (status) {
    case FL_OK: return 0;
    case FL_ERR_INVALID:
    case FL_ERR_PARSE: return 2;
    case FL_ERR_NUMERIC: return 3;
    default: return 4;
    }
}

[[noreturn]] void fail(fl_status status) {
    std::cerr << "error: " << fl_last_error() << "\n";
    std::exit(to_exit_code(status));
}

void check(fl_status status) {
    if (status != FL_OK) fail(status);
}

// Takes ownership of a library-allocated string.
std::string take_string(char* s) {
    std::string out = s == nullptr ? "" : s;
    fl_string_free(s);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) {
        std::cerr << "error: cannot write '" << path << "'\n";
        std::exit(2);
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) {
        std::cerr << "error: write failed for '" << path << "'\n";
        std::exit(2);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        std::cerr << "error: cannot read '" << path << "'\n";
        std::exit(2);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i != text.size() && text[i] != ',') continue;
        const std::string field = text.substr(start, i - start);
        start = i + 1;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            std::cerr << "error: " << flag << ": bad number '" << field << "'\n";
            std::exit(2);
        }
        out.push_back(v);
    }
    return out;
}

// "2..8" -> {2, 8}
std::pair<int, int> parse_scales(const std::string& text) {
    const std::size_t dots = text.find("..");
    int lo = 0, hi = 0;
    bool ok = dots != std::string::npos;
    if (ok) {
        const char* b = text.data();
        auto r1 = std::from_chars(b, b + dots, lo);
        auto r2 = std::from_chars(b + dots + 2, b + text.size(), hi);
        ok = r1.ec == std::errc{} && r1.ptr == b + dots && r2.ec == std::errc{} &&
             r2.ptr == b + text.size();
    }
    if (!ok) {
        std::cerr << "error: --scales wants the form j1..j2, e.g. 2..8\n";
        std::exit(2);
    }
    return {lo, hi};
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

// Provenance sidecar; deliberately the only timestamped artifact, so it is
// written only when --run-record asks for it.
struct RunRecord {
    std::string path;
    std::string command_line;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    void write() const {
        if (path.empty()) return;
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        std::tm tm{};
        gmtime_r(&tt, &tm);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

        nlohmann::ordered_json doc;
        doc["command_line"] = command_line;
        doc["written_at_utc"] = stamp;
        auto entry = [](const std::string& p) {
            const std::string bytes = read_file(p);
            char digest[20];
            std::snprintf(digest, sizeof digest, "%016llx",
                          static_cast<unsigned long long>(fnv1a64(bytes)));
            return nlohmann::ordered_json{{"path", p}, {"bytes", bytes.size()}, {"fnv1a64", digest}};
        };
        doc["inputs"] = nlohmann::ordered_json::array();
        for (const std::string& p : inputs) doc["inputs"].push_back(entry(p));
        doc["outputs"] = nlohmann::ordered_json::array();
        for (const std::string& p : outputs) doc["outputs"].push_back(entry(p));
        write_file(path, doc.dump(2) + "\n");
    }
};

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) out += ' ';
        out += argv[i];
    }
    return out;
}

struct ProblemHandle {
    fl_problem* p = nullptr;
    ~ProblemHandle() { fl_problem_free(p); }
};

struct FunctionHandle {
    fl_function* f = nullptr;
    ~FunctionHandle() { fl_function_free(f); }
};

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        return c == '{';
    }
    return false;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal interpolation and box-dimension laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", []() { return std::string(fl_version()); });
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    std::string record_path;
    // gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "sample a generator onto a uniform grid");
    std::string gen_spec, gen_out, gen_plot;
    double gen_x0 = 0.0, gen_x1 = 1.0;
    std::int64_t gen_m = 1025;
    gen->add_option("--spec", gen_spec, "generator text, e.g. weierstrass:2,0.5")->required();
    gen->add_option("--x0", gen_x0, "left end of the domain");
    gen->add_option("--x1", gen_x1, "right end of the domain");
    gen->add_option("--samples", gen_m, "grid size")->required();
    gen->add_option("--out", gen_out, "samples CSV path")->required();
    gen->add_option("--plot", gen_plot, "also render an SVG");
    gen->add_option("--run-record", record_path, "write a provenance record");

    // build ---------------------------------------------------------------
    auto* build = app.add_subcommand("build", "build the interpolant of a problem file");
    std::string build_problem, build_prefix;
    double build_tol = 1e-10;
    int build_iters = 200;
    bool build_plot = false;
    build->add_option("problem-file", build_problem, "problem JSON path")->required();
    build->add_option("--out", build_prefix, "output prefix (.csv and .report.json)")->required();
    build->add_option("--tol", build_tol, "sup-norm stop tolerance");
    build->add_option("--max-iter", build_iters, "iteration cap");
    build->add_flag("--plot", build_plot, "also render <prefix>.svg");
    build->add_option("--run-record", record_path, "write a provenance record");

    // dim -----------------------------------------------------------------
    auto* dim = app.add_subcommand("dim", "box-dimension estimate of a sampled graph");
    std::string dim_input, dim_mode = "real2d", dim_out, dim_series, dim_plot, dim_scales;
    dim->add_option("input", dim_input, "samples CSV or problem JSON path")->required();
    dim->add_option("--mode", dim_mode, "real2d, imag2d, or complex3d")
        ->check(CLI::IsMember({"real2d", "imag2d", "complex3d"}));
    dim->add_option("--scales", dim_scales, "dyadic scale range j1..j2 (default from density)");
    dim->add_option("--out", dim_out, "estimate JSON path (stdout when omitted)");
    dim->add_option("--series", dim_series, "per-scale counts CSV path");
    dim->add_option("--plot", dim_plot, "render the series SVG (needs --series)");
    dim->add_option("--run-record", record_path, "write a provenance record");

    // moran -----------------------------------------------------------------
    auto* moran = app.add_subcommand("moran", "similarity-dimension roots");
    std::string moran_ratios, moran_lower, moran_upper, moran_out;
    moran->add_option("--ratios", moran_ratios, "comma list of contraction ratios");
    moran->add_option("--lower", moran_lower, "comma list of lower bounds");
    moran->add_option("--upper", moran_upper, "comma list of upper bounds");
    moran->add_option("--out", moran_out, "JSON path (stdout when omitted)");

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a named consistency check");
    verify->set_help_flag("--help", "print this help message and exit");
    std::string v_check, v_problem, v_g, v_h, v_lower, v_upper, v_out;
    double v_sigma = 0.0, v_delta0 = 0.0, v_tol = 0.0, v_x0 = 0.0, v_x1 = 1.0;
    int v_depth = 0, v_iters = 0;
    std::int64_t v_m = 0, v_pairs = 0;
    std::int64_t v_seed = -1;
    verify->add_option("theorem-id", v_check, "check id, e.g. mainthm-3.12")->required();
    verify->add_option("problem-file", v_problem, "problem JSON path");
    verify->add_option("--sigma", v_sigma, "Hölder exponent");
    verify->add_option("--delta0", v_delta0, "oscillation window bound");
    verify->add_option("--depth", v_depth, "space-filling depth");
    verify->add_option("--g", v_g, "first generator spec");
    verify->add_option("--h", v_h, "second generator spec");
    verify->add_option("--m", v_m, "grid size for generator checks");
    verify->add_option("--x0", v_x0, "left end for generator checks");
    verify->add_option("--x1", v_x1, "right end for generator checks");
    verify->add_option("--tol", v_tol, "comparison or fixed-point tolerance");
    verify->add_option("--max-iter", v_iters, "fixed-point iteration cap");
    verify->add_option("--pairs", v_pairs, "sample pairs for empirical bounds");
    verify->add_option("--seed", v_seed, "seed for empirical bounds");
    verify->add_option("--lower", v_lower, "comma list of lower bounds");
    verify->add_option("--upper", v_upper, "comma list of upper bounds");
    verify->add_option("--out", v_out, "report JSON path (stdout when omitted)");
    verify->add_option("--run-record", record_path, "write a provenance record");

    // plot -----------------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render a CSV (samples or series) as SVG");
    std::string plot_input, plot_out;
    plot->add_option("input", plot_input, "CSV path")->required();
    plot->add_option("--svg", plot_out, "SVG path")->required();
    plot->add_option("--run-record", record_path, "write a provenance record");

    CLI11_PARSE(app, argc, argv);

    if (threads > 0) {
        const std::string value = std::to_string(threads);
        setenv("FRACTAL_LAB_THREADS", value.c_str(), 1);
    }

    RunRecord record;
    record.path = record_path;
    record.command_line = join_args(argc, argv);

    if (gen->parsed()) {
        FunctionHandle f;
        check(fl_function_from_generator(gen_spec.c_str(), gen_x0, gen_x1, gen_m, &f.f));
        check(fl_function_write_csv(f.f, gen_out.c_str()));
        record.outputs.push_back(gen_out);
        if (!gen_plot.empty()) {
            check(fl_plot_samples(gen_out.c_str(), gen_plot.c_str()));
            record.outputs.push_back(gen_plot);
        }
        std::cout << "wrote " << gen_out << "\n";
    } else if (build->parsed()) {
        ProblemHandle p;
        check(fl_problem_load(build_problem.c_str(), &p.p));
        record.inputs.push_back(build_problem);
        FunctionHandle f;
        char* report = nullptr;
        check(fl_problem_build(p.p, build_tol, build_iters, &f.f, &report));
        const std::string report_json = take_string(report);
        const std::string csv_path = build_prefix + ".csv";
        const std::string report_path = build_prefix + ".report.json";
        check(fl_function_write_csv(f.f, csv_path.c_str()));
        write_file(report_path, report_json);
        record.outputs.push_back(csv_path);
        record.outputs.push_back(report_path);
        if (build_plot) {
            const std::string svg_path = build_prefix + ".svg";
            check(fl_plot_samples(csv_path.c_str(), svg_path.c_str()));
            record.outputs.push_back(svg_path);
        }
        std::cout << "wrote " << csv_path << " and " << report_path << "\n";
    } else if (dim->parsed()) {
        FunctionHandle f;
        if (looks_like_json(read_file(dim_input))) {
            ProblemHandle p;
            check(fl_problem_load(dim_input.c_str(), &p.p));
            char* report = nullptr;
            check(fl_problem_build(p.p, 1e-10, 200, &f.f, &report));
            fl_string_free(report);
        } else {
            check(fl_function_from_csv(dim_input.c_str(), &f.f));
        }
        record.inputs.push_back(dim_input);
        int j_min = 0, j_max = 0;
        if (!dim_scales.empty()) {
            const auto [lo, hi] = parse_scales(dim_scales);
            j_min = lo;
            j_max = hi;
        }
        char* json = nullptr;
        char* series = nullptr;
        char** series_out = dim_series.empty() ? nullptr : &series;
        if (dim_mode == "complex3d") {
            check(fl_dim_estimate_3d(f.f, j_min, j_max, &json, series_out));
        } else {
            const int component = dim_mode == "imag2d" ? 1 : 0;
            check(fl_dim_estimate_2d(f.f, component, j_min, j_max, &json, series_out));
        }
        const std::string estimate = take_string(json);
        const std::string series_csv = take_string(series);
        if (dim_out.empty()) {
            std::cout << estimate;
        } else {
            write_file(dim_out, estimate);
            record.outputs.push_back(dim_out);
            std::cout << "wrote " << dim_out << "\n";
        }
        if (!dim_plot.empty() && dim_series.empty()) {
            std::cerr << "error: --plot needs --series\n";
            return 2;
        }
        if (!dim_series.empty()) {
            write_file(dim_series, series_csv);
            record.outputs.push_back(dim_series);
        }
        if (!dim_plot.empty()) {
            check(fl_plot_series(dim_series.c_str(), dim_plot.c_str()));
            record.outputs.push_back(dim_plot);
        }
    } else if (moran->parsed()) {
        nlohmann::ordered_json doc;
        if (!moran_ratios.empty()) {
            const std::vector<double> ratios = parse_list(moran_ratios, "--ratios");
            double exponent = 0.0, residual = 0.0;
            check(fl_moran_solve(ratios.data(), static_cast<int>(ratios.size()), &exponent,
                                 &residual));
            doc["exponent"] = exponent;
            doc["residual"] = residual;
        } else if (!moran_lower.empty() && !moran_upper.empty()) {
            const std::vector<double> lower = parse_list(moran_lower, "--lower");
            const std::vector<double> upper = parse_list(moran_upper, "--upper");
            if (lower.size() != upper.size()) {
                std::cerr << "error: --lower and --upper must have the same length\n";
                return 2;
            }
            double r = 0.0, big_r = 0.0;
            check(fl_moran_bounds(lower.data(), upper.data(), static_cast<int>(lower.size()), &r,
                                  &big_r));
            doc["r"] = r;
            doc["R"] = big_r;
        } else {
            std::cerr << "error: moran needs --ratios or both --lower and --upper\n";
            return 2;
        }
        const std::string text = doc.dump(2) + "\n";
        if (moran_out.empty()) {
            std::cout << text;
        } else {
            write_file(moran_out, text);
            std::cout << "wrote " << moran_out << "\n";
        }
    } else if (verify->parsed()) {
        ProblemHandle p;
        if (!v_problem.empty()) {
            check(fl_problem_load(v_problem.c_str(), &p.p));
            record.inputs.push_back(v_problem);
        }
        nlohmann::ordered_json opt = nlohmann::ordered_json::object();
        if (verify->count("--sigma") != 0) opt["sigma"] = v_sigma;
        if (verify->count("--delta0") != 0) opt["delta0"] = v_delta0;
        if (verify->count("--depth") != 0) opt["depth"] = v_depth;
        if (verify->count("--g") != 0) opt["g"] = v_g;
        if (verify->count("--h") != 0) opt["h"] = v_h;
        if (verify->count("--m") != 0) opt["m"] = v_m;
        if (verify->count("--x0") != 0) opt["x0"] = v_x0;
        if (verify->count("--x1") != 0) opt["x1"] = v_x1;
        if (verify->count("--tol") != 0) opt["tolerance"] = v_tol;
        if (verify->count("--max-iter") != 0) opt["max_iterations"] = v_iters;
        if (verify->count("--pairs") != 0) opt["pairs"] = v_pairs;
        if (verify->count("--seed") != 0) opt["seed"] = v_seed;
        if (verify->count("--lower") != 0) opt["lower"] = parse_list(v_lower, "--lower");
        if (verify->count("--upper") != 0) opt["upper"] = parse_list(v_upper, "--upper");
        const std::string options = opt.empty() ? "" : opt.dump();

        char* report = nullptr;
        char* summary = nullptr;
        check(fl_verify(v_check.c_str(), p.p, options.c_str(), &report, &summary));
        const std::string report_json = take_string(report);
        std::cout << take_string(summary) << "\n";
        if (v_out.empty()) {
            std::cout << report_json;
        } else {
            write_file(v_out, report_json);
            record.outputs.push_back(v_out);
        }
    } else if (plot->parsed()) {
        const std::string head = read_file(plot_input).substr(0, 16);
        record.inputs.push_back(plot_input);
        if (head.rfind("t,re,im", 0) == 0)
            check(fl_plot_samples(plot_input.c_str(), plot_out.c_str()));
        else
            check(fl_plot_series(plot_input.c_str(), plot_out.c_str()));
        record.outputs.push_back(plot_out);
        std::cout << "wrote " << plot_out << "\n";
    }

    record.write();
    return 0;
}
