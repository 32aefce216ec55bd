#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flab/csv.hpp"
#include "flab/json_out.hpp"
#include "flab/problem_io.hpp"
#include "flab/svg.hpp"
#include "flab/theorems.hpp"
#include "fractal_lab.h"
#include "internal.hpp"

struct fl_function {
    flab::SampledFunction fn;
};

struct fl_problem {
    flab::ProblemFile file;
    flab::FractalProblem prob;
};

namespace {

constexpr const char* kVersion = "0.1.0";

thread_local std::string t_error;

void set_error(const std::string& message) { t_error = message; }

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn> fl_status guarded(Fn&& fn) {
    try {
        fn();
        t_error.clear();
        return FL_OK;
    } catch (const flab::parse_error& e) {
        set_error(e.what());
        return FL_ERR_PARSE;
    } catch (const flab::invalid_input& e) {
        set_error(e.what());
        return FL_ERR_INVALID;
    } catch (const flab::numeric_error& e) {
        set_error(e.what());
        return FL_ERR_NUMERIC;
    } catch (const std::exception& e) {
        set_error(e.what());
        return FL_ERR_INTERNAL;
    }
}

void require_arg(bool ok, const char* message) {
    if (!ok) throw flab::invalid_input(message);
}

std::string series_csv_string(const flab::BoxCountSeries& series) {
    std::string out = "delta,count,log_delta,log_count\n";
    for (std::size_t i = 0; i < series.deltas.size(); ++i) {
        out += flab::format_double(series.deltas[i]);
        out += ',';
        out += std::to_string(series.counts[i]);
        out += ',';
        out += flab::format_double(std::log(series.deltas[i]));
        out += ',';
        out += flab::format_double(std::log(static_cast<double>(series.counts[i])));
        out += '\n';
    }
    return out;
}

flab::SampledFunction build_interpolant(const fl_problem* p, double tolerance,
                                        int max_iterations) {
    if (tolerance <= 0.0) tolerance = 1e-10;
    if (max_iterations <= 0) max_iterations = 200;
    return flab::alpha_fractal(p->prob, tolerance, max_iterations).first;
}

// Options accepted by fl_verify; unknown keys are rejected so typos cannot
// silently fall back to defaults.
struct VerifyOptions {
    std::optional<double> sigma, delta0, tolerance;
    std::optional<int> depth, max_iterations;
    std::optional<std::int64_t> m, pairs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> g, h;
    std::optional<std::vector<double>> lower, upper;
    double x0 = 0.0, x1 = 1.0;
};

VerifyOptions parse_verify_options(const char* options_json) {
    VerifyOptions opt;
    if (options_json == nullptr || *options_json == '\0') return opt;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(options_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw flab::parse_error(e.what());
    }
    if (!doc.is_object()) throw flab::parse_error("options: expected an object");
    for (const auto& item : doc.items()) {
        const std::string& key = item.key();
        const auto& v = item.value();
        auto number = [&]() -> double {
            if (!v.is_number()) throw flab::parse_error("options." + key + ": expected a number");
            return v.get<double>();
        };
        if (key == "sigma") opt.sigma = number();
        else if (key == "delta0") opt.delta0 = number();
        else if (key == "tolerance") opt.tolerance = number();
        else if (key == "depth") opt.depth = static_cast<int>(number());
        else if (key == "max_iterations") opt.max_iterations = static_cast<int>(number());
        else if (key == "m") opt.m = static_cast<std::int64_t>(number());
        else if (key == "pairs") opt.pairs = static_cast<std::int64_t>(number());
        else if (key == "seed") opt.seed = static_cast<std::uint64_t>(number());
        else if (key == "x0") opt.x0 = number();
        else if (key == "x1") opt.x1 = number();
        else if (key == "g" || key == "h") {
            if (!v.is_string()) throw flab::parse_error("options." + key + ": expected a string");
            (key == "g" ? opt.g : opt.h) = v.get<std::string>();
        } else if (key == "lower" || key == "upper") {
            if (!v.is_array()) throw flab::parse_error("options." + key + ": expected an array");
            std::vector<double> list;
            for (const auto& x : v) {
                if (!x.is_number())
                    throw flab::parse_error("options." + key + ": expected numbers");
                list.push_back(x.get<double>());
            }
            (key == "lower" ? opt.lower : opt.upper) = std::move(list);
        } else {
            throw flab::parse_error("options." + key + ": unknown field");
        }
    }
    return opt;
}

flab::TheoremReport run_check(const std::string& id, const fl_problem* problem,
                              const VerifyOptions& opt) {
    using namespace flab;
    const double tol = opt.tolerance.value_or(kDimensionTol);

    if (id == "holder-3.11" || id == "mainthm-3.12") {
        require_arg(problem != nullptr, "this check needs a problem");
        require_arg(opt.sigma.has_value(), "this check needs options.sigma");
        const SampledFunction f_alpha =
            build_interpolant(problem, opt.tolerance.value_or(0.0), opt.max_iterations.value_or(0));
        if (id == "holder-3.11") {
            // The regularity check needs no oscillation floor, so skip the
            // quadratic scan and fill only the fields it reads.
            TheoremConstants k;
            k.sigma = *opt.sigma;
            k.c = 1.0;
            for (int i = 0; i < problem->prob.partition().intervals(); ++i)
                k.c = std::min(k.c, problem->prob.partition().ratio(i));
            for (const ScalingFunction& alpha : problem->prob.scalings()) {
                const double sem =
                    detail::scaling_holder_seminorm(alpha, problem->prob.germ(), k.sigma);
                const double sup = detail::scaling_sup(alpha, problem->prob.germ());
                k.alpha_h_norm = std::max(k.alpha_h_norm, sup + sem);
            }
            k.alpha_sup = problem->prob.alpha_sup();
            return check_holder_theorem(k, &f_alpha);
        }
        const TheoremConstants k =
            estimate_constants(problem->prob, f_alpha, *opt.sigma, opt.delta0);
        return check_mainthm(k, &f_alpha);
    }
    if (id == "bv") {
        require_arg(problem != nullptr, "this check needs a problem");
        const SampledFunction f_alpha =
            build_interpolant(problem, opt.tolerance.value_or(0.0), opt.max_iterations.value_or(0));
        return check_bv_theorem(problem->prob, f_alpha);
    }
    if (id == "bounds-3.6") {
        require_arg(problem != nullptr, "this check needs a problem");
        const SampledFunction f_alpha =
            build_interpolant(problem, opt.tolerance.value_or(0.0), opt.max_iterations.value_or(0));
        bool empirical = false;
        ContractionBounds bounds = [&]() -> ContractionBounds {
            if (opt.lower || opt.upper) {
                require_arg(opt.lower && opt.upper, "bounds need both options.lower and options.upper");
                const auto intervals =
                    static_cast<std::size_t>(problem->prob.partition().intervals());
                require_arg(opt.lower->size() == intervals && opt.upper->size() == intervals,
                            "bound lists must have one entry per interval");
                return {*opt.lower, *opt.upper};
            }
            empirical = true;
            const IFSSystem ifs = build_ifs(problem->prob);
            return estimate_contraction_bounds(ifs, f_alpha, opt.pairs.value_or(20000),
                                               opt.seed.value_or(problem->file.seed));
        }();
        return check_bounds_theorem(bounds, graph_cloud(f_alpha, GraphMode::complex_3d), empirical);
    }
    if (id == "lemma-3.1" || id == "prop-3.2" || id == "prop-3.3" || id == "lemma-3.4" ||
        id == "lemma-3.5") {
        require_arg(opt.g.has_value() && opt.h.has_value(),
                    "this check needs options.g and options.h generator specs");
        const std::int64_t m = opt.m.value_or(65537);
        require_arg(m >= 1025 && m <= (std::int64_t{1} << 22) + 1, "options.m out of range");
        require_arg(opt.x1 > opt.x0, "options domain is empty");
        const SampledFunction fg = sample_terms(parse_terms_text(*opt.g), opt.x0, opt.x1, m);
        const SampledFunction fh = sample_terms(parse_terms_text(*opt.h), opt.x0, opt.x1, m);
        return compare_graph_dimensions(fg, fh, id, tol);
    }
    if (id == "peano-remark") return peano_remark_experiment(opt.depth.value_or(8));
    throw invalid_input("unknown theorem id '" + id + "'");
}

} // namespace

extern "C" {

const char* fl_version(void) { return kVersion; }

const char* fl_last_error(void) { return t_error.c_str(); }

void fl_string_free(char* s) { std::free(s); }

void fl_function_free(fl_function* f) { delete f; }

void fl_problem_free(fl_problem* p) { delete p; }

fl_status fl_function_from_generator(const char* spec_text, double x0, double x1, int64_t m,
                                     fl_function** out) {
    return guarded([&] {
        require_arg(spec_text != nullptr && out != nullptr, "null argument");
        const auto terms = flab::parse_terms_text(spec_text);
        *out = new fl_function{flab::sample_terms(terms, x0, x1, m)};
    });
}

fl_status fl_function_from_csv(const char* path, fl_function** out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "null argument");
        *out = new fl_function{flab::read_samples_csv(path)};
    });
}

fl_status fl_function_write_csv(const fl_function* f, const char* path) {
    return guarded([&] {
        require_arg(f != nullptr && path != nullptr, "null argument");
        flab::write_samples_csv(path, f->fn);
    });
}

fl_status fl_function_size(const fl_function* f, int64_t* out) {
    return guarded([&] {
        require_arg(f != nullptr && out != nullptr, "null argument");
        *out = f->fn.size();
    });
}

fl_status fl_function_domain(const fl_function* f, double* x0, double* x1) {
    return guarded([&] {
        require_arg(f != nullptr && x0 != nullptr && x1 != nullptr, "null argument");
        *x0 = f->fn.x0();
        *x1 = f->fn.x1();
    });
}

fl_status fl_function_values(const fl_function* f, double* re, double* im) {
    return guarded([&] {
        require_arg(f != nullptr && re != nullptr && im != nullptr, "null argument");
        for (std::int64_t j = 0; j < f->fn.size(); ++j) {
            re[j] = f->fn.value(j).real();
            im[j] = f->fn.value(j).imag();
        }
    });
}

fl_status fl_problem_parse(const char* json_text, fl_problem** out) {
    return guarded([&] {
        require_arg(json_text != nullptr && out != nullptr, "null argument");
        flab::ProblemFile file = flab::parse_problem_json(json_text);
        flab::FractalProblem prob = flab::realize_problem(file);
        *out = new fl_problem{std::move(file), std::move(prob)};
    });
}

fl_status fl_problem_load(const char* path, fl_problem** out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "null argument");
        flab::ProblemFile file = flab::load_problem_file(path);
        flab::FractalProblem prob = flab::realize_problem(file);
        *out = new fl_problem{std::move(file), std::move(prob)};
    });
}

fl_status fl_problem_to_json(const fl_problem* p, char** out_json) {
    return guarded([&] {
        require_arg(p != nullptr && out_json != nullptr, "null argument");
        *out_json = dup_string(flab::problem_to_json(p->file));
        require_arg(*out_json != nullptr, "allocation failed");
    });
}

fl_status fl_problem_seed(const fl_problem* p, uint64_t* out) {
    return guarded([&] {
        require_arg(p != nullptr && out != nullptr, "null argument");
        *out = p->file.seed;
    });
}

fl_status fl_problem_build(const fl_problem* p, double tolerance, int max_iterations,
                           fl_function** out_f, char** out_report_json) {
    return guarded([&] {
        require_arg(p != nullptr && out_f != nullptr, "null argument");
        const double tol = tolerance <= 0.0 ? 1e-10 : tolerance;
        const int iters = max_iterations <= 0 ? 200 : max_iterations;
        auto [fn, report] = flab::alpha_fractal(p->prob, tol, iters);
        if (out_report_json != nullptr) {
            *out_report_json = dup_string(flab::fixed_point_report_json(report, tol));
            require_arg(*out_report_json != nullptr, "allocation failed");
        }
        *out_f = new fl_function{std::move(fn)};
    });
}

fl_status fl_dim_estimate_2d(const fl_function* f, int component, int j_min, int j_max,
                             char** out_json, char** out_series_csv) {
    return guarded([&] {
        require_arg(f != nullptr && out_json != nullptr, "null argument");
        require_arg(component == 0 || component == 1, "component must be 0 or 1");
        const flab::SampledFunction g =
            component == 0 ? f->fn.real_part() : f->fn.imag_part();
        const int hi = j_max > 0 ? j_max : flab::max_scale_2d(g);
        const int lo = j_min > 0 ? j_min : 1;
        const flab::BoxCountSeries series = flab::box_series_2d(g, lo, hi);
        const flab::DimensionEstimate est = flab::estimate_dimension(series);
        *out_json = dup_string(flab::dimension_estimate_json(est));
        require_arg(*out_json != nullptr, "allocation failed");
        if (out_series_csv != nullptr) {
            *out_series_csv = dup_string(series_csv_string(series));
            require_arg(*out_series_csv != nullptr, "allocation failed");
        }
    });
}

fl_status fl_dim_estimate_3d(const fl_function* f, int j_min, int j_max, char** out_json,
                             char** out_series_csv) {
    return guarded([&] {
        require_arg(f != nullptr && out_json != nullptr, "null argument");
        const flab::GraphCloud cloud = flab::graph_cloud(f->fn, flab::GraphMode::complex_3d);
        const int hi = j_max > 0 ? j_max : flab::max_scale_3d(cloud);
        const int lo = j_min > 0 ? j_min : 1;
        const flab::BoxCountSeries series = flab::box_series_3d(cloud, lo, hi);
        const flab::DimensionEstimate est = flab::estimate_dimension(series);
        *out_json = dup_string(flab::dimension_estimate_json(est));
        require_arg(*out_json != nullptr, "allocation failed");
        if (out_series_csv != nullptr) {
            *out_series_csv = dup_string(series_csv_string(series));
            require_arg(*out_series_csv != nullptr, "allocation failed");
        }
    });
}

fl_status fl_moran_solve(const double* ratios, int n, double* out_exponent,
                         double* out_residual) {
    return guarded([&] {
        require_arg(ratios != nullptr && out_exponent != nullptr, "null argument");
        require_arg(n >= 0, "negative length");
        const flab::MoranRoot root =
            flab::moran_solve(std::vector<double>(ratios, ratios + n));
        *out_exponent = root.exponent;
        if (out_residual != nullptr) *out_residual = root.residual;
    });
}

fl_status fl_moran_bounds(const double* lower, const double* upper, int n, double* out_r,
                          double* out_big_r) {
    return guarded([&] {
        require_arg(lower != nullptr && upper != nullptr && out_r != nullptr &&
                        out_big_r != nullptr,
                    "null argument");
        require_arg(n >= 0, "negative length");
        const flab::ContractionBounds bounds{std::vector<double>(lower, lower + n),
                                             std::vector<double>(upper, upper + n)};
        const auto [r, big] = flab::dimension_bounds(bounds);
        *out_r = r.exponent;
        *out_big_r = big.exponent;
    });
}

fl_status fl_verify(const char* theorem_id, const fl_problem* problem, const char* options_json,
                    char** out_report_json, char** out_summary) {
    return guarded([&] {
        require_arg(theorem_id != nullptr && out_report_json != nullptr, "null argument");
        const VerifyOptions opt = parse_verify_options(options_json);
        const flab::TheoremReport rep = run_check(theorem_id, problem, opt);
        *out_report_json = dup_string(flab::theorem_report_json(rep));
        require_arg(*out_report_json != nullptr, "allocation failed");
        if (out_summary != nullptr) {
            *out_summary = dup_string(rep.theorem_id + ": " +
                                      flab::verdict_name(rep.verdict) + ": " + rep.summary);
            require_arg(*out_summary != nullptr, "allocation failed");
        }
    });
}

fl_status fl_plot_samples(const char* csv_path, const char* svg_path) {
    return guarded([&] {
        require_arg(csv_path != nullptr && svg_path != nullptr, "null argument");
        const flab::SampledFunction f = flab::read_samples_csv(csv_path);
        flab::write_text_file(svg_path, flab::render_samples_svg(f));
    });
}

fl_status fl_plot_series(const char* csv_path, const char* svg_path) {
    return guarded([&] {
        require_arg(csv_path != nullptr && svg_path != nullptr, "null argument");
        const flab::BoxCountSeries series = flab::read_series_csv(csv_path);
        flab::write_text_file(svg_path, flab::render_series_svg(series));
    });
}

} // extern "C"
