#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fractal_lab.h"

namespace {

std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    fl_string_free(s);
    return out;
}

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("flab_capi_" + name)).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool contains(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

const char* kSmoothDoc =
    R"({"version":1,"knots":[0,0.5,1],"germ":"trig-sum:1,1,0","base":"linear-through-endpoints",)"
    R"("scalings":[{"form":"constant","value":[0.05,0]},{"form":"constant","value":[0.05,0]}],)"
    R"("grid_exponent":12,"seed":7})";

const char* kGentleDoc =
    R"({"version":1,"knots":[0,0.25,0.5,0.75,1],"germ":"0.1*trig-sum:1,1,0",)"
    R"("base":"linear-through-endpoints",)"
    R"("scalings":[{"form":"constant","value":[0.3,0]},{"form":"constant","value":[0.3,0]},)"
    R"({"form":"constant","value":[0.3,0]},{"form":"constant","value":[0.3,0]}],)"
    R"("grid_exponent":6,"seed":11})";

} // namespace

TEST_CASE("library version and error buffer") {
    const char* v = fl_version();
    REQUIRE(v != nullptr);
    CHECK(contains(v, "."));

    // Free functions must tolerate NULL.
    fl_string_free(nullptr);
    fl_function_free(nullptr);
    fl_problem_free(nullptr);
}

TEST_CASE("null arguments are rejected with a message") {
    CHECK(fl_function_from_generator(nullptr, 0.0, 1.0, 100, nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "null argument"));

    int64_t n = 0;
    CHECK(fl_function_size(nullptr, &n) == FL_ERR_INVALID);
    CHECK(fl_verify(nullptr, nullptr, nullptr, nullptr, nullptr) == FL_ERR_INVALID);
    CHECK(fl_moran_solve(nullptr, 2, nullptr, nullptr) == FL_ERR_INVALID);

    // A successful call clears the error buffer.
    fl_function* f = nullptr;
    REQUIRE(fl_function_from_generator("constant:1", 0.0, 1.0, 16, &f) == FL_OK);
    CHECK(fl_last_error()[0] == '\0');
    fl_function_free(f);
}

TEST_CASE("sampled functions round trip through the handle API") {
    fl_function* f = nullptr;
    REQUIRE(fl_function_from_generator("polynomial:0,1", 0.0, 1.0, 1001, &f) == FL_OK);

    int64_t n = 0;
    REQUIRE(fl_function_size(f, &n) == FL_OK);
    REQUIRE(n == 1001);
    double x0 = -1.0, x1 = -1.0;
    REQUIRE(fl_function_domain(f, &x0, &x1) == FL_OK);
    CHECK(x0 == 0.0);
    CHECK(x1 == 1.0);

    std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
    REQUIRE(fl_function_values(f, re.data(), im.data()) == FL_OK);
    CHECK(re[0] == 0.0);
    CHECK(re[500] == 0.5);
    CHECK(re[1000] == 1.0);
    CHECK(im[500] == 0.0);

    const std::string csv = tmp_path("fn.csv");
    REQUIRE(fl_function_write_csv(f, csv.c_str()) == FL_OK);
    fl_function* g = nullptr;
    REQUIRE(fl_function_from_csv(csv.c_str(), &g) == FL_OK);
    std::vector<double> re2(static_cast<std::size_t>(n)), im2(static_cast<std::size_t>(n));
    REQUIRE(fl_function_values(g, re2.data(), im2.data()) == FL_OK);
    CHECK(re2 == re);
    CHECK(im2 == im);

    fl_function_free(g);
    fl_function_free(f);
}

TEST_CASE("generator failures map to the right status") {
    fl_function* f = nullptr;
    CHECK(fl_function_from_generator("x*takagi:0.5", 0.0, 1.0, 100, &f) == FL_ERR_PARSE);
    CHECK(std::strlen(fl_last_error()) > 0);
    CHECK(fl_function_from_generator("weierstrass:1,0.5", 0.0, 1.0, 100, &f) == FL_ERR_INVALID);
    CHECK(std::strlen(fl_last_error()) > 0);
    CHECK(fl_function_from_csv(tmp_path("no-such.csv").c_str(), &f) == FL_ERR_INVALID);
}

TEST_CASE("problem handles parse, serialize and build") {
    fl_problem* p = nullptr;
    REQUIRE(fl_problem_parse(kSmoothDoc, &p) == FL_OK);

    uint64_t seed = 0;
    REQUIRE(fl_problem_seed(p, &seed) == FL_OK);
    CHECK(seed == 7);

    char* js = nullptr;
    REQUIRE(fl_problem_to_json(p, &js) == FL_OK);
    const std::string doc = take(js);
    CHECK(contains(doc, "\"germ\": \"trig-sum:1,1,0\""));
    CHECK(contains(doc, "\"seed\": 7"));

    fl_function* h = nullptr;
    char* report = nullptr;
    REQUIRE(fl_problem_build(p, 0.0, 0, &h, &report) == FL_OK);
    const std::string rep = take(report);
    CHECK(contains(rep, "\"converged\": true"));
    CHECK(contains(rep, "\"tolerance\": 1e-10"));
    int64_t n = 0;
    REQUIRE(fl_function_size(h, &n) == FL_OK);
    CHECK(n == 8193);

    // The interpolant pins the germ value at every knot.
    std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
    REQUIRE(fl_function_values(h, re.data(), im.data()) == FL_OK);
    CHECK(std::abs(re[0]) < 1e-9);
    CHECK(std::abs(re[4096]) < 1e-9);

    fl_function_free(h);

    // Starving the iteration is a numeric failure, not a crash.
    fl_function* h2 = nullptr;
    CHECK(fl_problem_build(p, 1e-12, 1, &h2, nullptr) == FL_ERR_NUMERIC);
    CHECK(contains(fl_last_error(), "no-convergence"));

    fl_problem_free(p);

    fl_problem* bad = nullptr;
    CHECK(fl_problem_parse("{\"version\":3}", &bad) == FL_ERR_PARSE);
    CHECK(fl_problem_load(tmp_path("missing.json").c_str(), &bad) == FL_ERR_INVALID);

    const std::string path = tmp_path("problem.json");
    write_file(path, kSmoothDoc);
    REQUIRE(fl_problem_load(path.c_str(), &bad) == FL_OK);
    fl_problem_free(bad);
}

TEST_CASE("dimension estimates flow through JSON") {
    fl_function* f = nullptr;
    REQUIRE(fl_function_from_generator("weierstrass:2,0.5", 0.0, 1.0, 4097, &f) == FL_OK);

    char* js = nullptr;
    char* series = nullptr;
    REQUIRE(fl_dim_estimate_2d(f, 0, 0, 0, &js, &series) == FL_OK);
    const std::string dim = take(js);
    CHECK(contains(dim, "\"dimension\": 1."));
    CHECK(contains(dim, "\"method\": \"column-oscillation-2d\""));
    const std::string csv = take(series);
    CHECK(csv.rfind("delta,count,log_delta,log_count\n", 0) == 0);

    // The flat imaginary component counts one box per column.
    REQUIRE(fl_dim_estimate_2d(f, 1, 0, 0, &js, nullptr) == FL_OK);
    CHECK(contains(take(js), "\"dimension\": 1.0"));

    CHECK(fl_dim_estimate_2d(f, 2, 0, 0, &js, nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "component"));
    CHECK(fl_dim_estimate_2d(f, 0, 5, 3, &js, nullptr) == FL_ERR_INVALID);

    REQUIRE(fl_dim_estimate_3d(f, 0, 0, &js, nullptr) == FL_OK);
    CHECK(contains(take(js), "\"method\": \"cube-grid-3d\""));

    fl_function_free(f);
}

TEST_CASE("moran helpers expose the solver") {
    const double equal[] = {0.5, 0.5};
    double s = 0.0, residual = 1.0;
    REQUIRE(fl_moran_solve(equal, 2, &s, &residual) == FL_OK);
    CHECK(std::abs(s - 1.0) < 1e-10);
    CHECK(residual < 1e-12);

    const double lower[] = {0.3, 0.3};
    const double upper[] = {0.6, 0.6};
    double r = 0.0, big_r = 0.0;
    REQUIRE(fl_moran_bounds(lower, upper, 2, &r, &big_r) == FL_OK);
    CHECK(std::abs(r - 0.5757166424934450) < 1e-10);
    CHECK(std::abs(big_r - 1.3569154488567241) < 1e-10);

    const double one[] = {0.5};
    CHECK(fl_moran_solve(one, 1, &s, nullptr) == FL_ERR_INVALID);
    const double loud[] = {0.5, 1.5};
    CHECK(fl_moran_solve(loud, 2, &s, nullptr) == FL_ERR_INVALID);
}

TEST_CASE("verify dispatches every check id") {
    fl_problem* p = nullptr;
    REQUIRE(fl_problem_parse(kSmoothDoc, &p) == FL_OK);

    char* js = nullptr;
    char* summary = nullptr;
    REQUIRE(fl_verify("bv", p, nullptr, &js, &summary) == FL_OK);
    const std::string bv = take(js);
    CHECK(contains(bv, "\"theorem_id\": \"bv\""));
    CHECK(contains(bv, "\"verdict\": \"consistent\""));
    CHECK(take(summary).rfind("bv: consistent", 0) == 0);

    REQUIRE(fl_verify("holder-3.11", p, R"({"sigma":0.5})", &js, nullptr) == FL_OK);
    CHECK(contains(take(js), "\"verdict\": \"consistent\""));

    // A real-valued germ has no imaginary oscillation, so the main dimension
    // claim is out of scope rather than wrong.
    REQUIRE(fl_verify("mainthm-3.12", p, R"({"sigma":0.5})", &js, nullptr) == FL_OK);
    CHECK(contains(take(js), "\"verdict\": \"hypothesis-not-met\""));

    REQUIRE(fl_verify("bounds-3.6", p, R"({"lower":[0.3,0.3],"upper":[0.5,0.5]})", &js, nullptr) ==
            FL_OK);
    const std::string bounds = take(js);
    CHECK(contains(bounds, "\"empirical_bounds\": 0.0"));
    CHECK(contains(bounds, "\"verdict\": \"consistent\""));

    REQUIRE(fl_verify("lemma-3.5", nullptr,
                      R"({"g":"weierstrass:2,0.5","h":"trig-sum:1,1,0","m":4097})", &js,
                      &summary) == FL_OK);
    const std::string lemma = take(js);
    CHECK(contains(lemma, "\"counts_equal\": 1.0"));
    CHECK(contains(lemma, "\"verdict\": \"consistent\""));
    CHECK(take(summary).rfind("lemma-3.5:", 0) == 0);

    fl_problem_free(p);
}

TEST_CASE("verify runs the empirical bounds path") {
    fl_problem* p = nullptr;
    REQUIRE(fl_problem_parse(kGentleDoc, &p) == FL_OK);

    char* js = nullptr;
    REQUIRE(fl_verify("bounds-3.6", p, R"({"pairs":2000,"seed":11})", &js, nullptr) == FL_OK);
    const std::string rep = take(js);
    CHECK(contains(rep, "\"empirical_bounds\": 1.0"));
    CHECK(contains(rep, "\"verdict\": \"consistent\""));

    fl_problem_free(p);
}

TEST_CASE("verify runs the peano experiment") {
    char* js = nullptr;
    REQUIRE(fl_verify("peano-remark", nullptr, R"({"depth":6})", &js, nullptr) == FL_OK);
    const std::string rep = take(js);
    CHECK(contains(rep, "\"theorem_id\": \"peano-remark\""));
    CHECK(contains(rep, "\"verdict\": \"consistent\""));
}

TEST_CASE("verify rejects bad requests precisely") {
    fl_problem* p = nullptr;
    REQUIRE(fl_problem_parse(kSmoothDoc, &p) == FL_OK);
    char* js = nullptr;

    CHECK(fl_verify("lemma-9.9", nullptr, nullptr, &js, nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "unknown theorem id"));

    CHECK(fl_verify("bv", nullptr, nullptr, &js, nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "needs a problem"));

    CHECK(fl_verify("holder-3.11", p, nullptr, &js, nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "options.sigma"));

    CHECK(fl_verify("lemma-3.1", nullptr, R"({"g":"constant:1"})", &js, nullptr) ==
          FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "options.g and options.h"));

    CHECK(fl_verify("lemma-3.1", nullptr, R"({"g":"constant:1","h":"constant:2","m":100})", &js,
                    nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "options.m out of range"));

    CHECK(fl_verify("bounds-3.6", p, R"({"lower":[0.3,0.3]})", &js, nullptr) == FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "both options.lower and options.upper"));

    CHECK(fl_verify("bounds-3.6", p, R"({"lower":[0.3],"upper":[0.5]})", &js, nullptr) ==
          FL_ERR_INVALID);
    CHECK(contains(fl_last_error(), "one entry per interval"));

    CHECK(fl_verify("bv", p, "{", &js, nullptr) == FL_ERR_PARSE);
    CHECK(fl_verify("bv", p, "[1]", &js, nullptr) == FL_ERR_PARSE);
    CHECK(contains(fl_last_error(), "expected an object"));
    CHECK(fl_verify("bv", p, R"({"bogus":1})", &js, nullptr) == FL_ERR_PARSE);
    CHECK(contains(fl_last_error(), "options.bogus: unknown field"));
    CHECK(fl_verify("bv", p, R"({"sigma":"x"})", &js, nullptr) == FL_ERR_PARSE);
    CHECK(contains(fl_last_error(), "options.sigma: expected a number"));

    fl_problem_free(p);
}

TEST_CASE("plot helpers render csv inputs") {
    fl_function* f = nullptr;
    REQUIRE(fl_function_from_generator("weierstrass:2,0.5", 0.0, 1.0, 257, &f) == FL_OK);
    const std::string csv = tmp_path("plot.csv");
    REQUIRE(fl_function_write_csv(f, csv.c_str()) == FL_OK);

    const std::string svg = tmp_path("plot.svg");
    REQUIRE(fl_plot_samples(csv.c_str(), svg.c_str()) == FL_OK);
    CHECK(read_file(svg).rfind("<svg", 0) == 0);

    char* js = nullptr;
    char* series = nullptr;
    REQUIRE(fl_dim_estimate_2d(f, 0, 1, 4, &js, &series) == FL_OK);
    fl_string_free(js);
    const std::string series_csv = tmp_path("series.csv");
    write_file(series_csv, take(series));
    const std::string series_svg = tmp_path("series.svg");
    REQUIRE(fl_plot_series(series_csv.c_str(), series_svg.c_str()) == FL_OK);
    CHECK(read_file(series_svg).rfind("<svg", 0) == 0);

    CHECK(fl_plot_samples(tmp_path("absent.csv").c_str(), svg.c_str()) == FL_ERR_INVALID);
    fl_function_free(f);
}
